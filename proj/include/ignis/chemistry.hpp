#ifndef IGNIS_CHEMISTRY_HPP
#define IGNIS_CHEMISTRY_HPP

#include <array>
#include <cmath>
#include <string>

#include "ignis/errors.hpp"
#include "ignis/thermo.hpp"

namespace ignis {

/// One-step global mechanism CH4 + 2 O2 -> CO2 + 2 H2O with Arrhenius rate
///   q = A [CH4]^a [O2]^b exp(-Ta / T),   [s] = rho Y_s / W_s.
/// A and Ta are in the unit system of the mixture the mechanism is built for.
struct ReactionMechanism {
    double A = 0.0;
    double Ta = 0.0;
    double a = 1.0;
    double b = 1.0;
    double T_cutoff = 300.0; // below this the rate is identically zero
    int i_fuel = -1, i_ox = -1, i_co2 = -1, i_h2o = -1;
    SpeciesArray nu{}; // molar stoichiometric coefficients, reactants negative
};

/// Builds the one-step mechanism against a mixture, resolving species indices
/// and verifying exact stoichiometric mass balance sum(nu_s W_s) = 0.
inline ReactionMechanism make_one_step_mechanism(const MixtureModel& mix,
                                                 double A, double Ta,
                                                 double a = 1.0, double b = 1.0,
                                                 double T_cutoff = 300.0) {
    ReactionMechanism m;
    m.A = A;
    m.Ta = Ta;
    m.a = a;
    m.b = b;
    m.T_cutoff = T_cutoff;
    m.i_fuel = mix.index_of("CH4");
    m.i_ox = mix.index_of("O2");
    m.i_co2 = mix.index_of("CO2");
    m.i_h2o = mix.index_of("H2O");
    m.nu.fill(0.0);
    m.nu[m.i_fuel] = -1.0;
    m.nu[m.i_ox] = -2.0;
    m.nu[m.i_co2] = 1.0;
    m.nu[m.i_h2o] = 2.0;
    double balance = 0.0, scale = 0.0;
    for (int s = 0; s < mix.ns(); ++s) {
        balance += m.nu[s] * mix.species[s].W;
        scale += std::abs(m.nu[s]) * mix.species[s].W;
    }
    if (std::abs(balance) > 1e-14 * scale)
        throw ConfigError("one-step mechanism: stoichiometric mass imbalance " +
                          std::to_string(balance) +
                          " (molar masses must satisfy W_CO2 + 2 W_H2O = "
                          "W_CH4 + 2 W_O2)");
    return m;
}

/// Species mass production rates. Zero whenever either reactant is absent or
/// the temperature is at/below the cutoff.
inline void source_terms(double rho, double T, const SpeciesArray& Y,
                         const MixtureModel& mix, const ReactionMechanism& mech,
                         SpeciesArray& wdot) {
    wdot.fill(0.0);
    if (T <= mech.T_cutoff) return;
    const double yf = Y[mech.i_fuel];
    const double yo = Y[mech.i_ox];
    if (yf <= 0.0 || yo <= 0.0) return;
    const double cf = rho * yf / mix.species[mech.i_fuel].W;
    const double co = rho * yo / mix.species[mech.i_ox].W;
    const double q =
        mech.A * std::pow(cf, mech.a) * std::pow(co, mech.b) *
        std::exp(-mech.Ta / T);
    for (int s = 0; s < mix.ns(); ++s)
        wdot[s] = mech.nu[s] * mix.species[s].W * q;
}

} // namespace ignis

#endif
