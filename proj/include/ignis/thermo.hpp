#ifndef IGNIS_THERMO_HPP
#define IGNIS_THERMO_HPP

#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ignis/errors.hpp"

namespace ignis {

inline constexpr int kMaxSpecies = 8;
using SpeciesArray = std::array<double, kMaxSpecies>;

/// One cp/R polynomial piece over [t_lo, t_hi]:
///   cp/R = c[-2]/T^2 + c[-1]/T + c0 + c1 T + c2 T^2 + c3 T^3 + c4 T^4
/// with the integration constant b for enthalpy. Seven-coefficient rows fill
/// only the non-negative powers; nine-coefficient rows fill all of them.
struct ThermoPiece {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double cm2 = 0.0, cm1 = 0.0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    double b = 0.0;

    double cp_over_R(double T) const {
        return cm2 / (T * T) + cm1 / T +
               c0 + T * (c1 + T * (c2 + T * (c3 + T * c4)));
    }
    double h_over_R(double T) const {
        return -cm2 / T + cm1 * std::log(T) +
               T * (c0 + T * (c1 / 2 + T * (c2 / 3 + T * (c3 / 4 + T * c4 / 5)))) +
               b;
    }
};

struct SpeciesData {
    std::string name;
    double W = 0.0;      // molar mass
    double mu_ref = 0.0; // viscosity at t_ref
    double t_ref = 0.0;
    double n_exp = 0.0;  // power-law exponent: mu(T) = mu_ref (T/t_ref)^n
    std::vector<ThermoPiece> pieces; // ascending, contiguous ranges

    const ThermoPiece& piece_at(double T) const {
        for (const auto& p : pieces)
            if (T <= p.t_hi) return p;
        return pieces.back();
    }
    double cp_over_R(double T) const { return piece_at(T).cp_over_R(T); }
    double h_over_R(double T) const { return piece_at(T).h_over_R(T); }
    double t_min() const { return pieces.front().t_lo; }
    double t_max() const { return pieces.back().t_hi; }
};

/// Mixture thermodynamics and transport data.
///
/// All quantities follow whatever unit system the data was built in; the gas
/// constant R is stored alongside so scaled (nondimensional) mixtures work
/// through the same code path. The calorically perfect mode is represented as
/// a single pseudo-species with constant cp.
struct MixtureModel {
    enum class Mode { CaloricallyPerfect, MultiSpecies };

    Mode mode = Mode::MultiSpecies;
    std::vector<SpeciesData> species;
    double R = 8.31446261815324; // gas constant, data units
    double Le = 1.0;             // Lewis number (constant-Le diffusion)
    double Pr = 0.7;             // Prandtl number (conductivity closure)

    int ns() const { return static_cast<int>(species.size()); }

    int index_of(const std::string& name) const {
        for (int s = 0; s < ns(); ++s)
            if (species[s].name == name) return s;
        throw ConfigError("mixture: unknown species '" + name + "'");
    }

    static MixtureModel calorically_perfect(double gamma, double r_specific,
                                            double mu) {
        if (gamma <= 1.0)
            throw ConfigError("calorically_perfect: gamma must exceed 1");
        MixtureModel m;
        m.mode = Mode::CaloricallyPerfect;
        m.R = r_specific; // with W = 1, R acts as the specific gas constant
        SpeciesData s;
        s.name = "gas";
        s.W = 1.0;
        s.mu_ref = mu;
        s.t_ref = 1.0;
        s.n_exp = 0.0;
        ThermoPiece p;
        p.t_lo = 0.0;
        p.t_hi = 1e30;
        p.c0 = gamma / (gamma - 1.0);
        s.pieces.push_back(p);
        m.species.push_back(s);
        return m;
    }
};

namespace thermo {

inline double mean_molar_mass(const SpeciesArray& Y, const MixtureModel& mix) {
    double inv = 0.0;
    for (int s = 0; s < mix.ns(); ++s) inv += Y[s] / mix.species[s].W;
    return 1.0 / inv;
}

/// Specific gas constant of the mixture, R * sum(Y_s / W_s).
inline double r_specific(const SpeciesArray& Y, const MixtureModel& mix) {
    double a = 0.0;
    for (int s = 0; s < mix.ns(); ++s) a += Y[s] / mix.species[s].W;
    return mix.R * a;
}

inline void mole_fractions(const SpeciesArray& Y, const MixtureModel& mix,
                           SpeciesArray& X) {
    const double wbar = mean_molar_mass(Y, mix);
    for (int s = 0; s < mix.ns(); ++s)
        X[s] = Y[s] * wbar / mix.species[s].W;
}

inline double cp_mass(double T, const SpeciesArray& Y, const MixtureModel& mix) {
    double cp = 0.0;
    for (int s = 0; s < mix.ns(); ++s)
        cp += Y[s] * mix.species[s].cp_over_R(T) * mix.R / mix.species[s].W;
    return cp;
}

inline double h_mass(double T, const SpeciesArray& Y, const MixtureModel& mix) {
    double h = 0.0;
    for (int s = 0; s < mix.ns(); ++s)
        h += Y[s] * mix.species[s].h_over_R(T) * mix.R / mix.species[s].W;
    return h;
}

inline double h_species(double T, int s, const MixtureModel& mix) {
    return mix.species[s].h_over_R(T) * mix.R / mix.species[s].W;
}

/// Mass-specific internal energy e = h - R_specific T.
inline double e_mass(double T, const SpeciesArray& Y, const MixtureModel& mix) {
    return h_mass(T, Y, mix) - r_specific(Y, mix) * T;
}

inline double cv_mass(double T, const SpeciesArray& Y, const MixtureModel& mix) {
    return cp_mass(T, Y, mix) - r_specific(Y, mix);
}

inline double gamma_mix(double T, const SpeciesArray& Y,
                        const MixtureModel& mix) {
    const double cp = cp_mass(T, Y, mix);
    return cp / (cp - r_specific(Y, mix));
}

inline double sound_speed(double T, const SpeciesArray& Y,
                          const MixtureModel& mix) {
    return std::sqrt(gamma_mix(T, Y, mix) * r_specific(Y, mix) * T);
}

} // namespace thermo

/// Ideal-gas pressure p = rho R T sum(Y_s / W_s).
inline double eos_pressure(double rho, double T, const SpeciesArray& Y,
                           const MixtureModel& mix) {
    if (!(rho > 0.0)) throw StateError("eos_pressure: non-positive density");
    if (!(T > 0.0)) throw StateError("eos_pressure: non-positive temperature");
    double sum = 0.0;
    for (int s = 0; s < mix.ns(); ++s) sum += Y[s];
    if (std::abs(sum - 1.0) > 1e-6)
        throw StateError("eos_pressure: mass fractions sum to " +
                         std::to_string(sum));
    return rho * thermo::r_specific(Y, mix) * T;
}

/// Solves e(T) = e for T by safeguarded Newton iteration. Throws StateError
/// if the energy is below the lowest representable internal energy or the
/// iteration fails to converge in 50 steps.
inline double temperature_from_energy(double e, const SpeciesArray& Y,
                                      const MixtureModel& mix,
                                      double T_guess) {
    double t_lo = 1e300, t_hi = 0.0;
    for (int s = 0; s < mix.ns(); ++s) {
        t_lo = std::min(t_lo, mix.species[s].t_min());
        t_hi = std::max(t_hi, mix.species[s].t_max());
    }
    t_lo = std::max(t_lo, 1e-12);
    if (e <= thermo::e_mass(t_lo, Y, mix))
        throw StateError("temperature_from_energy: energy below vacuum energy");

    double T = std::min(std::max(T_guess, t_lo), t_hi);
    double lo = t_lo, hi = t_hi;
    for (int it = 0; it < 50; ++it) {
        const double r = thermo::e_mass(T, Y, mix) - e;
        if (r > 0.0) hi = std::min(hi, T);
        else lo = std::max(lo, T);
        const double cv = thermo::cv_mass(T, Y, mix);
        double Tn = T - r / cv;
        if (!(Tn > lo && Tn < hi)) Tn = 0.5 * (lo + hi);
        const double scale = std::abs(e) + std::abs(cv) * T;
        if (std::abs(r) <= 4e-16 * scale && it > 0) return T;
        if (Tn == T) return T;
        T = Tn;
    }
    const double res = thermo::e_mass(T, Y, mix) - e;
    if (std::abs(res) <= 1e-9 * (std::abs(e) + 1.0)) return T;
    throw StateError("temperature_from_energy: no convergence, residual " +
                     std::to_string(res));
}

/// Point thermodynamic/transport state.
struct ThermoState {
    double rho = 0.0;
    double T = 0.0;
    double p = 0.0;
    SpeciesArray Y{}; // mass fractions
    SpeciesArray X{}; // mole fractions
    SpeciesArray h{}; // species enthalpies
    double mu = 0.0;
    double lambda = 0.0;
    SpeciesArray D{}; // species diffusivities
};

/// Species viscosity power law and Wilke mixture rule; lambda from a fixed
/// Prandtl number and D_s from the constant Lewis number model.
inline void transport(ThermoState& st, const MixtureModel& mix) {
    const int n = mix.ns();
    SpeciesArray mu_s{};
    for (int s = 0; s < n; ++s) {
        const auto& sp = mix.species[s];
        mu_s[s] = sp.n_exp == 0.0
                      ? sp.mu_ref
                      : sp.mu_ref * std::pow(st.T / sp.t_ref, sp.n_exp);
    }
    if (n == 1) {
        st.mu = mu_s[0];
    } else {
        double mu = 0.0;
        for (int i = 0; i < n; ++i) {
            if (st.X[i] <= 0.0) continue;
            double denom = 0.0;
            for (int j = 0; j < n; ++j) {
                const double wi = mix.species[i].W, wj = mix.species[j].W;
                const double t = 1.0 + std::sqrt(mu_s[i] / mu_s[j]) *
                                           std::pow(wj / wi, 0.25);
                const double phi = t * t / std::sqrt(8.0 * (1.0 + wi / wj));
                denom += st.X[j] * phi;
            }
            mu += st.X[i] * mu_s[i] / denom;
        }
        st.mu = mu;
    }
    const double cp = thermo::cp_mass(st.T, st.Y, mix);
    st.lambda = st.mu * cp / mix.Pr;
    const double D = st.lambda / (st.rho * cp * mix.Le);
    for (int s = 0; s < n; ++s) st.D[s] = D;
}

/// Diffusion velocities V_s = -D_s grad(X_s)/X_s + u_c for one spatial
/// direction, with the correction velocity u_c chosen so the net diffusive
/// mass flux sum(rho Y_s V_s) vanishes identically. Mole fractions below
/// x_floor are floored in the 1/X_s factor; the correction term itself is
/// evaluated in the singularity-free form Y_s/X_s = W_s/Wbar.
inline void diffusion_velocities(const SpeciesArray& Y, const SpeciesArray& X,
                                 const SpeciesArray& D,
                                 const SpeciesArray& grad_x,
                                 const MixtureModel& mix, SpeciesArray& V,
                                 double x_floor = 1e-12) {
    const double wbar = thermo::mean_molar_mass(Y, mix);
    double uc = 0.0;
    for (int s = 0; s < mix.ns(); ++s)
        uc += (mix.species[s].W / wbar) * D[s] * grad_x[s];
    for (int s = 0; s < mix.ns(); ++s) {
        const double xs = std::max(X[s], x_floor);
        V[s] = -D[s] * grad_x[s] / xs + uc;
    }
}

/// Parses the plain-text mixture table. Format, one species at a time:
///   name  W  mu_ref  T_ref  n_exp  n_ranges
///   T_lo T_hi  a1 .. a7            (or a1 .. a9)
/// repeated n_ranges times, ranges ascending. '#' starts a comment.
/// Seven-coefficient rows are NASA-7 (a6 is the enthalpy constant, a7 the
/// entropy constant); nine-coefficient rows are NASA-9 (a8 enthalpy, a9
/// entropy). Entropy constants are accepted and ignored.
inline MixtureModel parse_mixture(std::istream& in) {
    MixtureModel mix;
    mix.mode = MixtureModel::Mode::MultiSpecies;
    std::string line;
    std::vector<std::string> tokens;
    auto next_tokens = [&]() -> bool {
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            tokens.assign(std::istream_iterator<std::string>(ls), {});
            if (!tokens.empty()) return true;
        }
        return false;
    };
    while (next_tokens()) {
        if (tokens.size() != 6)
            throw FormatError("mixture: bad species header: " + line);
        SpeciesData sp;
        sp.name = tokens[0];
        sp.W = std::stod(tokens[1]);
        sp.mu_ref = std::stod(tokens[2]);
        sp.t_ref = std::stod(tokens[3]);
        sp.n_exp = std::stod(tokens[4]);
        const int nranges = std::stoi(tokens[5]);
        if (sp.W <= 0.0)
            throw FormatError("mixture: non-positive molar mass for " + sp.name);
        for (int r = 0; r < nranges; ++r) {
            if (!next_tokens())
                throw FormatError("mixture: missing range row for " + sp.name);
            if (tokens.size() != 9 && tokens.size() != 11)
                throw FormatError("mixture: range row needs 7 or 9 "
                                  "coefficients: " + line);
            ThermoPiece p;
            p.t_lo = std::stod(tokens[0]);
            p.t_hi = std::stod(tokens[1]);
            if (tokens.size() == 9) {
                p.c0 = std::stod(tokens[2]);
                p.c1 = std::stod(tokens[3]);
                p.c2 = std::stod(tokens[4]);
                p.c3 = std::stod(tokens[5]);
                p.c4 = std::stod(tokens[6]);
                p.b = std::stod(tokens[7]); // a7 (entropy constant) ignored
            } else {
                p.cm2 = std::stod(tokens[2]);
                p.cm1 = std::stod(tokens[3]);
                p.c0 = std::stod(tokens[4]);
                p.c1 = std::stod(tokens[5]);
                p.c2 = std::stod(tokens[6]);
                p.c3 = std::stod(tokens[7]);
                p.c4 = std::stod(tokens[8]);
                p.b = std::stod(tokens[9]); // a9 (entropy constant) ignored
            }
            if (p.t_hi <= p.t_lo)
                throw FormatError("mixture: empty temperature range for " +
                                  sp.name);
            sp.pieces.push_back(p);
        }
        if (sp.pieces.empty())
            throw FormatError("mixture: species without ranges: " + sp.name);
        if (static_cast<int>(mix.species.size()) == kMaxSpecies)
            throw FormatError("mixture: too many species (max 8)");
        mix.species.push_back(sp);
    }
    if (mix.species.empty()) throw FormatError("mixture: no species found");
    return mix;
}

inline MixtureModel load_mixture_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("mixture file not found: " + path);
    return parse_mixture(f);
}

} // namespace ignis

#endif
