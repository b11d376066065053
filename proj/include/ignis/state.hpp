#ifndef IGNIS_STATE_HPP
#define IGNIS_STATE_HPP

#include <cmath>
#include <string>

#include "ignis/errors.hpp"
#include "ignis/flux.hpp"
#include "ignis/thermo.hpp"

namespace ignis {

/// Primitive point state paired with the conservative vector layout.
struct PrimPoint {
    double rho = 0.0;
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
    double T = 0.0;
    SpeciesArray Y{};
};

/// Recovers primitives from a physical conservative vector. The temperature
/// comes from a safeguarded Newton solve of e(T) = E/rho - |u|^2/2 consistent
/// with the polynomial enthalpies.
inline PrimPoint primitives_from_conservative(const double* U,
                                              const MixtureModel& mix,
                                              double T_guess = 300.0) {
    const CompIndex ci{mix.ns()};
    PrimPoint pt;
    double rho = 0.0;
    for (int s = 0; s < ci.ns; ++s) rho += U[s];
    if (!(rho > 0.0))
        throw StateError("primitives: non-positive density " +
                         std::to_string(rho));
    pt.rho = rho;
    for (int s = 0; s < ci.ns; ++s) pt.Y[s] = U[s] / rho;
    pt.u = U[ci.mx()] / rho;
    pt.v = U[ci.my()] / rho;
    const double e = U[ci.en()] / rho - 0.5 * (pt.u * pt.u + pt.v * pt.v);
    pt.T = temperature_from_energy(e, pt.Y, mix, T_guess);
    pt.p = pt.rho * thermo::r_specific(pt.Y, mix) * pt.T;
    return pt;
}

/// Physical conservative vector from primitives (rho from the EOS).
inline ConsVec conservative_from_primitives(const PrimPoint& pt,
                                            const MixtureModel& mix) {
    const CompIndex ci{mix.ns()};
    ConsVec U{};
    for (int s = 0; s < ci.ns; ++s) U[s] = pt.rho * pt.Y[s];
    U[ci.mx()] = pt.rho * pt.u;
    U[ci.my()] = pt.rho * pt.v;
    const double e = thermo::e_mass(pt.T, pt.Y, mix);
    U[ci.en()] = pt.rho * (e + 0.5 * (pt.u * pt.u + pt.v * pt.v));
    return U;
}

} // namespace ignis

#endif
