#ifndef IGNIS_FLUX_HPP
#define IGNIS_FLUX_HPP

#include <array>
#include <cmath>

#include "ignis/errors.hpp"
#include "ignis/reconstruction.hpp"
#include "ignis/thermo.hpp"

namespace ignis {

/// Conservative component layout: [rho Y_0 .. rho Y_{ns-1}, rho u, rho v, E].
inline constexpr int kMaxComp = kMaxSpecies + 3;
using ConsVec = std::array<double, kMaxComp>;

struct CompIndex {
    int ns;
    int mx() const { return ns; }
    int my() const { return ns + 1; }
    int en() const { return ns + 2; }
    int ncomp() const { return ns + 3; }
};

/// Componentwise local Lax-Friedrichs splitting F± = (F ± alpha U) / 2.
inline void split_flux_llf(const ConsVec& U, const ConsVec& F, double alpha,
                           int ncomp, ConsVec& Fp, ConsVec& Fm) {
    if (!std::isfinite(alpha))
        throw NumericsError("split_flux_llf: non-finite wavespeed");
    for (int c = 0; c < ncomp; ++c) {
        Fp[c] = 0.5 * (F[c] + alpha * U[c]);
        Fm[c] = 0.5 * (F[c] - alpha * U[c]);
    }
}

/// Mapped inviscid flux m1 F + m2 G evaluated from the physical conservative
/// vector and pressure; uhat = m1 u + m2 v is the metric-weighted normal
/// velocity.
inline void mapped_flux(const double* U, double p, double m1, double m2,
                        const CompIndex& ci, double* Ft) {
    double rho = 0.0;
    for (int s = 0; s < ci.ns; ++s) rho += U[s];
    const double u = U[ci.mx()] / rho;
    const double v = U[ci.my()] / rho;
    const double uhat = m1 * u + m2 * v;
    for (int s = 0; s < ci.ns; ++s) Ft[s] = U[s] * uhat;
    Ft[ci.mx()] = U[ci.mx()] * uhat + m1 * p;
    Ft[ci.my()] = U[ci.my()] * uhat + m2 * p;
    Ft[ci.en()] = (U[ci.en()] + p) * uhat;
}

/// Characteristic decomposition of the mapped-flux Jacobian s A(n) at a
/// frozen face state. Fields are ordered [acoustic-, species 0..ns-1, shear,
/// acoustic+]; project() forms L q, assemble() forms R w.
struct EigenSystem {
    CompIndex ci{1};
    double n1 = 1.0, n2 = 0.0; // unit face normal (metric direction)
    double s = 1.0;            // metric norm: eigenvalues are s * (un +- c)
    double u = 0.0, v = 0.0;
    double un = 0.0, ut = 0.0; // normal/tangential velocity
    double k = 0.0;            // kinetic energy per mass
    double H = 0.0;            // total specific enthalpy
    double c = 1.0, c2 = 1.0;
    double kappa = 0.4;        // dp/d(rho e)
    SpeciesArray Y{};
    SpeciesArray Theta{};      // dp/drho_s at constant momenta and E

    int nfields() const { return ci.ncomp(); }

    /// Builds the system at a state with mass fractions Y, temperature T and
    /// velocity (u, v); (m1, m2) is the (non-unit) face metric direction.
    static EigenSystem at_state(const SpeciesArray& Y, double T, double uu,
                                double vv, double m1, double m2,
                                const MixtureModel& mix) {
        EigenSystem e;
        e.ci.ns = mix.ns();
        e.s = std::sqrt(m1 * m1 + m2 * m2);
        if (!(e.s > 0.0)) throw NumericsError("eigen: zero metric direction");
        e.n1 = m1 / e.s;
        e.n2 = m2 / e.s;
        e.u = uu;
        e.v = vv;
        e.un = e.n1 * uu + e.n2 * vv;
        e.ut = -e.n2 * uu + e.n1 * vv;
        e.k = 0.5 * (uu * uu + vv * vv);
        e.Y = Y;
        const double rbar = thermo::r_specific(Y, mix);
        const double cv = thermo::cv_mass(T, Y, mix);
        e.kappa = rbar / cv;
        const double h = thermo::h_mass(T, Y, mix);
        double c2 = e.kappa * h;
        for (int sp = 0; sp < mix.ns(); ++sp) {
            const double rs = mix.R / mix.species[sp].W;
            const double es = thermo::h_species(T, sp, mix) - rs * T;
            const double chi = rs * T - e.kappa * es;
            e.Theta[sp] = chi + e.kappa * e.k;
            c2 += Y[sp] * chi;
        }
        if (!(c2 > 0.0)) throw NumericsError("eigen: non-positive c^2");
        e.c2 = c2;
        e.c = std::sqrt(c2);
        e.H = h + e.k;
        return e;
    }

    /// w = L q for a conservative-space vector q.
    void project(const double* q, double* w) const {
        const int ns = ci.ns;
        double drho = 0.0;
        for (int sp = 0; sp < ns; ++sp) drho += q[sp];
        double dp = kappa * q[ci.en()] - kappa * u * q[ci.mx()] -
                    kappa * v * q[ci.my()];
        for (int sp = 0; sp < ns; ++sp) dp += Theta[sp] * q[sp];
        const double dun = n1 * q[ci.mx()] + n2 * q[ci.my()] - un * drho;
        const double dut = -n2 * q[ci.mx()] + n1 * q[ci.my()] - ut * drho;
        w[0] = (dp - c * dun) / (2.0 * c2);
        for (int sp = 0; sp < ns; ++sp) w[1 + sp] = q[sp] - Y[sp] * dp / c2;
        w[1 + ns] = dut;
        w[2 + ns] = (dp + c * dun) / (2.0 * c2);
    }

    /// q = R w back to conservative space.
    void assemble(const double* w, double* q) const {
        const int ns = ci.ns;
        const double am = w[0];
        const double ap = w[2 + ns];
        const double at = w[1 + ns];
        double asum = 0.0;
        for (int sp = 0; sp < ns; ++sp) {
            q[sp] = Y[sp] * (am + ap) + w[1 + sp];
            asum += w[1 + sp];
        }
        q[ci.mx()] = (u - c * n1) * am + (u + c * n1) * ap + u * asum - n2 * at;
        q[ci.my()] = (v - c * n2) * am + (v + c * n2) * ap + v * asum + n1 * at;
        double en = (H - c * un) * am + (H + c * un) * ap + ut * at;
        for (int sp = 0; sp < ns; ++sp)
            en += w[1 + sp] * (2.0 * k - Theta[sp] / kappa);
        q[ci.en()] = en;
    }

    /// Field eigenvalue at unit-direction velocity un_k and sound speed c_k
    /// of a stencil node (scaled by the face metric norm).
    double field_speed(int field, double un_k, double c_k) const {
        if (field == 0) return s * (un_k - c_k);
        if (field == 2 + ci.ns) return s * (un_k + c_k);
        return s * un_k;
    }
};

/// Roe-type sqrt-density-weighted average of two node states; temperature is
/// recovered from the averaged enthalpy so the eigensystem stays consistent.
struct RoeAverage {
    SpeciesArray Y{};
    double T = 0.0, u = 0.0, v = 0.0;
};

inline RoeAverage roe_average(double rho_l, const SpeciesArray& Yl, double Tl,
                              double ul, double vl, double rho_r,
                              const SpeciesArray& Yr, double Tr, double ur,
                              double vr, const MixtureModel& mix) {
    const double wl = std::sqrt(rho_l);
    const double wr = std::sqrt(rho_r);
    const double inv = 1.0 / (wl + wr);
    RoeAverage a;
    a.u = (wl * ul + wr * ur) * inv;
    a.v = (wl * vl + wr * vr) * inv;
    for (int s = 0; s < mix.ns(); ++s) a.Y[s] = (wl * Yl[s] + wr * Yr[s]) * inv;
    const double Hl = thermo::h_mass(Tl, Yl, mix) + 0.5 * (ul * ul + vl * vl);
    const double Hr = thermo::h_mass(Tr, Yr, mix) + 0.5 * (ur * ur + vr * vr);
    const double H = (wl * Hl + wr * Hr) * inv;
    const double h = H - 0.5 * (a.u * a.u + a.v * a.v);
    // Solve h(T) = h by the same safeguarded Newton used for energy.
    double T = 0.5 * (Tl + Tr);
    for (int it = 0; it < 50; ++it) {
        const double r = thermo::h_mass(T, a.Y, mix) - h;
        const double cp = thermo::cp_mass(T, a.Y, mix);
        const double Tn = T - r / cp;
        if (std::abs(Tn - T) <= 1e-14 * T) {
            T = Tn;
            break;
        }
        T = Tn > 0.0 ? Tn : 0.5 * T;
    }
    a.T = T;
    return a;
}

} // namespace ignis

#endif
