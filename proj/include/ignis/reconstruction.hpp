#ifndef IGNIS_RECONSTRUCTION_HPP
#define IGNIS_RECONSTRUCTION_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "ignis/errors.hpp"

namespace ignis {

enum class InviscidScheme { WENO3Z, TENO6 };
enum class FluxSplit { Componentwise, Characteristic };

/// Spatial discretization configuration. metric selection: Scheme uses the
/// node derivative operator implied by the reconstruction (freestream-exact
/// for TENO6); AnalyticSkew evaluates the skew-map Jacobian in closed form.
enum class InviscidMetrics { Scheme, AnalyticSkew, Central2 };

struct SchemeConfig {
    InviscidScheme scheme = InviscidScheme::TENO6;
    FluxSplit split = FluxSplit::Characteristic;
    double teno_ct = 1e-5;
    double eps = 1e-40; // WENO-Z / TENO smoothness regularizer
    double cfl = 0.5;
    InviscidMetrics metrics = InviscidMetrics::Scheme;

    void validate() const {
        if (!(eps > 0.0)) throw ConfigError("scheme: eps must be positive");
        if (!(teno_ct > 0.0 && teno_ct < 1.0))
            throw ConfigError("scheme: teno_ct must lie in (0,1)");
        if (!(cfl > 0.0 && cfl <= 1.0))
            throw ConfigError("scheme: cfl must lie in (0,1]");
    }

    /// Stencil half-width: face i+1/2 uses nodes i-(half-1) .. i+half.
    int stencil_half() const {
        return scheme == InviscidScheme::TENO6 ? 3 : 2;
    }
};

enum class Side { Left, Right };

namespace recon {

/// WENO3-Z face value at i+1/2 biased from the left; u points at the center
/// node i (valid offsets -1..1). Written in increment form so constant input
/// reproduces bitwise.
inline double weno3z_plus(const double* u, double eps) {
    const double d0 = u[0] - u[-1];
    const double d1 = u[1] - u[0];
    const double b0 = d0 * d0;
    const double b1 = d1 * d1;
    const double tau = std::abs(b0 - b1);
    const double a0 = 1.0 * (1.0 + tau / (b0 + eps));
    const double a1 = 2.0 * (1.0 + tau / (b1 + eps));
    const double w0 = a0 / (a0 + a1);
    const double w1 = 1.0 - w0;
    return u[0] + 0.5 * (w0 * d0 + w1 * d1);
}

/// TENO6 face value at i+1/2 biased from the left; u points at node i (valid
/// offsets -2..3). Sharp cutoff ct; candidates below it are discarded and the
/// surviving optimal weights renormalized.
inline double teno6_plus(const double* u, double ct, double eps) {
    // Shift by u[0]: kills the constant mode before the smoothness products.
    const double v0 = u[-2] - u[0];
    const double v1 = u[-1] - u[0];
    const double v3 = u[1] - u[0];
    const double v4 = u[2] - u[0];
    const double v5 = u[3] - u[0];

    const double b0 = (13.0 / 12.0) * (v0 - 2.0 * v1) * (v0 - 2.0 * v1) +
                      0.25 * (v0 - 4.0 * v1) * (v0 - 4.0 * v1);
    const double b1 = (13.0 / 12.0) * (v1 + v3) * (v1 + v3) +
                      0.25 * (v1 - v3) * (v1 - v3);
    const double b2 = (13.0 / 12.0) * (v4 - 2.0 * v3) * (v4 - 2.0 * v3) +
                      0.25 * (v4 - 4.0 * v3) * (v4 - 4.0 * v3);
    const double b3 =
        (1.0 / 240.0) *
        (v3 * (11003.0 * v3 - 17246.0 * v4 + 4642.0 * v5) +
         v4 * (7043.0 * v4 - 3882.0 * v5) + 547.0 * v5 * v5);
    const double b6 =
        (1.0 / 120960.0) *
        (v0 * (271779.0 * v0 - 2380800.0 * v1 - 3462252.0 * v3 +
               1458762.0 * v4 - 245620.0 * v5) +
         v1 * (5653317.0 * v1 + 17905032.0 * v3 - 7727988.0 * v4 +
               1325006.0 * v5) +
         v3 * (17195652.0 * v3 - 15880404.0 * v4 + 2863984.0 * v5) +
         v4 * (3824847.0 * v4 - 1429976.0 * v5) + 139633.0 * v5 * v5);

    const double tau = std::abs(b6 - (b0 + 4.0 * b1 + b2) / 6.0);
    auto gamma = [&](double b) {
        const double t = 1.0 + tau / (b + eps);
        const double t2 = t * t;
        return t2 * t2 * t2;
    };
    const double g0 = gamma(b0), g1 = gamma(b1), g2 = gamma(b2), g3 = gamma(b3);
    const double gsum = g0 + g1 + g2 + g3;

    // Optimal weights 20 * (d0, d1, d2, d3) = (1, 9, 6, 4).
    const double n0 = (g0 / gsum < ct) ? 0.0 : 1.0;
    const double n1 = (g1 / gsum < ct) ? 0.0 : 9.0;
    const double n2 = (g2 / gsum < ct) ? 0.0 : 6.0;
    const double n3 = (g3 / gsum < ct) ? 0.0 : 4.0;
    const double norm = n0 + n1 + n2 + n3;

    // Candidate face values relative to u[0].
    const double q0 = (2.0 * v0 - 7.0 * v1) / 6.0;
    const double q1 = (-v1 + 2.0 * v3) / 6.0;
    const double q2 = (5.0 * v3 - v4) / 6.0;
    const double q3 = (13.0 * v3 - 5.0 * v4 + v5) / 12.0;

    return u[0] + (n0 * q0 + n1 * q1 + n2 * q2 + n3 * q3) / norm;
}

} // namespace recon

/// WENO3-Z interface value from 3 cell values (spec-facing form). Left: value
/// at the right face of the middle cell, biased left; Right mirrors.
inline double weno3z_reconstruct(const std::array<double, 3>& u, Side side,
                                 double eps = 1e-40) {
    if (side == Side::Left) return recon::weno3z_plus(u.data() + 1, eps);
    const std::array<double, 3> r{u[2], u[1], u[0]};
    return recon::weno3z_plus(r.data() + 1, eps);
}

/// TENO6 interface value from 6 cell values u_{i-2..i+3} for the face i+1/2.
/// Left biases from the left of the face, Right mirrors.
inline double teno6_reconstruct(const std::array<double, 6>& u, Side side,
                                double ct = 1e-5, double eps = 1e-40) {
    if (side == Side::Left) return recon::teno6_plus(u.data() + 2, ct, eps);
    std::array<double, 6> r;
    std::reverse_copy(u.begin(), u.end(), r.begin());
    return recon::teno6_plus(r.data() + 2, ct, eps);
}

namespace recon {

/// Face value of the + (left-biased) split flux; u points at node i of the
/// face i+1/2 window.
inline double face_plus(InviscidScheme s, const double* u, double ct,
                        double eps) {
    return s == InviscidScheme::TENO6 ? teno6_plus(u, ct, eps)
                                      : weno3z_plus(u, eps);
}

/// Face value of the - (right-biased) split flux at the same face: mirrors
/// the window about the face and reuses the + kernel, so symmetric data
/// cancels bitwise.
inline double face_minus(InviscidScheme s, const double* u, double ct,
                         double eps) {
    if (s == InviscidScheme::TENO6) {
        const std::array<double, 6> r{u[3], u[2], u[1], u[0], u[-1], u[-2]};
        return teno6_plus(r.data() + 2, ct, eps);
    }
    const std::array<double, 3> r{u[2], u[1], u[0]};
    return weno3z_plus(r.data() + 1, eps);
}

} // namespace recon

} // namespace ignis

#endif
