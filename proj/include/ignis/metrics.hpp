#ifndef IGNIS_METRICS_HPP
#define IGNIS_METRICS_HPP

#include <cmath>
#include <string>

#include "ignis/errors.hpp"
#include "ignis/field.hpp"
#include "ignis/mesh.hpp"

namespace ignis {

/// Difference operator used for the coordinate derivatives.
///
/// Central2 matches the viscous discretization. Order4/Order6 are the node
/// derivative operators implied by the WENO3-Z / TENO6 interface stencils
/// (conservative two-point difference of the optimal-weight face values);
/// using them for the inviscid metric terms makes a uniform freestream
/// telescope to round-off. AnalyticSkew evaluates the skew-map Jacobian in
/// closed form.
enum class MetricMode { Central2, Order4, Order6, AnalyticSkew };

/// Per-node metric terms of the map from index space (xi, eta) to physical
/// (x, y). J is the forward-map determinant (1/area); the stored m_* fields
/// are the divided-by-J forms that multiply Cartesian fluxes:
///   m_xi_x  = xi_x / J  =  y_eta      m_xi_y  = xi_y / J  = -x_eta
///   m_eta_x = eta_x / J = -y_xi       m_eta_y = eta_y / J =  x_xi
struct MetricField {
    Field jac;
    Field m_xi_x, m_xi_y;
    Field m_eta_x, m_eta_y;
    MetricMode mode = MetricMode::Central2;

    double xi_x(int i, int j) const { return m_xi_x(i, j) * jac(i, j); }
    double xi_y(int i, int j) const { return m_xi_y(i, j) * jac(i, j); }
    double eta_x(int i, int j) const { return m_eta_x(i, j) * jac(i, j); }
    double eta_y(int i, int j) const { return m_eta_y(i, j) * jac(i, j); }
};

namespace detail {

/// d(f)/d(index) along x (xdir) or y at (i, j), using the widest centered
/// stencil of preferred half-width that fits in the padded box; falls back to
/// narrower centered and finally one-sided second-order stencils at the rim.
inline double index_deriv(const Field& f, int i, int j, bool xdir, int pref) {
    const int g = f.ghosts();
    const int n = xdir ? f.nx() : f.ny();
    const int c = xdir ? i : j;
    auto at = [&](int off) { return xdir ? f(i + off, j) : f(i, j + off); };
    int w = pref;
    if (c - w < -g || c + w >= n + g) w = 2;
    if (c - w < -g || c + w >= n + g) w = 1;
    if (c - w < -g || c + w >= n + g) {
        if (c + 2 < n + g) return 0.5 * (-3.0 * at(0) + 4.0 * at(1) - at(2));
        return 0.5 * (3.0 * at(0) - 4.0 * at(-1) + at(-2));
    }
    switch (w) {
    case 3:
        return (-at(-3) + 9.0 * at(-2) - 45.0 * at(-1) + 45.0 * at(1) -
                9.0 * at(2) + at(3)) /
               60.0;
    case 2:
        return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / 12.0;
    default:
        return 0.5 * (at(1) - at(-1));
    }
}

} // namespace detail

/// Computes the metric terms and Jacobian for a mesh. skew_beta is consulted
/// only in AnalyticSkew mode (the same beta passed to apply_skew).
inline MetricField compute_metrics(const Mesh& mesh,
                                   MetricMode mode = MetricMode::Central2,
                                   double skew_beta = 0.0) {
    const int g = mesh.g;
    MetricField mf;
    mf.mode = mode;
    mf.jac = Field(mesh.nx, mesh.ny, g);
    mf.m_xi_x = Field(mesh.nx, mesh.ny, g);
    mf.m_xi_y = Field(mesh.nx, mesh.ny, g);
    mf.m_eta_x = Field(mesh.nx, mesh.ny, g);
    mf.m_eta_y = Field(mesh.nx, mesh.ny, g);

    const int pref = (mode == MetricMode::Order6)   ? 3
                     : (mode == MetricMode::Order4) ? 2
                                                    : 1;

    for (int j = -g; j < mesh.ny + g; ++j) {
        for (int i = -g; i < mesh.nx + g; ++i) {
            double x_xi, x_eta, y_xi, y_eta;
            if (mode == MetricMode::AnalyticSkew) {
                const auto d =
                    skew_jacobian(mesh.xi(i), mesh.eta(j), skew_beta, mesh.lx);
                x_xi = d[0] * mesh.dxi();
                x_eta = d[1] * mesh.deta();
                y_xi = d[2] * mesh.dxi();
                y_eta = d[3] * mesh.deta();
            } else {
                x_xi = detail::index_deriv(mesh.x, i, j, true, pref);
                x_eta = detail::index_deriv(mesh.x, i, j, false, pref);
                y_xi = detail::index_deriv(mesh.y, i, j, true, pref);
                y_eta = detail::index_deriv(mesh.y, i, j, false, pref);
            }
            const double area = x_xi * y_eta - x_eta * y_xi;
            if (!(area > 0.0) && i >= 0 && i < mesh.nx && j >= 0 && j < mesh.ny)
                throw NumericsError("grid folding: J <= 0 at node (" +
                                    std::to_string(i) + "," + std::to_string(j) +
                                    ")");
            mf.jac(i, j) = 1.0 / area;
            mf.m_xi_x(i, j) = y_eta;
            mf.m_xi_y(i, j) = -x_eta;
            mf.m_eta_x(i, j) = -y_xi;
            mf.m_eta_y(i, j) = x_xi;
        }
    }
    return mf;
}

} // namespace ignis

#endif
