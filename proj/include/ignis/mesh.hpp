#ifndef IGNIS_MESH_HPP
#define IGNIS_MESH_HPP

#include <array>
#include <cmath>
#include <string>

#include "ignis/errors.hpp"
#include "ignis/field.hpp"

namespace ignis {

/// Fixed ghost width; covers the widest reconstruction stencil (TENO6).
inline constexpr int kGhostWidth = 3;

/// Structured 2D curvilinear mesh, immutable after construction.
///
/// Computational coordinates are uniform with spacings (dxi, deta); physical
/// node positions are stored per node including ghosts. Interior node (i, j)
/// sits at computational (xi0 + (i + 1/2) dxi, eta0 + (j + 1/2) deta), i.e.
/// nodes are offset half a spacing from the domain edges so that periodic
/// images and wall faces fall between nodes.
struct Mesh {
    int nx = 0;
    int ny = 0;
    int g = kGhostWidth;
    double lx = 0.0;
    double ly = 0.0;
    std::array<double, 2> center{0.0, 0.0};
    bool periodic_x = false;
    bool periodic_y = false;

    Field x; // physical x per node
    Field y; // physical y per node

    double dxi() const { return lx / nx; }
    double deta() const { return ly / ny; }

    /// Computational coordinate of node i (x direction).
    double xi(int i) const { return center[0] - 0.5 * lx + (i + 0.5) * dxi(); }
    /// Computational coordinate of node j (y direction).
    double eta(int j) const { return center[1] - 0.5 * ly + (j + 0.5) * deta(); }
};

/// Builds a uniform Cartesian mesh; ghosts are periodic images (offset by the
/// domain extent) in periodic directions and straight extrapolations of the
/// uniform spacing otherwise (which coincide for a uniform grid).
inline Mesh build_uniform(int nx, int ny, double lx, double ly,
                          std::array<double, 2> center = {0.0, 0.0},
                          bool periodic_x = true, bool periodic_y = true,
                          int g = kGhostWidth) {
    if (lx <= 0.0 || ly <= 0.0)
        throw ConfigError("build_uniform: domain extents must be positive");
    if (g < 1) throw ConfigError("build_uniform: ghost width must be >= 1");
    if (nx < 2 * g + 1 || ny < 2 * g + 1)
        throw ConfigError("build_uniform: node counts must be >= 2g+1, got " +
                          std::to_string(nx) + "x" + std::to_string(ny));

    Mesh m;
    m.nx = nx;
    m.ny = ny;
    m.g = g;
    m.lx = lx;
    m.ly = ly;
    m.center = center;
    m.periodic_x = periodic_x;
    m.periodic_y = periodic_y;
    m.x = Field(nx, ny, g);
    m.y = Field(nx, ny, g);
    for (int j = -g; j < ny + g; ++j) {
        for (int i = -g; i < nx + g; ++i) {
            m.x(i, j) = m.xi(i);
            m.y(i, j) = m.eta(j);
        }
    }
    return m;
}

/// Analytic Jacobian entries of the skew transform at computational (xc, yc):
/// returns {dX/dx, dX/dy, dY/dx, dY/dy}.
inline std::array<double, 4> skew_jacobian(double xc, double yc, double beta,
                                           double L) {
    const double k = 2.0 * M_PI / L;
    return {1.0 + beta * std::sin(k * yc), xc * beta * k * std::cos(k * yc),
            yc * beta * k * std::cos(k * xc), 1.0 + beta * std::sin(k * xc)};
}

/// Sinusoidal skew transform applied to every node (ghosts included):
///   X = x [1 + beta sin(2 pi y / L)],  Y = y [1 + beta sin(2 pi x / L)].
/// Requires a square domain centered on the origin. Throws if the transform
/// folds the grid (analytic Jacobian <= 0) at any interior node.
inline Mesh apply_skew(const Mesh& in, double beta) {
    if (std::abs(in.lx - in.ly) > 1e-14 * in.lx || in.center[0] != 0.0 ||
        in.center[1] != 0.0)
        throw ConfigError("apply_skew: mesh must be square and origin-centered");
    const double L = in.lx;
    for (int j = 0; j < in.ny; ++j) {
        for (int i = 0; i < in.nx; ++i) {
            const auto d = skew_jacobian(in.xi(i), in.eta(j), beta, L);
            if (d[0] * d[3] - d[1] * d[2] <= 0.0)
                throw NumericsError(
                    "apply_skew: grid folding (J <= 0) at node (" +
                    std::to_string(i) + "," + std::to_string(j) +
                    ") for beta=" + std::to_string(beta));
        }
    }
    Mesh m = in;
    for (int j = -m.g; j < m.ny + m.g; ++j) {
        for (int i = -m.g; i < m.nx + m.g; ++i) {
            const double xc = in.x(i, j);
            const double yc = in.y(i, j);
            m.x(i, j) = xc * (1.0 + beta * std::sin(2.0 * M_PI * yc / L));
            m.y(i, j) = yc * (1.0 + beta * std::sin(2.0 * M_PI * xc / L));
        }
    }
    return m;
}

} // namespace ignis

#endif
