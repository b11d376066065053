#ifndef IGNIS_BOUNDARY_HPP
#define IGNIS_BOUNDARY_HPP

#include <cmath>
#include <string>
#include <vector>

#include "ignis/errors.hpp"
#include "ignis/field.hpp"
#include "ignis/mesh.hpp"
#include "ignis/metrics.hpp"
#include "ignis/state.hpp"

namespace ignis {

enum class BCType {
    Periodic,
    NoslipIsothermal,
    NoslipAdiabatic,
    Inflow,
    Outflow
};

/// Piecewise-constant inflow target over [lo, hi] of the edge coordinate.
struct InflowSegment {
    double lo = 0.0;
    double hi = 0.0;
    double u = 0.0;
    double v = 0.0;
    double T = 0.0;
    SpeciesArray Y{};
};

struct EdgeSpec {
    BCType type = BCType::Periodic;
    double T_wall = 0.0;                 // isothermal wall temperature
    std::vector<InflowSegment> segments; // inflow profile
    double smooth_width = 0.0;           // tanh shear-layer thickness
    double p_target = 0.0;               // outflow relaxation target
    double sigma_out = 0.25;             // outflow relaxation rate
};

enum class Edge { Left, Right, Bottom, Top };

struct BoundarySpec {
    EdgeSpec left, right, bottom, top;

    const EdgeSpec& at(Edge e) const {
        switch (e) {
        case Edge::Left: return left;
        case Edge::Right: return right;
        case Edge::Bottom: return bottom;
        default: return top;
        }
    }

    void validate(const Mesh& mesh) const {
        const bool px = left.type == BCType::Periodic;
        if (px != (right.type == BCType::Periodic) || px != mesh.periodic_x)
            throw ConfigError("boundary: periodic x edges must be paired and "
                              "match the mesh");
        const bool py = bottom.type == BCType::Periodic;
        if (py != (top.type == BCType::Periodic) || py != mesh.periodic_y)
            throw ConfigError("boundary: periodic y edges must be paired and "
                              "match the mesh");
        auto check_inflow = [&](const EdgeSpec& s, bool xedge) {
            if (s.type != BCType::Inflow) return;
            if (s.segments.empty())
                throw ConfigError("boundary: inflow edge needs segments");
            const double lo = xedge ? mesh.center[1] - 0.5 * mesh.ly
                                    : mesh.center[0] - 0.5 * mesh.lx;
            const double hi = xedge ? mesh.center[1] + 0.5 * mesh.ly
                                    : mesh.center[0] + 0.5 * mesh.lx;
            for (const auto& seg : s.segments) {
                if (seg.lo >= seg.hi || seg.lo < lo - 1e-12 * (hi - lo) ||
                    seg.hi > hi + 1e-12 * (hi - lo))
                    throw ConfigError(
                        "boundary: inflow segment [" + std::to_string(seg.lo) +
                        "," + std::to_string(seg.hi) +
                        "] outside edge extent [" + std::to_string(lo) + "," +
                        std::to_string(hi) + "]");
            }
        };
        check_inflow(left, true);
        check_inflow(right, true);
        check_inflow(bottom, false);
        check_inflow(top, false);
    }
};

namespace detail {

/// tanh-blended inflow profile at edge coordinate yc.
inline void inflow_profile(const EdgeSpec& spec, double yc, int ns,
                           double& u, double& v, double& T, SpeciesArray& Y) {
    const double w = spec.smooth_width > 0.0 ? spec.smooth_width : 1e-30;
    double wsum = 0.0;
    u = v = T = 0.0;
    Y.fill(0.0);
    for (const auto& seg : spec.segments) {
        const double a = 0.5 * (std::tanh((yc - seg.lo) / w) -
                                std::tanh((yc - seg.hi) / w));
        wsum += a;
        u += a * seg.u;
        v += a * seg.v;
        T += a * seg.T;
        for (int s = 0; s < ns; ++s) Y[s] += a * seg.Y[s];
    }
    if (wsum <= 1e-300) {
        // Outside every segment tail: hold the nearest segment value.
        const auto& seg = spec.segments.front();
        u = seg.u;
        v = seg.v;
        T = seg.T;
        Y = seg.Y;
        return;
    }
    u /= wsum;
    v /= wsum;
    T /= wsum;
    double ysum = 0.0;
    for (int s = 0; s < ns; ++s) ysum += Y[s];
    for (int s = 0; s < ns; ++s) Y[s] /= ysum;
}

} // namespace detail

/// Populates all ghost layers of the mapped conservative state Ut = U / J.
///
/// Edge passes run x first (interior rows only), then y over the full padded
/// index range, so corner ghosts take the y-edge condition (fixed precedence).
/// Periodic copies preserve the physical state bitwise on uniform grids via
/// the J-ratio form; walls mirror velocity and impose the thermal condition
/// at the wall face; inflow imposes the profile with pressure extrapolated
/// from the interior; outflow extrapolates the interior state.
inline void fill_ghosts(FieldSet& Ut, const Mesh& mesh, const MetricField& met,
                        const MixtureModel& mix, const BoundarySpec& spec) {
    const int g = mesh.g;
    const int nx = mesh.nx;
    const int ny = mesh.ny;
    const CompIndex ci{mix.ns()};
    const int nc = ci.ncomp();

    // J_src / J_dst is exactly 1.0 on uniform grids, so periodic copies there
    // are bitwise; on curved grids this transports the physical state U.
    auto copy_scaled = [&](int is, int js, int id, int jd) {
        const double ratio = met.jac(is, js) / met.jac(id, jd);
        for (int c = 0; c < nc; ++c) Ut[c](id, jd) = Ut[c](is, js) * ratio;
    };

    auto prim_at = [&](int i, int j) {
        ConsVec U;
        const double J = met.jac(i, j);
        for (int c = 0; c < nc; ++c) U[c] = Ut[c](i, j) * J;
        return primitives_from_conservative(U.data(), mix);
    };

    auto store_prim = [&](const PrimPoint& pt, int i, int j) {
        const ConsVec U = conservative_from_primitives(pt, mix);
        const double invJ = 1.0 / met.jac(i, j);
        for (int c = 0; c < nc; ++c) Ut[c](i, j) = U[c] * invJ;
    };

    auto fill_edge = [&](Edge edge, int lo_t, int hi_t) {
        const EdgeSpec& es = spec.at(edge);
        const bool xedge = edge == Edge::Left || edge == Edge::Right;
        // Maps (ghost layer k = 1..g, transverse t) to node indices.
        auto ghost_ij = [&](int k, int t) {
            switch (edge) {
            case Edge::Left: return std::pair<int, int>{-k, t};
            case Edge::Right: return std::pair<int, int>{nx - 1 + k, t};
            case Edge::Bottom: return std::pair<int, int>{t, -k};
            default: return std::pair<int, int>{t, ny - 1 + k};
            }
        };
        auto mirror_ij = [&](int k, int t) {
            switch (edge) {
            case Edge::Left: return std::pair<int, int>{k - 1, t};
            case Edge::Right: return std::pair<int, int>{nx - k, t};
            case Edge::Bottom: return std::pair<int, int>{t, k - 1};
            default: return std::pair<int, int>{t, ny - k};
            }
        };
        auto wrap_ij = [&](int k, int t) {
            switch (edge) {
            case Edge::Left: return std::pair<int, int>{nx - k, t};
            case Edge::Right: return std::pair<int, int>{k - 1, t};
            case Edge::Bottom: return std::pair<int, int>{t, ny - k};
            default: return std::pair<int, int>{t, k - 1};
            }
        };
        auto interior_ij = [&](int t) {
            switch (edge) {
            case Edge::Left: return std::pair<int, int>{0, t};
            case Edge::Right: return std::pair<int, int>{nx - 1, t};
            case Edge::Bottom: return std::pair<int, int>{t, 0};
            default: return std::pair<int, int>{t, ny - 1};
            }
        };

        for (int t = lo_t; t < hi_t; ++t) {
            switch (es.type) {
            case BCType::Periodic:
                for (int k = 1; k <= g; ++k) {
                    const auto [is, js] = wrap_ij(k, t);
                    const auto [id, jd] = ghost_ij(k, t);
                    copy_scaled(is, js, id, jd);
                }
                break;
            case BCType::NoslipIsothermal:
            case BCType::NoslipAdiabatic: {
                for (int k = 1; k <= g; ++k) {
                    const auto [im, jm] = mirror_ij(k, t);
                    const auto [id, jd] = ghost_ij(k, t);
                    PrimPoint pt = prim_at(im, jm);
                    pt.u = -pt.u;
                    pt.v = -pt.v;
                    if (es.type == BCType::NoslipIsothermal) {
                        const double tg = 2.0 * es.T_wall - pt.T;
                        pt.T = std::max(tg, 0.05 * es.T_wall);
                    }
                    pt.rho = pt.p / (thermo::r_specific(pt.Y, mix) * pt.T);
                    store_prim(pt, id, jd);
                }
                break;
            }
            case BCType::Inflow: {
                const auto [ii, ji] = interior_ij(t);
                const PrimPoint inner = prim_at(ii, ji);
                for (int k = 1; k <= g; ++k) {
                    const auto [id, jd] = ghost_ij(k, t);
                    const double yc = xedge ? mesh.eta(jd) : mesh.xi(id);
                    PrimPoint pt;
                    detail::inflow_profile(es, yc, ci.ns, pt.u, pt.v, pt.T,
                                           pt.Y);
                    pt.p = inner.p;
                    pt.rho = pt.p / (thermo::r_specific(pt.Y, mix) * pt.T);
                    store_prim(pt, id, jd);
                }
                break;
            }
            case BCType::Outflow: {
                const auto [ii, ji] = interior_ij(t);
                for (int k = 1; k <= g; ++k) {
                    const auto [id, jd] = ghost_ij(k, t);
                    copy_scaled(ii, ji, id, jd);
                }
                break;
            }
            }
        }
    };

    fill_edge(Edge::Left, 0, ny);
    fill_edge(Edge::Right, 0, ny);
    fill_edge(Edge::Bottom, -g, nx + g);
    fill_edge(Edge::Top, -g, nx + g);
}

} // namespace ignis

#endif
