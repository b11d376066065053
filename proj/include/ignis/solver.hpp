#ifndef IGNIS_SOLVER_HPP
#define IGNIS_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ignis/boundary.hpp"
#include "ignis/chemistry.hpp"
#include "ignis/errors.hpp"
#include "ignis/field.hpp"
#include "ignis/flux.hpp"
#include "ignis/laser.hpp"
#include "ignis/mesh.hpp"
#include "ignis/metrics.hpp"
#include "ignis/reconstruction.hpp"
#include "ignis/state.hpp"
#include "ignis/thermo.hpp"
#include "ignis/thread_team.hpp"

namespace ignis {

struct IntegratorConfig {
    double fixed_dt = 0.0; // > 0 pins the step, otherwise CFL-controlled
    double t_end = 0.0;
    long max_iter = std::numeric_limits<long>::max();
    bool chem_dt_limit = true;
    double chem_dt_factor = 0.1;
};

/// Inclusive interior cell box sampled by a probe.
struct ProbeSpec {
    int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
};

struct ProbeSeries {
    ProbeSpec box;
    std::vector<double> times;
    std::vector<std::vector<double>> rows; // rho,u,v,p,T,Y_s per sample
};

struct TraceSeries {
    std::vector<double> times;
    std::vector<double> values;
};

class Simulation {
public:
    Mesh mesh;
    MetricField met;   // inviscid metrics + the Jacobian used for U/J
    MetricField met_v; // second-order central metrics for viscous terms
    MixtureModel mix;
    SchemeConfig scheme;
    BoundarySpec bc;
    std::optional<ReactionMechanism> mech;
    std::optional<LaserParams> laser;
    bool viscous = false;

    FieldSet Ut; // evolved mapped conservative state U / J
    double time = 0.0;
    long iter = 0;
    std::uint64_t config_hash = 0;

    IntegratorConfig integ;
    int probe_interval = 0; // 0 disables sampling
    std::vector<ProbeSeries> probes;
    int trace_interval = 0; // product-fraction trace cadence
    TraceSeries product_fraction;
    double last_clip = 0.0; // largest mass-fraction clip of the latest step
    int partitions = 1;

    // Primitive cache over the padded box, refreshed per stage.
    Field rho, u, v, p, T, c;
    FieldSet Ys;

    void init(Mesh m, MetricMode inviscid_metrics, double skew_beta,
              MixtureModel mixture, SchemeConfig sc, BoundarySpec bspec) {
        mesh = std::move(m);
        mix = std::move(mixture);
        scheme = sc;
        scheme.validate();
        bc = std::move(bspec);
        bc.validate(mesh);
        met = compute_metrics(mesh, inviscid_metrics, skew_beta);
        met_v = compute_metrics(mesh, MetricMode::Central2);
        const int ns = mix.ns();
        Ut = FieldSet(ns + 3, mesh.nx, mesh.ny, mesh.g);
        rho = Field(mesh.nx, mesh.ny, mesh.g);
        u = Field(mesh.nx, mesh.ny, mesh.g);
        v = Field(mesh.nx, mesh.ny, mesh.g);
        p = Field(mesh.nx, mesh.ny, mesh.g);
        T = Field(mesh.nx, mesh.ny, mesh.g, 1.0);
        c = Field(mesh.nx, mesh.ny, mesh.g, 1.0);
        Ys = FieldSet(ns, mesh.nx, mesh.ny, mesh.g);
    }

    /// Derives the metric mode the inviscid terms should use for a scheme.
    static MetricMode metric_mode_for(const SchemeConfig& sc) {
        switch (sc.metrics) {
        case InviscidMetrics::AnalyticSkew: return MetricMode::AnalyticSkew;
        case InviscidMetrics::Central2: return MetricMode::Central2;
        default:
            return sc.scheme == InviscidScheme::TENO6 ? MetricMode::Order6
                                                      : MetricMode::Order4;
        }
    }

    /// Sets the state from a primitive-valued function of physical (x, y).
    void set_initial_condition(
        const std::function<PrimPoint(double, double)>& ic) {
        const CompIndex ci{mix.ns()};
        for (int j = -mesh.g; j < mesh.ny + mesh.g; ++j) {
            for (int i = -mesh.g; i < mesh.nx + mesh.g; ++i) {
                const ConsVec U =
                    conservative_from_primitives(ic(mesh.x(i, j), mesh.y(i, j)),
                                                 mix);
                const double invJ = 1.0 / met.jac(i, j);
                for (int cc = 0; cc < ci.ncomp(); ++cc)
                    Ut[cc](i, j) = U[cc] * invJ;
            }
        }
    }

    void add_probe(const ProbeSpec& ps) {
        if (ps.i0 < 0 || ps.j0 < 0 || ps.i1 >= mesh.nx || ps.j1 >= mesh.ny ||
            ps.i0 > ps.i1 || ps.j0 > ps.j1)
            throw ConfigError("probe box out of range");
        probes.push_back(ProbeSeries{ps, {}, {}});
    }

    int ns() const { return mix.ns(); }
    CompIndex comp() const { return CompIndex{mix.ns()}; }

    // ------------------------------------------------------------------
    // Primitive cache and ghost handling
    // ------------------------------------------------------------------

    void refill_ghosts() { fill_ghosts(Ut, mesh, met, mix, bc); }

    /// Rebuilds the primitive cache over the padded box. Throws StepFailure
    /// tagged with (stage, i, j) if any node fails the state solve.
    void refresh_primitives(int stage) {
        const CompIndex ci{mix.ns()};
        const int g = mesh.g;
        team().run(-g, mesh.ny + g, [&](int jb, int je) {
            ConsVec U;
            for (int j = jb; j < je; ++j) {
                for (int i = -g; i < mesh.nx + g; ++i) {
                    const double J = met.jac(i, j);
                    for (int cc = 0; cc < ci.ncomp(); ++cc)
                        U[cc] = Ut[cc](i, j) * J;
                    PrimPoint pt;
                    try {
                        pt = primitives_from_conservative(U.data(), mix,
                                                          T(i, j));
                    } catch (const StateError& e) {
                        throw StepFailure(std::string("stage state failure: ") +
                                              e.what(),
                                          stage, i, j);
                    }
                    rho(i, j) = pt.rho;
                    u(i, j) = pt.u;
                    v(i, j) = pt.v;
                    p(i, j) = pt.p;
                    T(i, j) = pt.T;
                    c(i, j) = thermo::sound_speed(pt.T, pt.Y, mix);
                    for (int s = 0; s < ci.ns; ++s) Ys[s](i, j) = pt.Y[s];
                }
            }
        });
    }

    // ------------------------------------------------------------------
    // Right-hand side
    // ------------------------------------------------------------------

    /// dUt/dt with ghosts and primitive cache assumed fresh; t_stage is the
    /// time at which time-dependent sources are evaluated.
    void compute_rhs(FieldSet& rhs, double t_stage, int stage = 0) {
        const CompIndex ci{mix.ns()};
        const int nc = ci.ncomp();
        if (rhs.ncomp() != nc || !rhs[0].same_shape(Ut[0]))
            rhs = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);

        if (dFx_.ncomp() != nc) {
            dFx_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
            dGy_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
        }

        inviscid_direction(true);
        inviscid_direction(false);
        if (bc.right.type == BCType::Outflow) lodi_outflow_override();

        if (viscous) compute_viscous();

        const bool chem = mech.has_value();
        const bool las = laser.has_value() && laser->energy != 0.0;
        team().run(0, mesh.ny, [&](int jb, int je) {
            SpeciesArray Y, wdot;
            for (int j = jb; j < je; ++j) {
                for (int i = 0; i < mesh.nx; ++i) {
                    const double invJ = 1.0 / met.jac(i, j);
                    for (int cc = 0; cc < nc; ++cc) {
                        double r = -(dFx_[cc](i, j) + dGy_[cc](i, j));
                        if (viscous) r += dVx_[cc](i, j) + dVy_[cc](i, j);
                        rhs[cc](i, j) = r;
                    }
                    if (chem) {
                        for (int s = 0; s < ci.ns; ++s) Y[s] = Ys[s](i, j);
                        source_terms(rho(i, j), T(i, j), Y, mix, *mech, wdot);
                        for (int s = 0; s < ci.ns; ++s)
                            rhs[s](i, j) += wdot[s] * invJ;
                    }
                    if (las)
                        rhs[ci.en()](i, j) +=
                            laser_power(mesh.x(i, j), mesh.y(i, j), t_stage,
                                        *laser) *
                            invJ;
                    for (int cc = 0; cc < nc; ++cc) {
                        if (!std::isfinite(rhs[cc](i, j)))
                            throw StepFailure("non-finite RHS", stage, i, j);
                    }
                }
            }
        });
    }

    // ------------------------------------------------------------------
    // Time stepping
    // ------------------------------------------------------------------

    /// Stable step estimate from convective, viscous and (optionally)
    /// chemical spectra of the cached state. Requires a fresh cache.
    double stable_dt() {
        const CompIndex ci{mix.ns()};
        double lam_max = 0.0;
        SpeciesArray Y, X, wdot;
        ThermoState st;
        double dt_chem = std::numeric_limits<double>::infinity();
        for (int j = 0; j < mesh.ny; ++j) {
            for (int i = 0; i < mesh.nx; ++i) {
                const double J = met.jac(i, j);
                const double sx = std::hypot(met.m_xi_x(i, j), met.m_xi_y(i, j));
                const double sy =
                    std::hypot(met.m_eta_x(i, j), met.m_eta_y(i, j));
                const double ux =
                    met.m_xi_x(i, j) * u(i, j) + met.m_xi_y(i, j) * v(i, j);
                const double uy =
                    met.m_eta_x(i, j) * u(i, j) + met.m_eta_y(i, j) * v(i, j);
                double lam =
                    (std::abs(ux) + c(i, j) * sx + std::abs(uy) +
                     c(i, j) * sy) *
                    J;
                if (viscous) {
                    for (int s = 0; s < ci.ns; ++s) Y[s] = Ys[s](i, j);
                    st.rho = rho(i, j);
                    st.T = T(i, j);
                    st.Y = Y;
                    thermo::mole_fractions(Y, mix, st.X);
                    transport(st, mix);
                    const double nu = std::max(
                        2.0 * st.mu / st.rho,
                        std::max(st.lambda / (st.rho *
                                              thermo::cp_mass(st.T, Y, mix)),
                                 st.D[0]));
                    lam += 2.0 * nu * (sx * sx + sy * sy) * J * J;
                }
                lam_max = std::max(lam_max, lam);
                if (mech && integ.chem_dt_limit) {
                    for (int s = 0; s < ci.ns; ++s) Y[s] = Ys[s](i, j);
                    source_terms(rho(i, j), T(i, j), Y, mix, *mech, wdot);
                    for (int s = 0; s < ci.ns; ++s) {
                        const double w = std::abs(wdot[s]);
                        if (w > 0.0) {
                            const double mass =
                                rho(i, j) * std::max(Y[s], 1e-3);
                            dt_chem = std::min(
                                dt_chem, integ.chem_dt_factor * mass / w);
                        }
                    }
                }
            }
        }
        double dt = scheme.cfl / lam_max;
        dt = std::min(dt, dt_chem);
        // Resolve the deposition pulse: cap dt while the step overlaps the
        // +/- 6 sigma_t window around the deployment time.
        if (laser && laser->energy != 0.0 &&
            time - laser->t0 < 6.0 * laser->sigma_t &&
            time + dt > laser->t0 - 6.0 * laser->sigma_t)
            dt = std::min(dt, laser->sigma_t / 5.0);
        return dt;
    }

    /// One SSP-RK3 step in incremental form: rhs == 0 reproduces the state
    /// bitwise. Each stage refills ghosts, refreshes primitives, clips mass
    /// fractions and validates the state.
    void rk3_step(double dt) {
        const int nc = comp().ncomp();
        if (U0_.ncomp() != nc) {
            U0_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
            rhs_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
        }
        copy_interior(Ut, U0_);
        try {
            // Stage 1: U <- U0 + dt L(U0)   (ghosts/cache already fresh)
            compute_rhs(rhs_, time, 1);
            axpy_interior(U0_, dt, rhs_, Ut);
            post_stage(1);

            // Stage 2: U <- U0 + 1/4 [(U1 - U0) + dt L(U1)]
            compute_rhs(rhs_, time + dt, 2);
            blend_interior(U0_, 0.25, dt, rhs_, Ut);
            post_stage(2);

            // Stage 3: U <- U0 + 2/3 [(U2 - U0) + dt L(U2)]
            compute_rhs(rhs_, time + 0.5 * dt, 3);
            blend_interior(U0_, 2.0 / 3.0, dt, rhs_, Ut);
            post_stage(3);
        } catch (const StepFailure&) {
            copy_interior(U0_, Ut); // keep the last good state reachable
            throw;
        }
        time += dt;
        ++iter;
    }

    /// Advances to t_end / max_iter, sampling probes and the product trace.
    /// step_hook (when set) runs after every completed step.
    void advance(const std::function<void(Simulation&)>& step_hook = nullptr) {
        prepare_stage(1);
        sample_outputs();
        const double t_eps = 1e-12 * std::max(1.0, std::abs(integ.t_end));
        while (iter < integ.max_iter && time < integ.t_end - t_eps) {
            double dt =
                integ.fixed_dt > 0.0 ? integ.fixed_dt : stable_dt();
            if (integ.fixed_dt <= 0.0) dt = std::min(dt, integ.t_end - time);
            rk3_step(dt);
            prepare_stage(1); // fresh ghosts/cache for sampling and next dt
            sample_outputs();
            if (step_hook) step_hook(*this);
        }
    }

    /// Appends one probe sample per configured probe (box-averaged
    /// primitives) and the product-fraction trace value.
    void sample_outputs() {
        const bool want_probe =
            probe_interval > 0 && (iter % probe_interval == 0);
        const bool want_trace =
            trace_interval > 0 && (iter % trace_interval == 0);
        if (want_probe) {
            for (auto& pr : probes) {
                std::vector<double> row(5 + mix.ns(), 0.0);
                int n = 0;
                for (int j = pr.box.j0; j <= pr.box.j1; ++j) {
                    for (int i = pr.box.i0; i <= pr.box.i1; ++i) {
                        row[0] += rho(i, j);
                        row[1] += u(i, j);
                        row[2] += v(i, j);
                        row[3] += p(i, j);
                        row[4] += T(i, j);
                        for (int s = 0; s < mix.ns(); ++s)
                            row[5 + s] += Ys[s](i, j);
                        ++n;
                    }
                }
                for (auto& x : row) x /= n;
                pr.times.push_back(time);
                pr.rows.push_back(std::move(row));
            }
        }
        if (want_trace) {
            product_fraction.times.push_back(time);
            product_fraction.values.push_back(product_mole_fraction());
        }
    }

    /// Area-weighted mean product (CO2 + H2O) mole fraction over the
    /// interior; zero when the mixture lacks product species.
    double product_mole_fraction() {
        int ico2 = -1, ih2o = -1;
        for (int s = 0; s < mix.ns(); ++s) {
            if (mix.species[s].name == "CO2") ico2 = s;
            if (mix.species[s].name == "H2O") ih2o = s;
        }
        if (ico2 < 0 && ih2o < 0) return 0.0;
        double num = 0.0, den = 0.0;
        SpeciesArray Y, X;
        for (int j = 0; j < mesh.ny; ++j) {
            for (int i = 0; i < mesh.nx; ++i) {
                for (int s = 0; s < mix.ns(); ++s) Y[s] = Ys[s](i, j);
                thermo::mole_fractions(Y, mix, X);
                const double w = 1.0 / met.jac(i, j);
                num += w * ((ico2 >= 0 ? X[ico2] : 0.0) +
                            (ih2o >= 0 ? X[ih2o] : 0.0));
                den += w;
            }
        }
        return num / den;
    }

    /// Interior sums of the discretely conserved quantities
    /// (per-component integral of U over the domain, index-space measure).
    std::vector<double> conserved_totals() const {
        const int nc = comp().ncomp();
        std::vector<double> tot(nc, 0.0);
        for (int cc = 0; cc < nc; ++cc)
            for (int j = 0; j < mesh.ny; ++j)
                for (int i = 0; i < mesh.nx; ++i) tot[cc] += Ut[cc](i, j);
        return tot;
    }

    /// Ghost fill + primitive refresh (stage preamble, also used standalone
    /// before inspecting the cache).
    void prepare_stage(int stage) {
        refill_ghosts();
        refresh_primitives(stage);
    }

    ThreadTeam& team() {
        if (!team_ || team_->workers() != partitions)
            team_ = std::make_unique<ThreadTeam>(partitions);
        return *team_;
    }

private:
    // ------------------------------------------------------------------
    // Inviscid faces
    // ------------------------------------------------------------------

    /// Accumulates the conservative face-flux difference along one direction
    /// into dFx_ (xdir) or dGy_. Faces are between nodes m and m+1 of each
    /// line; the stencil half-width h gives the window m-h+1 .. m+h.
    void inviscid_direction(bool xdir) {
        const CompIndex ci{mix.ns()};
        const int nc = ci.ncomp();
        const int h = scheme.stencil_half();
        const int nline = xdir ? mesh.ny : mesh.nx; // lines processed
        const int nalong = xdir ? mesh.nx : mesh.ny;
        const int g = mesh.g;
        FieldSet& out = xdir ? dFx_ : dGy_;

        team().run(0, nline, [&](int lb, int le) {
            const int w = nalong + 2 * g;
            std::vector<double> Ft(static_cast<std::size_t>(w) * nc);
            std::vector<double> Uc(static_cast<std::size_t>(w) * nc);
            std::vector<double> un_s(w), c_s(w);
            std::vector<double> fhat(static_cast<std::size_t>(nalong + 1) * nc);
            std::vector<double> wp(2 * h), wm(2 * h);
            ConsVec q{}, amp{}, Fh{};
            SpeciesArray Yl, Yr;

            for (int line = lb; line < le; ++line) {
                auto IJ = [&](int m) {
                    return xdir ? std::pair<int, int>{m, line}
                                : std::pair<int, int>{line, m};
                };
                // Node pass: physical U, mapped flux, cached speeds.
                for (int m = -g; m < nalong + g; ++m) {
                    const auto [i, j] = IJ(m);
                    const double J = met.jac(i, j);
                    const double m1 =
                        xdir ? met.m_xi_x(i, j) : met.m_eta_x(i, j);
                    const double m2 =
                        xdir ? met.m_xi_y(i, j) : met.m_eta_y(i, j);
                    double* Uk = &Uc[static_cast<std::size_t>(m + g) * nc];
                    for (int cc = 0; cc < nc; ++cc) Uk[cc] = Ut[cc](i, j) * J;
                    mapped_flux(Uk, p(i, j), m1, m2, ci,
                                &Ft[static_cast<std::size_t>(m + g) * nc]);
                    un_s[m + g] = 0.0; // filled per-face with the face normal
                    c_s[m + g] = c(i, j);
                }

                for (int m = -1; m < nalong; ++m) { // face between m, m+1
                    const auto [il, jl] = IJ(m);
                    const auto [ir, jr] = IJ(m + 1);
                    const double m1f =
                        0.5 * ((xdir ? met.m_xi_x(il, jl) : met.m_eta_x(il, jl)) +
                               (xdir ? met.m_xi_x(ir, jr) : met.m_eta_x(ir, jr)));
                    const double m2f =
                        0.5 * ((xdir ? met.m_xi_y(il, jl) : met.m_eta_y(il, jl)) +
                               (xdir ? met.m_xi_y(ir, jr) : met.m_eta_y(ir, jr)));
                    double* F = &fhat[static_cast<std::size_t>(m + 1) * nc];

                    if (scheme.split == FluxSplit::Characteristic) {
                        for (int s = 0; s < ci.ns; ++s) {
                            Yl[s] = Ys[s](il, jl);
                            Yr[s] = Ys[s](ir, jr);
                        }
                        const RoeAverage ra = roe_average(
                            rho(il, jl), Yl, T(il, jl), u(il, jl), v(il, jl),
                            rho(ir, jr), Yr, T(ir, jr), u(ir, jr), v(ir, jr),
                            mix);
                        const EigenSystem es = EigenSystem::at_state(
                            ra.Y, ra.T, ra.u, ra.v, m1f, m2f, mix);
                        // Per-node characteristic values and normal speeds.
                        double lf[6][kMaxComp], lu[6][kMaxComp];
                        for (int k = 0; k < 2 * h; ++k) {
                            const int mm = m - h + 1 + k;
                            const auto [i, j] = IJ(mm);
                            un_s[mm + g] = es.n1 * u(i, j) + es.n2 * v(i, j);
                            es.project(
                                &Ft[static_cast<std::size_t>(mm + g) * nc],
                                lf[k]);
                            es.project(
                                &Uc[static_cast<std::size_t>(mm + g) * nc],
                                lu[k]);
                        }
                        for (int f = 0; f < nc; ++f) {
                            double alpha = 0.0;
                            for (int k = m - h + 1; k <= m + h; ++k)
                                alpha = std::max(
                                    alpha, std::abs(es.field_speed(
                                               f, un_s[k + g], c_s[k + g])));
                            if (!std::isfinite(alpha))
                                throw NumericsError(
                                    "inviscid face: non-finite wavespeed");
                            for (int k = 0; k < 2 * h; ++k) {
                                wp[k] = 0.5 * (lf[k][f] + alpha * lu[k][f]);
                                wm[k] = 0.5 * (lf[k][f] - alpha * lu[k][f]);
                            }
                            amp[f] =
                                recon::face_plus(scheme.scheme, &wp[h - 1],
                                                 scheme.teno_ct, scheme.eps) +
                                recon::face_minus(scheme.scheme, &wm[h - 1],
                                                  scheme.teno_ct, scheme.eps);
                        }
                        es.assemble(amp.data(), F);
                    } else {
                        const double sf = std::hypot(m1f, m2f);
                        double alpha = 0.0;
                        for (int k = m - h + 1; k <= m + h; ++k) {
                            const auto [i, j] = IJ(k);
                            const double un =
                                (m1f * u(i, j) + m2f * v(i, j)) / sf;
                            alpha = std::max(
                                alpha, sf * (std::abs(un) + c_s[k + g]));
                        }
                        if (!std::isfinite(alpha))
                            throw NumericsError(
                                "inviscid face: non-finite wavespeed");
                        for (int cc = 0; cc < nc; ++cc) {
                            for (int k = 0; k < 2 * h; ++k) {
                                const int mm = m - h + 1 + k;
                                const double fv =
                                    Ft[static_cast<std::size_t>(mm + g) * nc +
                                       cc];
                                const double uv =
                                    Uc[static_cast<std::size_t>(mm + g) * nc +
                                       cc];
                                wp[k] = 0.5 * (fv + alpha * uv);
                                wm[k] = 0.5 * (fv - alpha * uv);
                            }
                            F[cc] =
                                recon::face_plus(scheme.scheme, &wp[h - 1],
                                                 scheme.teno_ct, scheme.eps) +
                                recon::face_minus(scheme.scheme, &wm[h - 1],
                                                  scheme.teno_ct, scheme.eps);
                        }
                    }
                }

                for (int m = 0; m < nalong; ++m) {
                    const auto [i, j] = IJ(m);
                    for (int cc = 0; cc < nc; ++cc)
                        out[cc](i, j) =
                            fhat[static_cast<std::size_t>(m + 1) * nc + cc] -
                            fhat[static_cast<std::size_t>(m) * nc + cc];
                }
            }
        });
    }

    // ------------------------------------------------------------------
    // Viscous terms
    // ------------------------------------------------------------------

    /// Second-order central viscous/diffusive divergence contributions into
    /// dVx_, dVy_ (added to the RHS). Gradients in computational space are
    /// mapped with the Central2 metrics.
    void compute_viscous() {
        const CompIndex ci{mix.ns()};
        const int nc = ci.ncomp();
        if (Fv_.ncomp() != nc) {
            Fv_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
            Gv_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
            dVx_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
            dVy_ = FieldSet(nc, mesh.nx, mesh.ny, mesh.g);
            Xs_ = FieldSet(ci.ns, mesh.nx, mesh.ny, mesh.g);
        }

        const int g1 = 2; // node fluxes needed one ring beyond the interior
        team().run(-g1, mesh.ny + g1, [&](int jb, int je) {
            SpeciesArray Y, X;
            for (int j = jb; j < je; ++j)
                for (int i = -g1; i < mesh.nx + g1; ++i) {
                    for (int s = 0; s < ci.ns; ++s) Y[s] = Ys[s](i, j);
                    thermo::mole_fractions(Y, mix, X);
                    for (int s = 0; s < ci.ns; ++s) Xs_[s](i, j) = X[s];
                }
        });

        const int ring = 1;
        team().run(-ring, mesh.ny + ring, [&](int jb, int je) {
            SpeciesArray Y, X, gx, gy, hs;
            for (int j = jb; j < je; ++j) {
                for (int i = -ring; i < mesh.nx + ring; ++i) {
                    auto ddxi = [&](const Field& f) {
                        return 0.5 * (f(i + 1, j) - f(i - 1, j));
                    };
                    auto ddeta = [&](const Field& f) {
                        return 0.5 * (f(i, j + 1) - f(i, j - 1));
                    };
                    const double xi_x = met_v.xi_x(i, j);
                    const double xi_y = met_v.xi_y(i, j);
                    const double eta_x = met_v.eta_x(i, j);
                    const double eta_y = met_v.eta_y(i, j);
                    auto gradx = [&](const Field& f) {
                        return xi_x * ddxi(f) + eta_x * ddeta(f);
                    };
                    auto grady = [&](const Field& f) {
                        return xi_y * ddxi(f) + eta_y * ddeta(f);
                    };

                    const double ux = gradx(u), uy = grady(u);
                    const double vx = gradx(v), vy = grady(v);
                    const double Tx = gradx(T), Ty = grady(T);

                    for (int s = 0; s < ci.ns; ++s) {
                        Y[s] = Ys[s](i, j);
                        X[s] = Xs_[s](i, j);
                        gx[s] = gradx(Xs_[s]);
                        gy[s] = grady(Xs_[s]);
                        hs[s] = thermo::h_species(T(i, j), s, mix);
                    }

                    ThermoState st;
                    st.rho = rho(i, j);
                    st.T = T(i, j);
                    st.Y = Y;
                    st.X = X;
                    transport(st, mix);

                    const double div = ux + vy;
                    const double txx = st.mu * (2.0 * ux - (2.0 / 3.0) * div);
                    const double tyy = st.mu * (2.0 * vy - (2.0 / 3.0) * div);
                    const double txy = st.mu * (uy + vx);

                    // Species diffusive mass fluxes with zero net flux.
                    const double wbar = thermo::mean_molar_mass(Y, mix);
                    double ucx = 0.0, ucy = 0.0;
                    for (int s = 0; s < ci.ns; ++s) {
                        ucx += (mix.species[s].W / wbar) * st.D[s] * gx[s];
                        ucy += (mix.species[s].W / wbar) * st.D[s] * gy[s];
                    }
                    double ex = st.lambda * Tx, ey = st.lambda * Ty;
                    SpeciesArray jsx, jsy;
                    for (int s = 0; s < ci.ns; ++s) {
                        jsx[s] = st.rho * ((mix.species[s].W / wbar) * st.D[s] *
                                               gx[s] -
                                           Y[s] * ucx);
                        jsy[s] = st.rho * ((mix.species[s].W / wbar) * st.D[s] *
                                               gy[s] -
                                           Y[s] * ucy);
                        ex += jsx[s] * hs[s];
                        ey += jsy[s] * hs[s];
                    }

                    ConsVec Fd{}, Gd{};
                    for (int s = 0; s < ci.ns; ++s) {
                        Fd[s] = jsx[s];
                        Gd[s] = jsy[s];
                    }
                    Fd[ci.mx()] = txx;
                    Fd[ci.my()] = txy;
                    Fd[ci.en()] = u(i, j) * txx + v(i, j) * txy + ex;
                    Gd[ci.mx()] = txy;
                    Gd[ci.my()] = tyy;
                    Gd[ci.en()] = u(i, j) * txy + v(i, j) * tyy + ey;

                    for (int cc = 0; cc < nc; ++cc) {
                        Fv_[cc](i, j) = met_v.m_xi_x(i, j) * Fd[cc] +
                                        met_v.m_xi_y(i, j) * Gd[cc];
                        Gv_[cc](i, j) = met_v.m_eta_x(i, j) * Fd[cc] +
                                        met_v.m_eta_y(i, j) * Gd[cc];
                    }
                }
            }
        });

        team().run(0, mesh.ny, [&](int jb, int je) {
            for (int j = jb; j < je; ++j)
                for (int i = 0; i < mesh.nx; ++i)
                    for (int cc = 0; cc < nc; ++cc) {
                        dVx_[cc](i, j) =
                            0.5 * (Fv_[cc](i + 1, j) - Fv_[cc](i - 1, j));
                        dVy_[cc](i, j) =
                            0.5 * (Gv_[cc](i, j + 1) - Gv_[cc](i, j - 1));
                    }
        });
    }

    // ------------------------------------------------------------------
    // LODI non-reflecting outflow (right edge)
    // ------------------------------------------------------------------

    /// Replaces the normal-direction inviscid term on the outflow column with
    /// the locally-one-dimensional characteristic form with pressure
    /// relaxation toward p_target.
    void lodi_outflow_override() {
        const CompIndex ci{mix.ns()};
        const int i = mesh.nx - 1;
        const EdgeSpec& es = bc.right;
        for (int j = 0; j < mesh.ny; ++j) {
            const double xi_x = met_v.xi_x(i, j);
            const double xi_y = met_v.xi_y(i, j);
            const double sn = std::hypot(xi_x, xi_y);
            const double n1 = xi_x / sn, n2 = xi_y / sn;

            auto ddn = [&](const Field& f) { // one-sided d/dn, 2nd order
                return sn * 0.5 *
                       (3.0 * f(i, j) - 4.0 * f(i - 1, j) + f(i - 2, j));
            };
            const double rr = rho(i, j), cc0 = c(i, j), pp = p(i, j);
            const double un = n1 * u(i, j) + n2 * v(i, j);
            const double ut = -n2 * u(i, j) + n1 * v(i, j);
            const double M = std::min(std::abs(un) / cc0, 0.99);

            const double drdn = ddn(rho);
            const double dpdn = ddn(p);
            double dundn = n1 * ddn(u) + n2 * ddn(v);
            double dutdn = -n2 * ddn(u) + n1 * ddn(v);

            const double K = es.sigma_out * cc0 * (1.0 - M * M) / mesh.lx;
            const double L1 = K * (pp - es.p_target);
            const double out = un > 0.0 ? un : 0.0;
            const double L2 = out * (cc0 * cc0 * drdn - dpdn);
            const double L3 = out * dutdn;
            const double L5 = (un + cc0) * (dpdn + rr * cc0 * dundn);

            const double drdt = -(L2 + 0.5 * (L5 + L1)) / (cc0 * cc0);
            const double dundt = -(L5 - L1) / (2.0 * rr * cc0);
            const double dutdt = -L3;
            const double dpdt = -0.5 * (L5 + L1);

            SpeciesArray Y, dYdt;
            double sumRdY = 0.0;
            for (int s = 0; s < ci.ns; ++s) {
                Y[s] = Ys[s](i, j);
                dYdt[s] = -out * ddn(Ys[s]);
                sumRdY += (mix.R / mix.species[s].W) * dYdt[s];
            }
            const double rbar = thermo::r_specific(Y, mix);
            const double Tt = T(i, j);
            const double dTdt = Tt * (dpdt / pp - drdt / rr - sumRdY / rbar);

            const double dudt = n1 * dundt - n2 * dutdt;
            const double dvdt = n2 * dundt + n1 * dutdt;
            const double k = 0.5 * (u(i, j) * u(i, j) + v(i, j) * v(i, j));
            const double e = thermo::e_mass(Tt, Y, mix);
            const double cv = thermo::cv_mass(Tt, Y, mix);
            double sum_es_dY = 0.0;
            for (int s = 0; s < ci.ns; ++s) {
                const double esn = thermo::h_species(Tt, s, mix) -
                                   (mix.R / mix.species[s].W) * Tt;
                sum_es_dY += esn * dYdt[s];
            }

            ConsVec dU{};
            for (int s = 0; s < ci.ns; ++s)
                dU[s] = Y[s] * drdt + rr * dYdt[s];
            dU[ci.mx()] = u(i, j) * drdt + rr * dudt;
            dU[ci.my()] = v(i, j) * drdt + rr * dvdt;
            dU[ci.en()] = (e + k) * drdt + rr * cv * dTdt + rr * sum_es_dY +
                          rr * (u(i, j) * dudt + v(i, j) * dvdt);

            const double invJ = 1.0 / met.jac(i, j);
            for (int comp = 0; comp < ci.ncomp(); ++comp)
                dFx_[comp](i, j) = -dU[comp] * invJ;
        }
    }

    // ------------------------------------------------------------------
    // Stage plumbing
    // ------------------------------------------------------------------

    void copy_interior(const FieldSet& a, FieldSet& b) {
        for (int cc = 0; cc < a.ncomp(); ++cc) b[cc].raw() = a[cc].raw();
    }

    /// dst <- base + s * rhs on the interior.
    void axpy_interior(const FieldSet& base, double s, const FieldSet& r,
                       FieldSet& dst) {
        team().run(0, mesh.ny, [&](int jb, int je) {
            for (int cc = 0; cc < base.ncomp(); ++cc)
                for (int j = jb; j < je; ++j)
                    for (int i = 0; i < mesh.nx; ++i)
                        dst[cc](i, j) = base[cc](i, j) + s * r[cc](i, j);
        });
    }

    /// dst <- base + w * ((dst - base) + s * rhs) on the interior.
    void blend_interior(const FieldSet& base, double w, double s,
                        const FieldSet& r, FieldSet& dst) {
        team().run(0, mesh.ny, [&](int jb, int je) {
            for (int cc = 0; cc < base.ncomp(); ++cc)
                for (int j = jb; j < je; ++j)
                    for (int i = 0; i < mesh.nx; ++i) {
                        const double b = base[cc](i, j);
                        dst[cc](i, j) =
                            b + w * ((dst[cc](i, j) - b) + s * r[cc](i, j));
                    }
        });
    }

    /// Clips negative species partial densities (magnitude recorded),
    /// validates finiteness/positivity, then refreshes ghosts + primitives
    /// for the next stage or output.
    void post_stage(int stage) {
        const CompIndex ci{mix.ns()};
        double clip = 0.0;
        for (int j = 0; j < mesh.ny; ++j) {
            for (int i = 0; i < mesh.nx; ++i) {
                double rsum = 0.0;
                for (int s = 0; s < ci.ns; ++s) {
                    double& us = Ut[s](i, j);
                    if (us < 0.0) {
                        clip = std::max(clip, -us * met.jac(i, j));
                        us = 0.0;
                    }
                    rsum += us;
                }
                if (!(rsum > 0.0))
                    throw StepFailure("non-positive density", stage, i, j);
                for (int cc = 0; cc < ci.ncomp(); ++cc)
                    if (!std::isfinite(Ut[cc](i, j)))
                        throw StepFailure("non-finite state", stage, i, j);
            }
        }
        last_clip = stage == 1 ? clip : std::max(last_clip, clip);
        if (stage < 3) prepare_stage(stage + 1);
    }

    FieldSet dFx_, dGy_, Fv_, Gv_, dVx_, dVy_, Xs_, U0_, rhs_;
    std::unique_ptr<ThreadTeam> team_;
};

} // namespace ignis

#endif
