#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ignis/flux.hpp"
#include "ignis/state.hpp"
#include "ignis/thermo.hpp"

using namespace ignis;

namespace {
const MixtureModel& mixture() {
    static MixtureModel mix = load_mixture_file(IGNIS_DATA_DIR "/ch4_o2.mix");
    return mix;
}

ConsVec random_state(std::mt19937& rng, const MixtureModel& mix,
                     double mach_scale) {
    std::uniform_real_distribution<double> uy(0.05, 1.0);
    std::uniform_real_distribution<double> uT(300.0, 2500.0);
    std::uniform_real_distribution<double> ur(0.2, 3.0);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    PrimPoint pt;
    pt.rho = ur(rng);
    pt.T = uT(rng);
    double sum = 0.0;
    for (int s = 0; s < mix.ns(); ++s) sum += (pt.Y[s] = uy(rng));
    for (int s = 0; s < mix.ns(); ++s) pt.Y[s] /= sum;
    const double c = thermo::sound_speed(pt.T, pt.Y, mix);
    pt.u = mach_scale * c * uu(rng);
    pt.v = mach_scale * c * uu(rng);
    return conservative_from_primitives(pt, mix);
}
} // namespace

TEST_CASE("splitting identity F+ + F- = F") {
    const CompIndex ci{4};
    ConsVec U{}, F{}, Fp{}, Fm{};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int c = 0; c < ci.ncomp(); ++c) {
        U[c] = u(rng);
        F[c] = u(rng);
    }
    split_flux_llf(U, F, 1.7, ci.ncomp(), Fp, Fm);
    for (int c = 0; c < ci.ncomp(); ++c) {
        const double scale = std::abs(F[c]) + 1.7 * std::abs(U[c]);
        CHECK(std::abs(Fp[c] + Fm[c] - F[c]) <= 1e-15 * scale);
    }
}

TEST_CASE("zero state splits to zero fluxes") {
    const CompIndex ci{4};
    ConsVec U{}, F{}, Fp{}, Fm{};
    split_flux_llf(U, F, 2.0, ci.ncomp(), Fp, Fm);
    for (int c = 0; c < ci.ncomp(); ++c) {
        CHECK(Fp[c] == 0.0);
        CHECK(Fm[c] == 0.0);
    }
}

TEST_CASE("non-finite wavespeed is rejected") {
    const CompIndex ci{4};
    ConsVec U{}, F{}, Fp{}, Fm{};
    CHECK_THROWS_AS(split_flux_llf(U, F,
                                   std::numeric_limits<double>::quiet_NaN(),
                                   ci.ncomp(), Fp, Fm),
                    NumericsError);
}

TEST_CASE("eigen projection and assembly invert each other") {
    const auto& mix = mixture();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const ConsVec U = random_state(rng, mix, 0.8);
        const PrimPoint pt = primitives_from_conservative(U.data(), mix);
        const EigenSystem es =
            EigenSystem::at_state(pt.Y, pt.T, pt.u, pt.v, 0.6, -1.1, mix);
        const int n = es.nfields();
        for (int b = 0; b < n; ++b) {
            double q[kMaxComp] = {0.0}, w[kMaxComp], q2[kMaxComp];
            q[b] = 1.0;
            es.project(q, w);
            es.assemble(w, q2);
            for (int c = 0; c < n; ++c)
                CHECK(q2[c] == Catch::Approx(q[c]).margin(1e-11));
        }
    }
}

TEST_CASE("eigen decomposition reproduces the flux jacobian") {
    const auto& mix = mixture();
    const CompIndex ci{mix.ns()};
    std::mt19937 rng(17);
    const double m1 = 0.4, m2 = 1.3;
    for (int trial = 0; trial < 20; ++trial) {
        const ConsVec U = random_state(rng, mix, 0.6);
        const PrimPoint pt = primitives_from_conservative(U.data(), mix);
        const EigenSystem es =
            EigenSystem::at_state(pt.Y, pt.T, pt.u, pt.v, m1, m2, mix);
        auto flux_of = [&](const ConsVec& Us) {
            const PrimPoint pp = primitives_from_conservative(Us.data(), mix);
            ConsVec Ft{};
            mapped_flux(Us.data(), pp.p, m1, m2, ci, Ft.data());
            return Ft;
        };
        const double scale = std::abs(U[ci.en()]);
        for (int b = 0; b < ci.ncomp(); ++b) {
            const double eps = 1e-7 * scale;
            ConsVec Up = U, Um = U;
            Up[b] += eps;
            Um[b] -= eps;
            const ConsVec Fp = flux_of(Up), Fm = flux_of(Um);
            // A dU via R Lambda L dU
            double dU[kMaxComp] = {0.0}, w[kMaxComp], Aq[kMaxComp];
            dU[b] = 1.0;
            es.project(dU, w);
            for (int f = 0; f < es.nfields(); ++f) {
                const double lam =
                    es.field_speed(f, es.un, es.c); // at the state itself
                w[f] *= f == 0 ? es.s * (es.un - es.c)
                        : f == es.nfields() - 1 ? es.s * (es.un + es.c)
                                                : es.s * es.un;
                (void)lam;
            }
            es.assemble(w, Aq);
            for (int c = 0; c < ci.ncomp(); ++c) {
                const double fd = (Fp[c] - Fm[c]) / (2.0 * eps);
                const double tol =
                    1e-5 * (std::abs(fd) + std::abs(es.s) * (es.c + 1.0)) +
                    1e-8 * scale / (scale / (std::abs(fd) + 1e-30) + 1.0);
                CHECK(std::abs(Aq[c] - fd) <=
                      1e-5 * std::max(1.0, std::abs(fd)) + tol);
            }
        }
    }
}

TEST_CASE("supersonic uniform flow: upwind contribution vanishes") {
    const auto& mix = mixture();
    std::mt19937 rng(23);
    const ConsVec U = random_state(rng, mix, 0.0); // quiescent base
    PrimPoint pt = primitives_from_conservative(U.data(), mix);
    const double c = thermo::sound_speed(pt.T, pt.Y, mix);
    pt.u = 2.0 * c; // supersonic along +x
    pt.v = 0.0;
    const ConsVec Us = conservative_from_primitives(pt, mix);
    const CompIndex ci{mix.ns()};
    const EigenSystem es =
        EigenSystem::at_state(pt.Y, pt.T, pt.u, pt.v, 1.0, 0.0, mix);
    ConsVec Ft{};
    mapped_flux(Us.data(), pt.p, 1.0, 0.0, ci, Ft.data());
    double wf[kMaxComp], wu[kMaxComp];
    es.project(Ft.data(), wf);
    es.project(Us.data(), wu);
    // Every eigenvalue is positive, so per-family minus parts (f - alpha w)/2
    // with alpha = |lambda| vanish for uniform data.
    for (int f = 0; f < es.nfields(); ++f) {
        const double lam = es.field_speed(f, es.un, es.c);
        REQUIRE(lam > 0.0);
        const double minus = 0.5 * (wf[f] - std::abs(lam) * wu[f]);
        CHECK(std::abs(minus) <= 1e-11 * (std::abs(wf[f]) + 1.0));
    }
}
