#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ignis/state.hpp"
#include "ignis/thermo.hpp"

using namespace ignis;

namespace {
const MixtureModel& mixture() {
    static MixtureModel mix = load_mixture_file(IGNIS_DATA_DIR "/ch4_o2.mix");
    return mix;
}
} // namespace

TEST_CASE("mixture file parses with expected species") {
    const auto& mix = mixture();
    REQUIRE(mix.ns() == 4);
    CHECK(mix.index_of("CH4") == 0);
    CHECK(mix.index_of("O2") == 1);
    CHECK(mix.species[1].W == Catch::Approx(0.032));
    CHECK_THROWS_AS(mix.index_of("N2"), ConfigError);
}

TEST_CASE("eos identity normalization") {
    MixtureModel mix = MixtureModel::calorically_perfect(1.4, 1.0, 0.0);
    SpeciesArray Y{};
    Y[0] = 1.0;
    // Single species with W = R = 1: p = rho T.
    CHECK(eos_pressure(1.0, 1.0, Y, mix) == Catch::Approx(1.0));
}

TEST_CASE("eos pure O2 reproduces hand arithmetic") {
    const auto& mix = mixture();
    SpeciesArray Y{};
    Y[mix.index_of("O2")] = 1.0;
    // p = 1.3 * 8.314 * 300 / 0.032 ~ 1.0133e5
    const double p = eos_pressure(1.3, 300.0, Y, mix);
    CHECK(p == Catch::Approx(1.3 * mix.R * 300.0 / 0.032).epsilon(1e-13));
    CHECK(p == Catch::Approx(1.0133e5).epsilon(2e-3));
}

TEST_CASE("eos rejects invalid states") {
    const auto& mix = mixture();
    SpeciesArray Y{};
    Y[0] = 0.7;
    Y[1] = 0.7; // sums to 1.4
    CHECK_THROWS_AS(eos_pressure(1.0, 300.0, Y, mix), StateError);
    Y[1] = 0.3;
    CHECK_THROWS_AS(eos_pressure(-1.0, 300.0, Y, mix), StateError);
    CHECK_THROWS_AS(eos_pressure(1.0, 0.0, Y, mix), StateError);
}

TEST_CASE("cp is continuous across the polynomial break") {
    const auto& mix = mixture();
    for (int s = 0; s < mix.ns(); ++s) {
        const double lo = mix.species[s].cp_over_R(1000.0 - 1e-9);
        const double hi = mix.species[s].cp_over_R(1000.0 + 1e-9);
        CHECK(std::abs(hi - lo) < 1e-6 * std::abs(lo));
        const double hlo = mix.species[s].h_over_R(1000.0 - 1e-9);
        const double hhi = mix.species[s].h_over_R(1000.0 + 1e-9);
        CHECK(std::abs(hhi - hlo) < 1e-6 * std::abs(hlo));
    }
}

TEST_CASE("quiescent calorically perfect state recovers T") {
    MixtureModel mix = MixtureModel::calorically_perfect(1.4, 1.0, 0.0);
    // U from rho = 1, u = 0, p = 1/gamma -> T = p/(rho R) = 1/gamma.
    PrimPoint pt;
    pt.rho = 1.0;
    pt.T = 1.0 / 1.4;
    pt.Y[0] = 1.0;
    const ConsVec U = conservative_from_primitives(pt, mix);
    const PrimPoint back = primitives_from_conservative(U.data(), mix, 1.0);
    CHECK(back.T == Catch::Approx(1.0 / 1.4).epsilon(1e-13));
    CHECK(back.u == 0.0);
    CHECK(back.v == 0.0);
}

TEST_CASE("conservative/primitive round trip on random states") {
    const auto& mix = mixture();
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uT(250.0, 3000.0);
    std::uniform_real_distribution<double> urho(0.05, 5.0);
    std::uniform_real_distribution<double> uu(-300.0, 300.0);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        PrimPoint pt;
        pt.rho = urho(rng);
        pt.T = uT(rng);
        pt.u = uu(rng);
        pt.v = uu(rng);
        double sum = 0.0;
        for (int s = 0; s < mix.ns(); ++s) sum += (pt.Y[s] = uy(rng) + 1e-3);
        for (int s = 0; s < mix.ns(); ++s) pt.Y[s] /= sum;
        const ConsVec U = conservative_from_primitives(pt, mix);
        const PrimPoint back =
            primitives_from_conservative(U.data(), mix, 500.0);
        const ConsVec U2 = conservative_from_primitives(back, mix);
        const CompIndex ci{mix.ns()};
        for (int c = 0; c < ci.ncomp(); ++c) {
            const double scale = std::abs(U[ci.en()]);
            CHECK(std::abs(U2[c] - U[c]) <= 1e-12 * scale);
        }
        CHECK(back.T == Catch::Approx(pt.T).epsilon(1e-10));
    }
}

TEST_CASE("energy below vacuum energy is a state error") {
    const auto& mix = mixture();
    SpeciesArray Y{};
    Y[mix.index_of("O2")] = 1.0;
    const double e_lo = thermo::e_mass(200.0, Y, mix);
    CHECK_THROWS_AS(temperature_from_energy(e_lo - 1e5, Y, mix, 300.0),
                    StateError);
}

TEST_CASE("wilke reduces to the pure species viscosity") {
    const auto& mix = mixture();
    ThermoState st;
    st.rho = 1.0;
    st.T = 350.0;
    st.Y.fill(0.0);
    st.X.fill(0.0);
    st.Y[2] = 1.0;
    st.X[2] = 1.0;
    transport(st, mix);
    const auto& sp = mix.species[2];
    const double mu2 = sp.mu_ref * std::pow(350.0 / sp.t_ref, sp.n_exp);
    CHECK(st.mu == Catch::Approx(mu2).epsilon(1e-13));
}

TEST_CASE("two identical species mix to the species viscosity") {
    // Duplicate O2 under two names: any proportion must return mu_O2.
    MixtureModel mix;
    mix.mode = MixtureModel::Mode::MultiSpecies;
    SpeciesData oa;
    oa.name = "A";
    oa.W = 0.032;
    oa.mu_ref = 1.92e-5;
    oa.t_ref = 273.0;
    oa.n_exp = 0.77;
    ThermoPiece pc;
    pc.t_lo = 100.0;
    pc.t_hi = 6000.0;
    pc.c0 = 3.6;
    oa.pieces.push_back(pc);
    SpeciesData ob = oa;
    ob.name = "B";
    mix.species = {oa, ob};
    ThermoState st;
    st.rho = 1.0;
    st.T = 400.0;
    st.Y[0] = 0.3;
    st.Y[1] = 0.7;
    st.X[0] = 0.3;
    st.X[1] = 0.7;
    transport(st, mix);
    const double mu = oa.mu_ref * std::pow(400.0 / 273.0, 0.77);
    CHECK(st.mu == Catch::Approx(mu).epsilon(1e-12));
}

TEST_CASE("unity Lewis number diffusivity") {
    const auto& mix = mixture(); // Le = 1 default
    ThermoState st;
    st.rho = 0.6;
    st.T = 350.0;
    st.Y.fill(0.25);
    thermo::mole_fractions(st.Y, mix, st.X);
    transport(st, mix);
    const double cp = thermo::cp_mass(350.0, st.Y, mix);
    for (int s = 0; s < mix.ns(); ++s)
        CHECK(st.D[s] == Catch::Approx(st.lambda / (st.rho * cp)).epsilon(1e-13));
}

TEST_CASE("diffusion velocities: zero gradients give zero velocities") {
    const auto& mix = mixture();
    SpeciesArray Y{}, X{}, D{}, g{}, V{};
    Y.fill(0.25);
    thermo::mole_fractions(Y, mix, X);
    D.fill(1e-4);
    g.fill(0.0);
    diffusion_velocities(Y, X, D, g, mix, V);
    for (int s = 0; s < mix.ns(); ++s) CHECK(V[s] == 0.0);
}

TEST_CASE("correction velocity enforces zero net mass flux") {
    const auto& mix = mixture();
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uy(0.02, 1.0);
    std::uniform_real_distribution<double> ug(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        SpeciesArray Y{}, X{}, D{}, g{}, V{};
        double sum = 0.0;
        for (int s = 0; s < mix.ns(); ++s) sum += (Y[s] = uy(rng));
        for (int s = 0; s < mix.ns(); ++s) Y[s] /= sum;
        thermo::mole_fractions(Y, mix, X);
        for (int s = 0; s < mix.ns(); ++s) {
            D[s] = 1e-4 * (1.0 + 0.3 * s);
            g[s] = ug(rng);
        }
        diffusion_velocities(Y, X, D, g, mix, V);
        const double rho = 1.3;
        double net = 0.0, vmax = 0.0;
        for (int s = 0; s < mix.ns(); ++s) {
            net += rho * Y[s] * V[s];
            vmax = std::max(vmax, std::abs(V[s]));
        }
        CHECK(std::abs(net) <= 1e-13 * (rho * vmax + 1e-300));
    }
}

TEST_CASE("binary mixture with opposite gradients is antisymmetric") {
    // Two species with equal W and D and grad X_1 = -grad X_2: the mass
    // fluxes rho Y_s V_s must be equal and opposite by construction; check
    // the hand-solved values.
    MixtureModel mix;
    SpeciesData a;
    a.name = "A";
    a.W = 0.03;
    a.mu_ref = 1e-5;
    a.t_ref = 273;
    a.n_exp = 0.7;
    ThermoPiece pc;
    pc.t_lo = 100;
    pc.t_hi = 5000;
    pc.c0 = 3.5;
    a.pieces.push_back(pc);
    SpeciesData b = a;
    b.name = "B";
    mix.species = {a, b};
    SpeciesArray Y{}, X{}, D{}, g{}, V{};
    Y[0] = 0.3;
    Y[1] = 0.7; // equal W: X = Y
    X[0] = 0.3;
    X[1] = 0.7;
    D[0] = D[1] = 2e-4;
    g[0] = 1.5;
    g[1] = -1.5;
    diffusion_velocities(Y, X, D, g, mix, V);
    const double f0 = Y[0] * V[0];
    const double f1 = Y[1] * V[1];
    CHECK(f0 == Catch::Approx(-f1).epsilon(1e-12));
    // Hand solve: u_c = D (g0 + g1) = 0 here (equal W), so
    // V_s = -D g_s / X_s.
    CHECK(V[0] == Catch::Approx(-2e-4 * 1.5 / 0.3).epsilon(1e-12));
    CHECK(V[1] == Catch::Approx(2e-4 * 1.5 / 0.7).epsilon(1e-12));
}
