#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ignis/chemistry.hpp"
#include "ignis/thermo.hpp"

using namespace ignis;

namespace {
const MixtureModel& mixture() {
    static MixtureModel mix = load_mixture_file(IGNIS_DATA_DIR "/ch4_o2.mix");
    return mix;
}
ReactionMechanism mech() {
    return make_one_step_mechanism(mixture(), 2e5, 12000.0, 1.0, 1.0, 300.0);
}

// Element matrix: rows C, H, O; columns CH4, O2, CO2, H2O.
constexpr double kElem[3][4] = {
    {1.0, 0.0, 1.0, 0.0}, {4.0, 0.0, 0.0, 2.0}, {0.0, 2.0, 2.0, 1.0}};
} // namespace

TEST_CASE("missing reactant gives zero rates") {
    const auto& mix = mixture();
    const auto m = mech();
    SpeciesArray Y{}, w{};
    Y[m.i_ox] = 1.0; // no fuel
    source_terms(1.0, 1500.0, Y, mix, m, w);
    for (int s = 0; s < mix.ns(); ++s) CHECK(w[s] == 0.0);
}

TEST_CASE("temperature cutoff suppresses the rate") {
    const auto& mix = mixture();
    const auto m = mech();
    SpeciesArray Y{}, w{};
    Y[m.i_fuel] = 0.5;
    Y[m.i_ox] = 0.5;
    source_terms(1.0, 299.0, Y, mix, m, w);
    for (int s = 0; s < mix.ns(); ++s) CHECK(w[s] == 0.0);
    source_terms(1.0, 301.0, Y, mix, m, w);
    CHECK(w[m.i_fuel] < 0.0);
}

TEST_CASE("stoichiometric rate ratio and mass balance") {
    const auto& mix = mixture();
    const auto m = mech();
    SpeciesArray Y{}, w{};
    Y[m.i_fuel] = 0.3;
    Y[m.i_ox] = 0.6;
    Y[m.i_co2] = 0.05;
    Y[m.i_h2o] = 0.05;
    source_terms(0.8, 1800.0, Y, mix, m, w);
    REQUIRE(w[m.i_fuel] < 0.0);
    CHECK(w[m.i_ox] / w[m.i_fuel] == Catch::Approx(4.0).epsilon(1e-14));
    double sum = 0.0, wmax = 0.0;
    for (int s = 0; s < mix.ns(); ++s) {
        sum += w[s];
        wmax = std::max(wmax, std::abs(w[s]));
    }
    CHECK(std::abs(sum) <= 1e-13 * wmax);
}

TEST_CASE("element totals are conserved over random states") {
    const auto& mix = mixture();
    const auto m = mech();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    std::uniform_real_distribution<double> uT(350.0, 3500.0);
    std::uniform_real_distribution<double> ur(0.05, 4.0);
    for (int trial = 0; trial < 10000; ++trial) {
        SpeciesArray Y{}, w{};
        double sum = 0.0;
        for (int s = 0; s < 4; ++s) sum += (Y[s] = uy(rng) + 1e-6);
        for (int s = 0; s < 4; ++s) Y[s] /= sum;
        source_terms(ur(rng), uT(rng), Y, mix, m, w);
        double wmax = 1e-300, wsum = 0.0;
        for (int s = 0; s < 4; ++s) {
            wsum += w[s];
            wmax = std::max(wmax, std::abs(w[s]));
        }
        CHECK(std::abs(wsum) <= 1e-13 * wmax);
        for (int e = 0; e < 3; ++e) {
            double mol = 0.0, scale = 1e-300;
            for (int s = 0; s < 4; ++s) {
                const double r = kElem[e][s] * w[s] / mix.species[s].W;
                mol += r;
                scale = std::max(scale, std::abs(r));
            }
            CHECK(std::abs(mol) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("rate increases monotonically with temperature") {
    const auto& mix = mixture();
    const auto m = mech();
    SpeciesArray Y{}, w{};
    Y[m.i_fuel] = 0.4;
    Y[m.i_ox] = 0.6;
    double prev = 0.0;
    for (double T = 310.0; T < 4000.0; T *= 1.2) {
        source_terms(1.0, T, Y, mix, m, w);
        const double q = -w[m.i_fuel];
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("mechanism construction validates mass balance") {
    MixtureModel broken = mixture();
    broken.species[0].W = 0.017; // breaks the exact balance
    CHECK_THROWS_AS(make_one_step_mechanism(broken, 1.0, 1.0), ConfigError);
}
