#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ignis/mesh.hpp"
#include "ignis/metrics.hpp"

using namespace ignis;

TEST_CASE("uniform mesh spacing and periodic images") {
    const Mesh m = build_uniform(4, 4, 1.0, 1.0, {0.0, 0.0}, true, true, 1);
    CHECK(m.x(1, 0) - m.x(0, 0) == Catch::Approx(0.25).margin(1e-15));
    CHECK(m.y(0, 2) - m.y(0, 1) == Catch::Approx(0.25).margin(1e-15));
    // Ghost at index -1 is the periodic image of node Nx-1 shifted by -Lx.
    const Mesh m2 = build_uniform(8, 8, 2.0, 1.0, {0.0, 0.0}, true, true, 2);
    CHECK(m2.x(-1, 3) == Catch::Approx(m2.x(7, 3) - 2.0).margin(1e-14));
    CHECK(m2.x(-2, 3) == Catch::Approx(m2.x(6, 3) - 2.0).margin(1e-14));
}

TEST_CASE("degenerate grid sizes are rejected") {
    CHECK_THROWS_AS(build_uniform(1, 8, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(build_uniform(8, 8, -1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(build_uniform(8, 8, 1.0, 0.0), ConfigError);
}

TEST_CASE("apply_skew with beta = 0 is the identity") {
    const Mesh m = build_uniform(12, 12, 10.0, 10.0);
    const Mesh s = apply_skew(m, 0.0);
    for (int j = -m.g; j < m.ny + m.g; ++j)
        for (int i = -m.g; i < m.nx + m.g; ++i) {
            CHECK(s.x(i, j) == m.x(i, j));
            CHECK(s.y(i, j) == m.y(i, j));
        }
}

TEST_CASE("apply_skew moves (L/4, L/4) to 3 L/10 for beta 0.2") {
    // Node layout with h = 1 puts a node exactly at (2.5, 2.5) for L = 10.
    const Mesh m = build_uniform(10, 10, 10.0, 10.0);
    const Mesh s = apply_skew(m, 0.2);
    REQUIRE(m.x(7, 7) == Catch::Approx(2.5).margin(1e-14));
    CHECK(s.x(7, 7) == Catch::Approx(3.0).margin(1e-13));
}

TEST_CASE("apply_skew keeps the x = 0 line fixed in x") {
    const Mesh m = build_uniform(9, 9, 10.0, 10.0);
    const Mesh s = apply_skew(m, 0.2);
    REQUIRE(std::abs(m.x(4, 0)) < 1e-14);
    for (int j = 0; j < 9; ++j) CHECK(std::abs(s.x(4, j)) < 1e-13);
}

TEST_CASE("apply_skew reports grid folding for large beta") {
    const Mesh m = build_uniform(32, 32, 10.0, 10.0);
    CHECK_THROWS_AS(apply_skew(m, 1.5), NumericsError);
}

TEST_CASE("Cartesian metrics: J = 1/h^2 and xi_x = 1/h") {
    const Mesh m = build_uniform(10, 10, 1.0, 1.0); // h = 0.1
    const MetricField mf = compute_metrics(m);
    CHECK(mf.jac(4, 5) == Catch::Approx(100.0).margin(1e-9));
    CHECK(mf.xi_x(4, 5) == Catch::Approx(10.0).margin(1e-10));
    CHECK(std::abs(mf.xi_y(4, 5)) < 1e-12);
    CHECK(std::abs(mf.eta_x(4, 5)) < 1e-12);
    CHECK(mf.eta_y(4, 5) == Catch::Approx(10.0).margin(1e-10));
}

TEST_CASE("discrete metric identity vanishes on uniform grids") {
    const Mesh m = build_uniform(16, 16, 2.0, 3.0);
    const MetricField mf = compute_metrics(m);
    double worst = 0.0;
    for (int j = 2; j < 14; ++j)
        for (int i = 2; i < 14; ++i) {
            const double rx =
                0.5 * (mf.m_xi_x(i + 1, j) - mf.m_xi_x(i - 1, j)) +
                0.5 * (mf.m_eta_x(i, j + 1) - mf.m_eta_x(i, j - 1));
            const double ry =
                0.5 * (mf.m_xi_y(i + 1, j) - mf.m_xi_y(i - 1, j)) +
                0.5 * (mf.m_eta_y(i, j + 1) - mf.m_eta_y(i, j - 1));
            worst = std::max(worst, std::max(std::abs(rx), std::abs(ry)));
        }
    CHECK(worst < 1e-12);
}

namespace {

/// L1 interior error of Central2 metrics against the analytic skew Jacobian.
double metric_l1_error(int n, double beta, MetricMode mode) {
    const Mesh m = apply_skew(build_uniform(n, n, 10.0, 10.0), beta);
    const MetricField d = compute_metrics(m, mode);
    const MetricField a = compute_metrics(m, MetricMode::AnalyticSkew, beta);
    double err = 0.0;
    int cnt = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            err += std::abs(d.m_xi_x(i, j) - a.m_xi_x(i, j));
            err += std::abs(d.m_eta_y(i, j) - a.m_eta_y(i, j));
            err += std::abs(d.jac(i, j) - a.jac(i, j)) /
                   (a.jac(i, j) * a.jac(i, j));
            cnt += 3;
        }
    return err / cnt;
}

} // namespace

TEST_CASE("discrete skew metrics converge to analytic at 2nd order") {
    const double e1 = metric_l1_error(16, 0.2, MetricMode::Central2);
    const double e2 = metric_l1_error(32, 0.2, MetricMode::Central2);
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.9);
}

TEST_CASE("order-6 metrics converge much faster than central") {
    const double e1 = metric_l1_error(16, 0.2, MetricMode::Order6);
    const double e2 = metric_l1_error(32, 0.2, MetricMode::Order6);
    CHECK(e1 / e2 > 30.0); // ~2^6 for smooth maps
    CHECK(e2 < metric_l1_error(32, 0.2, MetricMode::Central2));
}

TEST_CASE("skewed ghosts follow the transform, metrics stay positive") {
    const Mesh s = apply_skew(build_uniform(16, 16, 10.0, 10.0), 0.2);
    // Ghost coordinates evaluate the map at the extended computational point.
    const double xc = s.xi(-2), yc = s.eta(5);
    const double expect = xc * (1.0 + 0.2 * std::sin(2.0 * M_PI * yc / 10.0));
    CHECK(s.x(-2, 5) == Catch::Approx(expect).margin(1e-13));
    const MetricField mf = compute_metrics(s);
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i) CHECK(mf.jac(i, j) > 0.0);
}
