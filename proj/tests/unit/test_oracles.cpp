// Self-checks of the reference implementations against values worked out by
// hand or by a second independent route.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using doctest::Approx;

TEST_CASE("ishigami analytic indices for a=7, b=0.1") {
    const auto idx = oracle::ishigami_analytic(7.0, 0.1);
    CHECK(idx.s1[0] == Approx(0.3139).epsilon(1e-3));
    CHECK(idx.s1[1] == Approx(0.4424).epsilon(1e-3));
    CHECK(idx.s1[2] == Approx(0.0));
    CHECK(idx.st[0] == Approx(0.5576).epsilon(1e-3));
    CHECK(idx.st[1] == Approx(0.4424).epsilon(1e-3));
    CHECK(idx.st[2] == Approx(0.2437).epsilon(1e-3));
}

TEST_CASE("ishigami with b=0 leaves x3 without influence") {
    const auto idx = oracle::ishigami_analytic(7.0, 0.0);
    CHECK(idx.s1[2] == 0.0);
    CHECK(idx.st[2] == 0.0);
    CHECK(idx.s1[0] + idx.s1[1] == Approx(1.0));
}

TEST_CASE("ishigami with a=b=0 reduces to sin x1") {
    const auto idx = oracle::ishigami_analytic(0.0, 0.0);
    CHECK(idx.variance == Approx(0.5));
    CHECK(idx.s1[0] == Approx(1.0));
    CHECK(idx.s1[1] == Approx(0.0));
    CHECK(idx.s1[2] == Approx(0.0));
}

TEST_CASE("ishigami analytic variance agrees with brute-force quadrature") {
    // Midpoint rule on a 60^3 grid; the integrand is smooth and periodic in
    // x1 and x2, so this converges quickly.
    const int n = 60;
    const double a = 7.0;
    const double b = 0.1;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                auto at = [&](int m) { return -std::numbers::pi + 2.0 * std::numbers::pi * (m + 0.5) / n; };
                const double f = oracle::ishigami(at(i), at(j), at(k), a, b);
                sum += f;
                sum_sq += f * f;
            }
        }
    }
    const double count = static_cast<double>(n) * n * n;
    const double var = sum_sq / count - (sum / count) * (sum / count);
    CHECK(var == Approx(oracle::ishigami_analytic(a, b).variance).epsilon(2e-3));
}

TEST_CASE("two-bus voltage: no load returns the source voltage") {
    CHECK(oracle::two_bus_voltage(0, 0, 0.1, 0.05, 1.02) == Approx(1.02));
}

TEST_CASE("two-bus voltage: beyond loadability throws") {
    CHECK_THROWS_AS(oracle::two_bus_voltage(10.0, 0.0, 0.1, 0.1, 1.0), std::domain_error);
}

TEST_CASE("two-bus voltage agrees with the Newton oracle on a single line") {
    // Line 1 carries nothing when bus 2 has no injection.
    const std::complex<double> z(0.039, 0.015);
    const auto v = oracle::newton_three_bus(z, {0.01, 0.01}, {-0.8, -0.2}, {0.0, 0.0});
    CHECK(std::abs(v[1]) == Approx(oracle::two_bus_voltage(0.8, 0.2, z.real(), z.imag(), 1.0)).epsilon(1e-10));
    CHECK(std::abs(v[2]) == Approx(std::abs(v[1])).epsilon(1e-10));
}

TEST_CASE("pipe marching converges to the exponential law") {
    const double t = oracle::pipe_outlet_marching(75, 1.0, 500, 0.4, 10, 4186, 20000);
    CHECK(t == Approx(10 + 65 * std::exp(-0.4 * 500 / 4186.0)).epsilon(1e-9));
    CHECK(t == Approx(71.97).epsilon(1e-4));
}

TEST_CASE("cylinder and sensible heat arithmetic") {
    CHECK(oracle::cylinder_volume_m3(4, 7.9) == Approx(99.274).epsilon(1e-4));
    CHECK(oracle::cylinder_volume_m3(1, 7.9) == Approx(6.2046).epsilon(1e-4));
    CHECK(oracle::cylinder_volume_m3(8, 7.9) == Approx(397.10).epsilon(1e-4));
    CHECK(oracle::sensible_heat_kwh(oracle::cylinder_volume_m3(1, 7.9), 10) == Approx(72.14).epsilon(1e-3));
}

TEST_CASE("heat pump COP arithmetic") {
    CHECK(oracle::heat_pump_cop(0.45, 5, 65) == Approx(0.45 * 338.15 / 60).epsilon(1e-12));
    CHECK(oracle::heat_pump_cop(0.45, 5, 65) == Approx(2.536).epsilon(1e-3));
    CHECK(oracle::heat_pump_cop(0.9, 60, 65) == 8.0);
}

TEST_CASE("star discrepancy of single points") {
    CHECK(oracle::star_discrepancy_2d({{0.5, 0.5}}) == Approx(0.75));
    // The centred 2x2 lattice has discrepancy 7/16 at the box [0,3/4]^2.
    CHECK(oracle::star_discrepancy_2d({{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}}) ==
          Approx(7.0 / 16.0));
}

TEST_CASE("reference sobol points match the published start of the sequence") {
    const auto p = oracle::sobol_2d_reference(8);
    const double expected[8][2] = {{0, 0},         {0.5, 0.5},     {0.75, 0.25},   {0.25, 0.75},
                                   {0.375, 0.375}, {0.875, 0.875}, {0.625, 0.125}, {0.125, 0.625}};
    for (int i = 0; i < 8; ++i) {
        CHECK(p[i][0] == expected[i][0]);
        CHECK(p[i][1] == expected[i][1]);
    }
}

TEST_CASE("brute-force ranks break ties by name") {
    const auto r = oracle::brute_force_ranks({{"b", 1.0}, {"a", 1.0}, {"c", 4.0}});
    CHECK(r.at("c") == 1);
    CHECK(r.at("a") == 2);
    CHECK(r.at("b") == 3);
}

TEST_CASE("oracle report pass flag follows the tolerance") {
    CHECK(oracle::compare("x", {1.0, 2.0}, {1.0, 2.05}, 0.1).pass);
    CHECK_FALSE(oracle::compare("x", {1.0, 2.0}, {1.0, 2.5}, 0.1).pass);
    CHECK_FALSE(oracle::compare("x", {1.0}, {1.0, 2.0}, 0.1).pass);
}
