// Tests for the type-A central sphere.  The two-center configuration
// (-1, 1) is the main oracle: V = 1/(1 - z^2), the chart metric is the unit
// round sphere, w = sqrt((1 - z)/(1 + z)) e^{i theta}, kappa = 1, area
// 4*pi.  Everything else is checked against closed forms, sign counts, or
// finite differences of the sampled quantities themselves.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ale/ak_sphere.hpp>
#include <ale/geom.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

using ale::AkSample;
using ale::ModuliA;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kEps = 2.220446049250313e-16;

// 2l roots in [lo, hi]: one per equal cell, jittered by up to a fifth of
// the cell, so the ordering and a gap of at least 0.6 cells are guaranteed
// without rejection sampling.
std::vector<double> jittered_roots(std::mt19937_64& rng, int ell, double lo,
                                   double hi) {
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    const double cell = (hi - lo) / (2.0 * ell);
    std::vector<double> r;
    for (int i = 0; i < 2 * ell; ++i) {
        r.push_back(lo + (i + 0.5 + jitter(rng)) * cell);
    }
    return r;
}

// Point of R^3 at distance at least `clearance` from every center, so the
// finite-difference bounds below hold.
std::array<double, 3> off_axis_point(std::mt19937_64& rng, const ModuliA& m,
                                     double clearance) {
    std::uniform_real_distribution<double> along(m.roots().front() - 1.5,
                                                 m.roots().back() + 1.5);
    std::uniform_real_distribution<double> across(-2.0, 2.0);
    for (;;) {
        const std::array<double, 3> x = {along(rng), across(rng), across(rng)};
        bool clear = true;
        for (double a : m.roots()) {
            const double d = x[0] - a;
            if (std::sqrt(d * d + x[1] * x[1] + x[2] * x[2]) < clearance) {
                clear = false;
                break;
            }
        }
        if (clear) return x;
    }
}

double fd_laplacian(const ModuliA& m, const std::array<double, 3>& x,
                    double h) {
    const double center = ale::potential(m, x);
    double lap = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        std::array<double, 3> xp = x;
        std::array<double, 3> xm = x;
        xp[axis] += h;
        xm[axis] -= h;
        lap += (ale::potential(m, xp) - 2.0 * center + ale::potential(m, xm)) /
               (h * h);
    }
    return lap;
}

}  // namespace

TEST_CASE("moduli are centered on ingestion and validated") {
    const ModuliA m({1.0, 2.0});
    CHECK(m.ell() == 1);
    CHECK(m.shift() == 1.5);
    CHECK(m.roots() == std::vector<double>{-0.5, 0.5});
    CHECK(m.original_roots() == std::vector<double>{1.0, 2.0});
    CHECK(m.central_low() == -0.5);
    CHECK(m.central_high() == 0.5);

    const ModuliA big({-3.0, -1.0, 1.0, 3.0});
    CHECK(big.ell() == 2);
    CHECK(big.shift() == 0.0);
    CHECK(big.central_width() == 2.0);

    CHECK_THROWS_AS(ModuliA({}), std::invalid_argument);
    CHECK_THROWS_AS(ModuliA({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModuliA({0.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModuliA({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModuliA({2.0, 1.0}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ModuliA({0.0, nan}), std::invalid_argument);
}

TEST_CASE("potential sums the flat-model term of each center") {
    const ModuliA m({-1.0, 1.0});
    CHECK(ale::potential(m, 0.0) == 1.0);

    // Each center contributes 1/(2r); reproduce the sum by hand.
    const std::array<double, 3> x = {0.3, 0.4, 0.0};
    const double r1 = std::sqrt(1.3 * 1.3 + 0.4 * 0.4);
    const double r2 = std::sqrt(0.7 * 0.7 + 0.4 * 0.4);
    CHECK(ale::potential(m, x) == 1.0 / (2.0 * r1) + 1.0 / (2.0 * r2));

    // Axial and spatial evaluations agree on the axis.
    CHECK(ale::potential(m, {0.25, 0.0, 0.0}) ==
          doctest::Approx(ale::potential(m, 0.25)).epsilon(1e-15));

    CHECK_THROWS_AS(ale::potential(m, 1.0), std::domain_error);
    CHECK_THROWS_AS(ale::potential(m, {-1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("potential is harmonic off the centers") {
    // Step 1e-3 with clearance 0.8: the quartic-derivative bound for 1/r
    // puts the truncation near 3e-5 |V| and rounding near 1e-9 |V|, safely
    // under the 1e-4 |V| tolerance.
    std::mt19937_64 rng(0xA11A51DE);
    for (int trial = 0; trial < 100; ++trial) {
        const int ell = 1 + trial % 3;
        const ModuliA m(jittered_roots(rng, ell, -2.5, 2.5));
        const auto x = off_axis_point(rng, m, 0.8);
        const double v = ale::potential(m, x);
        CHECK(v > 0.0);
        CHECK(std::abs(fd_laplacian(m, x, 1e-3)) <= 1e-4 * v);
    }
}

TEST_CASE("lift function counts signs on the axis") {
    const ModuliA m({-3.0, -1.0, 1.0, 3.0});
    // Central interval: exactly zero, no tolerance.
    CHECK(ale::lift_function(m, -0.999) == 0.0);
    CHECK(ale::lift_function(m, 0.0) == 0.0);
    CHECK(ale::lift_function(m, 0.9) == 0.0);
    // Outside all centers: +-2l; between a_1 and a_2: -2.
    CHECK(ale::lift_function(m, 4.0) == 4.0);
    CHECK(ale::lift_function(m, -5.0) == -4.0);
    CHECK(ale::lift_function(m, -2.0) == -2.0);
    // The constant shifts the count.
    CHECK(ale::lift_function(m, 0.5, 0.25) == 0.25);
    CHECK_THROWS_AS(ale::lift_function(m, 1.0), std::domain_error);

    // Equidistant off-axis point of the two-center configuration: the two
    // signed terms cancel exactly.
    const ModuliA two({-1.0, 1.0});
    CHECK(ale::lift_function(two, {0.0, 0.5, 0.0}) == 0.0);
    CHECK_THROWS_AS(ale::lift_function(two, {1.0, 0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("lift differential is built from the potential partials") {
    // Step 1e-5 with clearance 0.8: truncation ~5e-10, rounding ~1e-10, so
    // 1e-8 is a comfortable ceiling for the identity residual.
    std::mt19937_64 rng(0x11F7D1FF);
    const ModuliA fixed({-1.0, 1.0});
    CHECK(ale::lift_gradient_residual(fixed, {0.3, 0.7, -0.2}, 1e-5) <= 1e-8);
    for (int trial = 0; trial < 50; ++trial) {
        const int ell = 1 + trial % 3;
        const ModuliA m(jittered_roots(rng, ell, -2.0, 2.0));
        const auto x = off_axis_point(rng, m, 0.8);
        CHECK(ale::lift_gradient_residual(m, x, 1e-5) <= 1e-8);
    }
    CHECK_THROWS_AS(ale::lift_gradient_residual(fixed, {0.0, 1.0, 0.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("morse function is constant on the central sphere") {
    const ModuliA two({-1.0, 1.0});
    CHECK(ale::morse_central_value(two) == 2.0);
    CHECK(ale::morse_function(two, 0.0) == 2.0);
    CHECK(ale::morse_function(two, 0.77) ==
          doctest::Approx(2.0).epsilon(1e-15));

    const ModuliA four({-3.0, -1.0, 1.0, 3.0});
    CHECK(ale::morse_central_value(four) == 8.0);
    CHECK(ale::morse_function(four, 0.25) ==
          doctest::Approx(8.0).epsilon(1e-15));

    // Off the axis f only grows: |x - a| >= |x_1 - a| term by term.
    std::mt19937_64 rng(0x30051EAF);
    std::uniform_real_distribution<double> d(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::array<double, 3> x = {d(rng), d(rng), d(rng)};
        CHECK(ale::morse_function(four, x) >=
              ale::morse_function(four, x[0]));
    }
}

TEST_CASE("morse increments measure areas through the adjacency weight") {
    const ModuliA m({-3.0, -1.0, 1.0, 3.0});

    const auto central = ale::morse_area_relation(m, 2);
    CHECK(central.weight == 0);
    CHECK(central.two_pi_delta_f == 0.0);
    CHECK(central.area == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(central.residual == 0.0);

    // f(3) = 12, f(1) = 8: increment 4, weight 2, area 4*pi, all exact in
    // this integer configuration.
    const auto right = ale::morse_area_relation(m, 3);
    CHECK(right.weight == 2);
    CHECK(right.two_pi_delta_f == doctest::Approx(8.0 * kPi).epsilon(1e-15));
    CHECK(right.residual == 0.0);

    const auto left = ale::morse_area_relation(m, 1);
    CHECK(left.weight == -2);
    CHECK(left.two_pi_delta_f == doctest::Approx(-8.0 * kPi).epsilon(1e-15));
    CHECK(left.residual == 0.0);

    CHECK_THROWS_AS(ale::morse_area_relation(m, 0), std::out_of_range);
    CHECK_THROWS_AS(ale::morse_area_relation(m, 4), std::out_of_range);

    std::mt19937_64 rng(0xFACEA5EA);
    for (int trial = 0; trial < 30; ++trial) {
        const int ell = 1 + trial % 4;
        const ModuliA r(jittered_roots(rng, ell, -3.0, 3.0));
        for (int i = 1; i <= 2 * ell - 1; ++i) {
            const auto rel = ale::morse_area_relation(r, i);
            const double scale = std::max(
                1.0, std::abs(rel.two_pi_delta_f) +
                         std::abs(rel.weight) * rel.area);
            CHECK(std::abs(rel.residual) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("two-center sphere is the unit round sphere") {
    const ModuliA m({-1.0, 1.0});
    for (const double z : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
        const AkSample s = ale::sphere_metric(m, z, 0.7);
        const double v = 1.0 / (1.0 - z * z);
        CHECK(s.V == doctest::Approx(v).epsilon(1e-14));
        CHECK(s.g_zz == s.V);
        CHECK(s.g_tt == 1.0 / s.V);
        // A value times its rounded reciprocal is within 1 ulp of 1.
        CHECK(std::abs(s.g_zz * s.g_tt - 1.0) <= 4.0 * kEps);
        CHECK(s.kappa == doctest::Approx(1.0).epsilon(1e-6));

        const std::complex<double> want =
            std::polar(std::sqrt((1.0 - z) / (1.0 + z)), 0.7);
        CHECK(std::abs(s.w - want) <= 1e-14 * std::abs(want));
        CHECK(s.dw_dz == -s.V * s.w);
        CHECK(s.dw_dtheta == std::complex<double>(0.0, 1.0) * s.w);
    }

    // |w| = 1 on the equator, and theta = 0 gives a real w.
    CHECK(std::abs(ale::sphere_metric(m, 0.0, 0.3).w) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ale::sphere_metric(m, 0.0, 0.0).w == std::complex<double>(1.0, 0.0));
}

TEST_CASE("sphere chart enforces the interval margin") {
    const ModuliA m({-1.0, 1.0});  // margin 2e-6
    CHECK_THROWS_AS(ale::sphere_metric(m, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ale::sphere_metric(m, -1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ale::sphere_metric(m, 1.0 - 1e-9, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(ale::sphere_metric(m, 1.5, 0.0), std::domain_error);
    CHECK_NOTHROW(ale::sphere_metric(m, 1.0 - 3e-6, 0.0));
    CHECK_NOTHROW(ale::sphere_metric(m, -1.0 + 3e-6, 0.0));
}

TEST_CASE("closed-form partials match finite differences of w") {
    std::mt19937_64 rng(0xD1FF5EED);
    std::uniform_real_distribution<double> th(0.0, 2.0 * kPi);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        const int ell = 1 + trial % 4;
        const ModuliA m(jittered_roots(rng, ell, -2.0, 2.0));
        const double w0 = m.central_width();
        std::uniform_real_distribution<double> zs(m.central_low() + 0.2 * w0,
                                                  m.central_high() - 0.2 * w0);
        for (int k = 0; k < 5; ++k) {
            const double z = zs(rng);
            const double t = th(rng);
            for (const bool alf : {false, true}) {
                const auto at = [&](double zz, double tt) {
                    return alf ? ale::alf_chart(m, zz, tt)
                               : ale::sphere_metric(m, zz, tt);
                };
                const AkSample s = at(z, t);
                const std::complex<double> dz =
                    (at(z + h, t).w - at(z - h, t).w) / (2.0 * h);
                const std::complex<double> dt =
                    (at(z, t + h).w - at(z, t - h).w) / (2.0 * h);
                CHECK(std::abs(dz - s.dw_dz) <= 1e-6 * std::abs(s.dw_dz));
                CHECK(std::abs(dt - s.dw_dtheta) <=
                      1e-6 * std::abs(s.dw_dtheta));
            }
        }
    }
}

TEST_CASE("metric reconstruction from the conformal coordinate") {
    std::mt19937_64 rng(0x5EED5A1E);
    for (int trial = 0; trial < 20; ++trial) {
        const int ell = 1 + trial % 4;
        const ModuliA m(jittered_roots(rng, ell, -3.0, 3.0));
        const double lo = m.central_low();
        const double w0 = m.central_width();
        for (int j = 0; j < 50; ++j) {
            const double z = lo + (j + 0.5) / 50.0 * w0;
            const double t = 0.13 * j;

            const AkSample s = ale::sphere_metric(m, z, t);
            const ale::Metric2 g =
                ale::metric_from_omega_w(1.0, s.dw_dz, s.dw_dtheta);
            CHECK(std::abs(g.g_pp - s.g_zz) <= 1e-10 * s.g_zz);
            CHECK(std::abs(g.g_tt - s.g_tt) <= 1e-10 * s.g_tt);
            CHECK(std::abs(g.g_pt) <= 1e-10 * s.g_zz);

            const AkSample a = ale::alf_chart(m, z, t);
            CHECK(a.g_zz == 1.0 + a.V);
            const ale::Metric2 ga =
                ale::metric_from_omega_w(1.0, a.dw_dz, a.dw_dtheta);
            CHECK(std::abs(ga.g_pp - a.g_zz) <= 1e-10 * a.g_zz);
            CHECK(std::abs(ga.g_tt - a.g_tt) <= 1e-10 * a.g_tt);
            CHECK(std::abs(ga.g_pt) <= 1e-10 * a.g_zz);
        }
    }
}

TEST_CASE("symplectic areas are interval lengths") {
    const ModuliA two({-1.0, 1.0});
    CHECK(ale::symplectic_area(two, 1) == doctest::Approx(4.0 * kPi));
    CHECK(ale::symplectic_area_quadrature(two, 1, 2000) ==
          doctest::Approx(4.0 * kPi).epsilon(1e-12));

    const ModuliA four({-3.0, -1.0, 1.0, 3.0});
    CHECK(ale::symplectic_area(four, 2) ==
          doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(ale::symplectic_area(four, 1) ==
          doctest::Approx(4.0 * kPi).epsilon(1e-15));
    for (int i = 1; i <= 3; ++i) {
        const double closed = ale::symplectic_area(four, i);
        const double quad = ale::symplectic_area_quadrature(four, i, 1500);
        CHECK(std::abs(quad - closed) <= 1e-9 * closed);
    }

    CHECK_THROWS_AS(ale::symplectic_area(four, 0), std::out_of_range);
    CHECK_THROWS_AS(ale::symplectic_area(four, 4), std::out_of_range);
    CHECK_THROWS_AS(ale::symplectic_area_quadrature(four, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("total curvature of the central sphere is 4 pi") {
    const ModuliA two({-1.0, 1.0});
    const auto r2 = ale::total_curvature(two, 400);
    CHECK(std::abs(r2.total - 4.0 * kPi) <= 1e-3 * 4.0 * kPi);
    CHECK(r2.error_estimate < 1e-2);

    const ModuliA four({-3.0, -1.0, 1.0, 3.0});
    const auto r4 = ale::total_curvature(four, 400);
    CHECK(std::abs(r4.total - 4.0 * kPi) <= 1e-3 * 4.0 * kPi);

    std::mt19937_64 rng(0x6B0BB1E5);
    const ModuliA r(jittered_roots(rng, 3, -2.0, 2.0));
    const auto rr = ale::total_curvature(r, 400);
    CHECK(std::abs(rr.total - 4.0 * kPi) <= 1e-3 * 4.0 * kPi);
}

TEST_CASE("twistor lines satisfy the surface equation") {
    const ModuliA m({-1.0, 1.0});
    const std::complex<double> i(0.0, 1.0);
    // |x|^2 = 1 = (-1)(0 - 1)(0 + 1); the residual is not just small but
    // identically zero: both sides reduce to the same product.
    const std::vector<std::complex<double>> us = {
        {0.0, 0.0}, {1.0, 0.0}, i, {2.0, 0.0}, {1.0, 1.0}};
    CHECK(ale::twistor_line_check(m, {1.0, 0.0}, 0.0, us) == 0.0);

    CHECK_THROWS_AS(ale::twistor_line_check(m, {1.01, 0.0}, 0.0, us),
                    std::invalid_argument);

    std::mt19937_64 rng(0x7715708C);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> uc(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int ell = 1 + trial % 4;
        const ModuliA r(jittered_roots(rng, ell, -1.6, 1.6));
        const double w0 = r.central_width();
        std::uniform_real_distribution<double> zs(
            r.central_low() + 0.05 * w0, r.central_high() - 0.05 * w0);
        const double z = zs(rng);
        double prod = 1.0;
        for (double a : r.roots()) prod *= z - a;
        const double sign = ell % 2 == 0 ? 1.0 : -1.0;
        const std::complex<double> x =
            std::polar(std::sqrt(sign * prod), phase(rng));
        std::vector<std::complex<double>> u = us;
        u.emplace_back(uc(rng), uc(rng));
        u.emplace_back(uc(rng), uc(rng));
        CHECK(ale::twistor_line_check(r, x, z, u) <= 1e-10);
    }
}

TEST_CASE("alf chart shifts the potential by one") {
    const ModuliA m({-1.0, 1.0});
    const AkSample a = ale::alf_chart(m, 0.0, 0.9);
    CHECK(a.V == 1.0);
    CHECK(a.g_zz == 2.0);
    CHECK(a.g_tt == 0.5);
    // exp(-0) = 1, so the conformal coordinate agrees with the sphere one.
    CHECK(a.w == ale::sphere_metric(m, 0.0, 0.9).w);
    CHECK(a.dw_dz == -2.0 * a.w);
    CHECK(a.dw_dtheta == std::complex<double>(0.0, 1.0) * a.w);
    CHECK(std::isfinite(a.kappa));

    CHECK_THROWS_AS(ale::alf_chart(m, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ale::alf_chart(m, -1.0 + 1e-9, 0.0), std::domain_error);
}

TEST_CASE("alf transformation preserves the surface coordinates' product") {
    std::mt19937_64 rng(0xA1FA1FA0);
    std::uniform_real_distribution<double> th(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 40; ++trial) {
        const int ell = 1 + trial % 4;
        const ModuliA m(jittered_roots(rng, ell, -1.8, 1.8));
        const double w0 = m.central_width();
        std::uniform_real_distribution<double> zs(
            m.central_low() + 0.01 * w0, m.central_high() - 0.01 * w0);
        // One exponential, applied and divided out: the defect is a couple
        // of rounding steps, held to 4 ulp.
        CHECK(ale::alf_invariance_defect(m, zs(rng), th(rng)) <= 4.0 * kEps);
    }
    const ModuliA m({-1.0, 1.0});
    CHECK(ale::alf_invariance_defect(m, 0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(ale::alf_invariance_defect(m, 1.0, 0.0),
                    std::domain_error);
}
