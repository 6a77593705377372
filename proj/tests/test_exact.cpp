// Tests for the exact-arithmetic layer: rationals, Gaussian rationals,
// polynomials in one and two variables, and the resolution data built from
// them.  Every numeric oracle in this file was computed by hand (or by an
// independent expansion of a product) before the code under test existed.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ale/poly.hpp>
#include <ale/rational.hpp>
#include <ale/tyurina.hpp>

#include <random>
#include <vector>

using ale::BlowupReport;
using ale::GaussianRational;
using ale::Poly1;
using ale::Poly2;
using ale::Rational;
using ale::TyurinaData;

namespace {

// Small random rationals with denominators bounded away from blow-up so the
// property tests stay fast even at degree 8.
Rational random_rational(std::mt19937_64& rng, bool allow_zero = true) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    for (;;) {
        Rational r(num(rng), den(rng));
        if (allow_zero || !r.is_zero()) return r;
    }
}

GaussianRational random_gaussian(std::mt19937_64& rng, bool allow_zero = true) {
    for (;;) {
        GaussianRational g(random_rational(rng), random_rational(rng));
        if (allow_zero || !g.is_zero()) return g;
    }
}

Poly1 random_poly(std::mt19937_64& rng, char var, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    const int d = deg(rng);
    std::vector<GaussianRational> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = random_gaussian(rng);
    return Poly1(var, std::move(c));
}

}  // namespace

// ===========================================================================
// Rational
// ===========================================================================

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational());
    CHECK(Rational::from_string("6/-8") == Rational(-3, 4));
    CHECK(Rational(1, 2).denominator() == 2);
    CHECK(Rational(-1, 2).numerator() == -1);
}

TEST_CASE("rational arithmetic") {
    const Rational a(1, 6), b(1, 10);
    CHECK(a + b == Rational(4, 15));
    CHECK(a - b == Rational(1, 15));
    CHECK(a * b == Rational(1, 60));
    CHECK(a / b == Rational(5, 3));
    CHECK(-a == Rational(-1, 6));
    CHECK(a.abs() == a);
    CHECK((-a).abs() == a);
    CHECK(a.sign() == 1);
    CHECK((-a).sign() == -1);
    CHECK(Rational().sign() == 0);
    CHECK(a < b + b);
    CHECK(a.to_double() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("rational invalid input throws") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(), std::domain_error);
    CHECK_THROWS_AS(Rational::from_string("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::from_string("pi"), std::invalid_argument);
}

// ===========================================================================
// GaussianRational
// ===========================================================================

TEST_CASE("gaussian rational field operations") {
    const GaussianRational a(Rational(3), Rational(2));   // 3 + 2i
    const GaussianRational b(Rational(1), Rational(-1));  // 1 - i
    CHECK(a * b == GaussianRational(Rational(5), Rational(-1)));
    CHECK(GaussianRational::i() * GaussianRational::i() ==
          GaussianRational(Rational(-1)));
    CHECK(a.conj().conj() == a);
    CHECK(a.norm() == Rational(13));
    CHECK((a / b) * b == a);
    CHECK(a + b - b == a);
    CHECK_THROWS_AS(a / GaussianRational(), std::domain_error);
}

TEST_CASE("gaussian rational division: random round trips") {
    std::mt19937_64 rng(0x5EED0001ull);
    for (int trial = 0; trial < 100; ++trial) {
        const GaussianRational a = random_gaussian(rng);
        const GaussianRational b = random_gaussian(rng, /*allow_zero=*/false);
        CHECK((a / b) * b == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

// ===========================================================================
// Poly1
// ===========================================================================

TEST_CASE("univariate product and degree") {
    const Poly1 z = Poly1::variable('z');
    const Poly1 one = Poly1::constant('z', GaussianRational(Rational(1)));
    // (z + 1)(z - 1) = z^2 - 1.
    CHECK((z + one) * (z - one) == z * z - one);
    CHECK((z + one).degree() == 1);
    CHECK(((z + one) * (z - one)).degree() == 2);
    CHECK(Poly1('z').is_zero());
    CHECK(Poly1('z').degree() == -1);
}

TEST_CASE("univariate division with remainder") {
    const Poly1 z = Poly1::variable('z');
    const auto c = [](long v) {
        return Poly1::constant('z', GaussianRational(Rational(v)));
    };
    // z^3 + 2z + 1 = z * (z^2 + 1) + (z + 1).
    const Poly1 a = z * z * z + c(2) * z + c(1);
    const Poly1 b = z * z + c(1);
    const auto [q, r] = Poly1::divrem(a, b);
    CHECK(q == z);
    CHECK(r == z + c(1));
    CHECK(q * b + r == a);
    CHECK_THROWS_AS(Poly1::divrem(a, Poly1('z')), std::domain_error);
}

TEST_CASE("univariate variable mismatch throws") {
    const Poly1 z = Poly1::variable('z');
    const Poly1 t = Poly1::variable('t');
    CHECK_THROWS_AS(z + t, std::invalid_argument);
    CHECK_THROWS_AS(z * t, std::invalid_argument);
}

TEST_CASE("even/odd split of (v+1)(v+2)") {
    const Poly1 v = Poly1::variable('v');
    const auto c = [](long k) {
        return Poly1::constant('v', GaussianRational(Rational(k)));
    };
    const Poly1 f = (v + c(1)) * (v + c(2));
    const auto [p1, q1] = f.even_odd_split('w');
    // v^2 + 3v + 2 = v * 3 + (w + 2) with w = v^2.
    CHECK(p1 == Poly1::constant('w', GaussianRational(Rational(3))));
    CHECK(q1 == Poly1::variable('w') +
                    Poly1::constant('w', GaussianRational(Rational(2))));
}

TEST_CASE("even/odd split round trips on random polynomials") {
    std::mt19937_64 rng(0x5EED0002ull);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly1 f = random_poly(rng, 'v', 8);
        const auto [p1, q1] = f.even_odd_split('w');
        // f(v) = v * P1(v^2) + Q1(v^2).
        const Poly1 v = Poly1::variable('v');
        const Poly1 vsq = v * v;
        CHECK(v * p1.compose(vsq) + q1.compose(vsq) == f);
    }
}

TEST_CASE("composition and evaluation agree") {
    std::mt19937_64 rng(0x5EED0003ull);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly1 f = random_poly(rng, 'z', 5);
        const Poly1 g = random_poly(rng, 'u', 3);
        const GaussianRational x = random_gaussian(rng);
        CHECK(f.compose(g).eval(x) == f.eval(g.eval(x)));
    }
}

TEST_CASE("derivative is linear and satisfies the product rule") {
    std::mt19937_64 rng(0x5EED0004ull);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly1 f = random_poly(rng, 'z', 6);
        const Poly1 g = random_poly(rng, 'z', 6);
        CHECK((f + g).derivative() == f.derivative() + g.derivative());
        CHECK((f * g).derivative() ==
              f.derivative() * g + f * g.derivative());
    }
}

// ===========================================================================
// Poly2
// ===========================================================================

TEST_CASE("bivariate division by z - t^2") {
    const Poly2 z = Poly2::monomial(GaussianRational(Rational(1)), 1, 0);
    const Poly2 t = Poly2::monomial(GaussianRational(Rational(1)), 0, 1);
    const Poly2 a = z * z - t * t;
    const Poly2 b = z - t * t;
    const auto [q, r] = Poly2::divrem_z(a, b);
    // z^2 - t^2 = (z + t^2)(z - t^2) + (t^4 - t^2).
    CHECK(q == z + t * t);
    CHECK(r == t * t * t * t - t * t);
    CHECK(q * b + r == a);
    CHECK(r.degree_z() <= 0);
}

TEST_CASE("remainder after z -> t^2 equals substitution") {
    std::mt19937_64 rng(0x5EED0005ull);
    const Poly2 z = Poly2::monomial(GaussianRational(Rational(1)), 1, 0);
    const Poly2 t = Poly2::monomial(GaussianRational(Rational(1)), 0, 1);
    const Poly2 b = z - t * t;
    const Poly1 tsq = Poly1::monomial('t', GaussianRational(Rational(1)), 2);
    for (int trial = 0; trial < 30; ++trial) {
        // Random bivariate built from two univariate factors.
        const Poly2 a = Poly2::from_z(random_poly(rng, 'z', 4)) *
                        Poly2::from_t(random_poly(rng, 't', 3));
        const auto [q, r] = Poly2::divrem_z(a, b);
        CHECK(q * b + r == a);
        // The remainder is a(t^2, t): division remainder and direct
        // substitution must agree coefficient by coefficient.
        CHECK(r == Poly2::from_t(a.substitute_z(tsq)));
    }
}

TEST_CASE("bivariate evaluation is a ring homomorphism") {
    std::mt19937_64 rng(0x5EED0006ull);
    for (int trial = 0; trial < 30; ++trial) {
        const Poly2 a = Poly2::from_z(random_poly(rng, 'z', 3)) +
                        Poly2::from_t(random_poly(rng, 't', 3));
        const Poly2 b = Poly2::from_z(random_poly(rng, 'z', 2)) *
                        Poly2::from_t(random_poly(rng, 't', 2));
        const GaussianRational zv = random_gaussian(rng);
        const GaussianRational tv = random_gaussian(rng);
        CHECK((a + b).eval(zv, tv) == a.eval(zv, tv) + b.eval(zv, tv));
        CHECK((a * b).eval(zv, tv) == a.eval(zv, tv) * b.eval(zv, tv));
    }
}

// ===========================================================================
// TyurinaData: frozen small cases
// ===========================================================================

TEST_CASE("resolution data for roots (1, 2)") {
    const TyurinaData d = ale::tyurina_data({Rational(1), Rational(2)});
    const auto cz = [](long v) {
        return Poly1::constant('z', GaussianRational(Rational(v)));
    };
    const Poly1 z = Poly1::variable('z');
    // (v+1)(v+2) = v^2 + 3v + 2 gives P1 = 3, Q1 = w + 2, hence
    // P(z) = 3, Q(z) = -z + 2, p = Q(0) = 2, S = (Q - p)/z = -1.
    CHECK(d.P == cz(3));
    CHECK(d.Q == -z + cz(2));
    CHECK(d.p == Rational(2));
    CHECK(d.S == cz(-1));
    // Q + itP - (1+it)(2+it) = -z + t^2 = (z - t^2) * (-1), so G = -1.
    CHECK(d.G == Poly2::constant(GaussianRational(Rational(-1))));
    // zP^2 + Q^2 = 9z + z^2 - 4z + 4 = (z+1)(z+4).
    const Poly1 lhs = z * d.P * d.P + d.Q * d.Q;
    CHECK(lhs == (z + cz(1)) * (z + cz(4)));
}

TEST_CASE("resolution data for roots (1, 2, 3, 4)") {
    const TyurinaData d = ale::tyurina_data(
        {Rational(1), Rational(2), Rational(3), Rational(4)});
    const auto cz = [](long v) {
        return Poly1::constant('z', GaussianRational(Rational(v)));
    };
    const Poly1 z = Poly1::variable('z');
    // Elementary symmetric functions of (1,2,3,4): s1=10, s2=35, s3=50,
    // s4=24.  Then P = s3 - s1 z, Q = z^2 - s2 z + s4, S = z - s2.
    CHECK(d.P == cz(50) - cz(10) * z);
    CHECK(d.Q == z * z - cz(35) * z + cz(24));
    CHECK(d.p == Rational(24));
    CHECK(d.S == z - cz(35));
    // zP^2 + Q^2 = (z+1)(z+4)(z+9)(z+16).
    const Poly1 lhs = z * d.P * d.P + d.Q * d.Q;
    const Poly1 rhs =
        (z + cz(1)) * (z + cz(4)) * (z + cz(9)) * (z + cz(16));
    CHECK(lhs == rhs);
}

TEST_CASE("resolution data with a zero root") {
    const TyurinaData d = ale::tyurina_data({Rational(0), Rational(3)});
    // v(v+3) = v^2 + 3v gives P = 3, Q = -z, p = 0, S = -1.
    CHECK(d.p == Rational());
    CHECK(d.S == Poly1::constant('z', GaussianRational(Rational(-1))));
}

TEST_CASE("resolution data with opposite roots") {
    const TyurinaData d = ale::tyurina_data({Rational(2), Rational(-2)});
    // (v+2)(v-2) = v^2 - 4 gives P = 0, Q = -z - 4, p = -4 and
    // G = -1 from Q + itP - (2+it)(-2+it) = t^2 - z.
    CHECK(d.P.is_zero());
    CHECK(d.p == Rational(-4));
    CHECK(d.G == Poly2::constant(GaussianRational(Rational(-1))));
}

TEST_CASE("resolution data rejects fewer than two roots") {
    CHECK_THROWS_AS(ale::tyurina_data({Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(ale::tyurina_data({}), std::invalid_argument);
}

// ===========================================================================
// TyurinaData: structural identities on random inputs
// ===========================================================================

namespace {

// Shared property block: all defining identities of the resolution data,
// checked with exact arithmetic (no tolerances anywhere).
void check_invariants(const std::vector<Rational>& roots) {
    const TyurinaData d = ale::tyurina_data(roots);
    const Poly1 z = Poly1::variable('z');

    // Q(0) = p.
    CHECK(d.Q.eval(GaussianRational()) == GaussianRational(d.p));

    // zP^2 + Q^2 = prod (z + a_i^2).
    CHECK(z * d.P * d.P + d.Q * d.Q ==
          ale::product_z_plus_root_squares(roots));

    // Q - p = z S.
    CHECK(d.Q - Poly1::constant('z', GaussianRational(d.p)) == z * d.S);

    // Q + itP - prod (a_i + it) = (z - t^2) G, re-derived independently.
    const Poly2 z2 = Poly2::monomial(GaussianRational(Rational(1)), 1, 0);
    const Poly2 t2 = Poly2::monomial(GaussianRational(Rational(1)), 0, 1);
    const Poly2 numer = Poly2::from_z(d.Q) +
                        GaussianRational::i() * (t2 * Poly2::from_z(d.P)) -
                        Poly2::from_t(ale::product_a_plus_it(roots));
    CHECK(numer == (z2 - t2 * t2) * d.G);

    // Real roots force G(z, -t) = conj G(z, t).
    CHECK(d.G.negate_t() == d.G.conj_coeffs());

    // factor_g recomputes G from (P, Q) and must agree bit for bit.
    CHECK(ale::factor_g(d) == d.G);

    // Full chain of coefficient identities behind the birational change of
    // coordinates on the resolved surface.
    const BlowupReport report = ale::verify_blowup_relation(d);
    CHECK(report.pass);
    for (const auto& c : report.checks) {
        INFO("check: " << c.name);
        CHECK(c.pass);
    }
    const int k = static_cast<int>(roots.size());
    CHECK(report.deg_P <= (k - 1) / 2 * 2);  // P1 has degree <= (k-1)/2 in w.
    CHECK(report.deg_Q <= k);
}

}  // namespace

TEST_CASE("blow-up relation for repeated roots (3, 1, 4, 1)") {
    check_invariants({Rational(3), Rational(1), Rational(4), Rational(1)});
}

TEST_CASE("blow-up relation for random rational roots, degrees 2 through 8") {
    std::mt19937_64 rng(0x5EEDBEEFull);
    std::uniform_int_distribution<int> kdist(2, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = kdist(rng);
        std::vector<Rational> roots;
        roots.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) roots.push_back(random_rational(rng));
        CAPTURE(trial);
        check_invariants(roots);
    }
}
