// Tests for the period functional and the chamber bookkeeping.  Oracles:
//  * the slope formulas for the displayed generators (P: a1 + a2,
//    Q: a2 + a3 + a4 + a5 - a0, R: a3 + a4 + a5 + a6 - a0,
//    S: a2 + ... + a7 - a0) evaluated by hand on small integer moduli;
//  * the chain reversal period(E2 - E1) = a1 - a2, rederived by hand from
//    E1 - E2 = (E_{1,2}... ) difference of conic classes (see periods.hpp);
//  * Q and R expanded in the E8 basis by hand (Q = S - P + (E2-E1) +
//    2(E3-E2) + 2(E4-E3) + 2(E5-E4) + 2(E6-E5) + (E7-E6)) to pin the
//    cross-model consistency values;
//  * D-type areas against the exact and quadrature areas of the metric
//    module.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ale/dk_sphere.hpp>
#include <ale/lattice.hpp>
#include <ale/periods.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

using ale::DivClass;
using ale::ModelPtr;
using ale::ModuliE;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference moduli inside each chamber (ascending, small a0).
ModuliE ref_moduli(int k) {
    switch (k) {
        case 6: return ModuliE(6, {1, 2, 3, 4, 5}, 10.0);
        case 7: return ModuliE(7, {1, 2, 3, 4, 5, 6}, 10.0);
        default: return ModuliE(8, {1, 2, 3, 4, 5, 6, 7}, 20.0);
    }
}

DivClass basis(const ModelPtr& m, const std::string& name) {
    return ale::basis_class(m, name);
}

DivClass exceptional(const ModelPtr& m, int i) {
    return basis(m, "E" + std::to_string(i));
}

DivClass class_P(const ModelPtr& m) {
    return basis(m, "H") - exceptional(m, 1) - exceptional(m, 2) -
           basis(m, "X");
}

DivClass class_Q(const ModelPtr& m) {
    return 2 * basis(m, "H") - exceptional(m, 2) - exceptional(m, 3) -
           exceptional(m, 4) - exceptional(m, 5) - basis(m, "X") -
           basis(m, "Y");
}

DivClass class_R(const ModelPtr& m) {
    return 2 * basis(m, "H") - exceptional(m, 3) - exceptional(m, 4) -
           exceptional(m, 5) - exceptional(m, 6) - basis(m, "X") -
           basis(m, "Y");
}

DivClass class_S(const ModelPtr& m) {
    DivClass s = 3 * basis(m, "H") - basis(m, "X") - basis(m, "X") -
                 basis(m, "Y");
    for (int i = 2; i <= 7; ++i) s = s - exceptional(m, i);
    return s;
}

double sum_range(const std::vector<double>& a, int lo, int hi) {
    double s = 0.0;
    for (int i = lo; i <= hi; ++i) s += a[static_cast<std::size_t>(i - 1)];
    return s;
}

}  // namespace

// ===========================================================================
// Moduli validation
// ===========================================================================

TEST_CASE("moduli validation rejects malformed parameter sets") {
    CHECK_THROWS_AS(ModuliE(5, {1, 2, 3, 4}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModuliE(9, {1, 2, 3, 4, 5, 6, 7, 8}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModuliE(6, {1, 2, 3}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModuliE(6, {1, 2, 3, 4, 5, 6}, 0.0),
                    std::invalid_argument);

    const double nan = std::nan("");
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ModuliE(6, {1, 2, nan, 4, 5}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModuliE(6, {1, 2, inf, 4, 5}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModuliE(6, {1, 2, 3, 4, 5}, inf), std::invalid_argument);
    CHECK_THROWS_AS(ModuliE(6, {1, 2, 2, 4, 5}, 0.0), std::invalid_argument);

    // Marked points may come in any order; only distinctness is required.
    const ModuliE unordered(6, {5, 1, 2, 3, 4}, 7.0);
    CHECK(unordered.k() == 6);
    CHECK(unordered.a().size() == 5);
    CHECK(unordered.a0() == 7.0);
}

// ===========================================================================
// Displayed generators
// ===========================================================================

TEST_CASE("periods of the displayed generators match the slope formulas") {
    for (int k : {6, 7, 8}) {
        CAPTURE(k);
        const ModuliE m = ref_moduli(k);
        const ModelPtr model = ale::make_ek_model(k);
        const auto& a = m.a();

        // P = E_12 - X meets the tangent line at slope a1 + a2 and X at 0.
        CHECK(period(m, class_P(model)) ==
              doctest::Approx(a[0] + a[1]).epsilon(1e-12));

        // Q = (E_23 - X) + (E_45 - Y), slopes minus the Y parameter a0.
        CHECK(period(m, class_Q(model)) ==
              doctest::Approx(sum_range(a, 2, 5) - m.a0()).epsilon(1e-12));

        if (k >= 7)
            CHECK(period(m, class_R(model)) ==
                  doctest::Approx(sum_range(a, 3, 6) - m.a0()).epsilon(1e-12));
        if (k == 8)
            CHECK(period(m, class_S(model)) ==
                  doctest::Approx(sum_range(a, 2, 7) - m.a0()).epsilon(1e-12));

        // The chain class as displayed carries the reversed difference:
        // E1 - E2 = (E_{13} - X) - (E_{23} - X) has period a2 - a1 by the
        // slope rule, so E2 - E1 gets a1 - a2.
        CHECK(period(m, exceptional(model, 2) - exceptional(model, 1)) ==
              doctest::Approx(a[0] - a[1]).epsilon(1e-12));
        CHECK(period(m, exceptional(model, 1) - exceptional(model, 2)) ==
              doctest::Approx(a[1] - a[0]).epsilon(1e-12));
    }

    // Non-integer moduli, exercising the same formulas away from the
    // integer lattice of coefficients.
    const ModuliE e8(8, {0.5, 1.25, 2.0, 3.5, 5.0, 6.25, 8.0}, 2.75);
    const ModelPtr m8 = ale::make_ek_model(8);
    CHECK(period(e8, class_S(m8)) == doctest::Approx(23.25).epsilon(1e-12));
    CHECK(period(e8, class_P(m8)) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(period(e8, exceptional(m8, 2) - exceptional(m8, 1)) ==
          doctest::Approx(-0.75).epsilon(1e-12));
}

TEST_CASE("raw basis periods expose the displayed-class orientations") {
    for (int k : {6, 7, 8}) {
        CAPTURE(k);
        const ModuliE m = ref_moduli(k);
        const auto raw = ale::root_basis_periods(m);
        REQUIRE(raw.size() == static_cast<std::size_t>(k));

        // Each entry is period() of the corresponding displayed class.
        const auto root_basis = ale::orthogonal_root_basis("E", k);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            CAPTURE(i);
            CHECK(period(m, root_basis[i]) ==
                  doctest::Approx(raw[i]).epsilon(1e-12));
        }
    }

    // Hand values on the reference moduli: the leading slot carries the
    // positive display, the -P slot and the chains come out negative.
    const auto raw6 = ale::root_basis_periods(ref_moduli(6));
    const std::vector<double> want6 = {4.0, -3.0, -1.0, -1.0, -1.0, -1.0};
    for (std::size_t i = 0; i < want6.size(); ++i)
        CHECK(raw6[i] == doctest::Approx(want6[i]).epsilon(1e-12));

    const auto raw7 = ale::root_basis_periods(ref_moduli(7));
    const std::vector<double> want7 = {11.0, 8.0, -1.0, -1.0, -1.0, -1.0,
                                       -1.0};
    for (std::size_t i = 0; i < want7.size(); ++i)
        CHECK(raw7[i] == doctest::Approx(want7[i]).epsilon(1e-12));

    const auto raw8 = ale::root_basis_periods(ref_moduli(8));
    const std::vector<double> want8 = {7.0,  -3.0, -1.0, -1.0,
                                       -1.0, -1.0, -1.0, -1.0};
    for (std::size_t i = 0; i < want8.size(); ++i)
        CHECK(raw8[i] == doctest::Approx(want8[i]).epsilon(1e-12));
}

TEST_CASE("the functional is consistent across the three models") {
    // Q and R are not basis slots on E8, so their values there exercise
    // the solver against the hand expansion
    //   Q = S - P + (E2-E1) + 2(E3-E2) + 2(E4-E3) + 2(E5-E4) + 2(E6-E5)
    //       + (E7-E6),
    // and must still equal the slope formula.
    const ModuliE e8 = ref_moduli(8);
    const ModelPtr m8 = ale::make_ek_model(8);
    CHECK(period(e8, class_Q(m8)) == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(period(e8, class_R(m8)) == doctest::Approx(-2.0).epsilon(1e-12));

    const ModuliE e7 = ref_moduli(7);
    const ModelPtr m7 = ale::make_ek_model(7);
    CHECK(period(e7, class_Q(m7)) == doctest::Approx(4.0).epsilon(1e-12));

    // P is a basis slot on none of the models (E6/E8 display -P, E7
    // displays P + R), yet its period is a1 + a2 = 3 on all three.
    for (int k : {6, 7, 8})
        CHECK(period(ref_moduli(k), class_P(ale::make_ek_model(k))) ==
              doctest::Approx(3.0).epsilon(1e-12));
}

// ===========================================================================
// Linearity
// ===========================================================================

TEST_CASE("the period functional is linear and homogeneous") {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<long long> coeff(-5, 5);

    for (int k : {6, 7, 8}) {
        CAPTURE(k);
        const ModuliE m = ref_moduli(k);
        const auto root_basis = ale::orthogonal_root_basis("E", k);
        const auto raw = ale::root_basis_periods(m);

        for (int trial = 0; trial < 25; ++trial) {
            DivClass c = 0 * root_basis[0];
            double want = 0.0;
            double scale = 1.0;
            for (std::size_t i = 0; i < root_basis.size(); ++i) {
                const long long n = coeff(rng);
                c = c + n * root_basis[i];
                want += static_cast<double>(n) * raw[i];
                scale += std::abs(static_cast<double>(n) * raw[i]);
            }
            CHECK(std::abs(period(m, c) - want) <= 1e-12 * scale);
        }

        // Additivity on a fixed pair.
        const DivClass c1 = root_basis[0] + 2 * root_basis[2];
        const DivClass c2 = root_basis[1] - root_basis[2];
        CHECK(period(m, c1 + c2) ==
              doctest::Approx(period(m, c1) + period(m, c2)).epsilon(1e-12));

        // Scaling all moduli parameters by lambda scales every period.
        const double lambda = 1.75;
        std::vector<double> scaled = m.a();
        for (double& v : scaled) v *= lambda;
        const ModuliE ms(k, scaled, lambda * m.a0());
        const auto raw_scaled = ale::root_basis_periods(ms);
        for (std::size_t i = 0; i < raw.size(); ++i)
            CHECK(raw_scaled[i] ==
                  doctest::Approx(lambda * raw[i]).epsilon(1e-12));
    }
}

// ===========================================================================
// Span and model errors
// ===========================================================================

TEST_CASE("classes outside the root span or off the model are rejected") {
    for (int k : {6, 7, 8}) {
        CAPTURE(k);
        const ModuliE m = ref_moduli(k);
        const ModelPtr model = ale::make_ek_model(k);
        for (const char* name : {"H", "E1", "X", "Y", "F"}) {
            CAPTURE(name);
            CHECK_THROWS_AS(period(m, basis(model, name)),
                            std::invalid_argument);
        }
        CHECK_THROWS_AS(period(m, ale::anticanonical(model)),
                        std::invalid_argument);
    }

    // Model mismatch: an E7 class offered against E6 moduli.
    CHECK_THROWS_AS(period(ref_moduli(6), class_P(ale::make_ek_model(7))),
                    std::invalid_argument);
    CHECK_THROWS_AS(period(ref_moduli(6), DivClass{}),
                    std::invalid_argument);
}

// ===========================================================================
// Decomposition identities
// ===========================================================================

TEST_CASE("decomposition identities are exact class identities") {
    CHECK_THROWS_AS(ale::decomposition_identities(5), std::invalid_argument);
    CHECK_THROWS_AS(ale::decomposition_identities(9), std::invalid_argument);

    const std::vector<std::string> names = {"P", "Q", "R", "S"};
    for (int k : {6, 7, 8}) {
        CAPTURE(k);
        const auto report = ale::decomposition_identities(k);
        const std::size_t expected = k == 6 ? 2 : (k == 7 ? 3 : 4);
        REQUIRE(report.checks.size() == expected);
        CHECK(report.pass);
        for (std::size_t i = 0; i < report.checks.size(); ++i) {
            CHECK(report.checks[i].name == names[i]);
            CHECK(report.checks[i].pass);
        }
    }

    const auto r8 = ale::decomposition_identities(8);
    CHECK(r8.checks[1].lhs == "2H - E2 - E3 - E4 - E5 - X - Y");
    CHECK(r8.checks[1].rhs == "(H - E2 - E3 - X) + (H - E4 - E5 - Y)");
    CHECK(r8.checks[3].lhs == "3H - E2 - E3 - E4 - E5 - E6 - E7 - 2X - Y");
}

// ===========================================================================
// Chambers
// ===========================================================================

TEST_CASE("chamber reports name every violated wall") {
    using ale::chamber_check;

    // Type A: ascending only.
    CHECK(chamber_check("A", {1.1, 2, 3, 4}).pass);
    CHECK(chamber_check("A", {-3, 2, 3, 4}).pass);
    const auto a_eq = chamber_check("A", {1, 1, 2});
    CHECK_FALSE(a_eq.pass);
    REQUIRE(a_eq.violated.size() == 1);
    CHECK(a_eq.violated[0] == "a2 > a1");
    const auto a_rev = chamber_check("A", {3, 2, 1});
    CHECK(a_rev.violated ==
          std::vector<std::string>{"a2 > a1", "a3 > a2"});

    // Type D: ascending plus a1 + a2 > 0.
    CHECK(chamber_check("D", {1.1, 2, 3, 4}).pass);
    const auto d_wall = chamber_check("D", {-3, 2, 3, 4});
    CHECK_FALSE(d_wall.pass);
    CHECK(d_wall.violated == std::vector<std::string>{"a1 + a2 > 0"});
    CHECK_FALSE(chamber_check("D", {-2, 2, 3, 4}).pass);  // boundary strict

    CHECK_THROWS_AS(chamber_check("B", {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(chamber_check("E", {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(chamber_check("A", {1}), std::invalid_argument);
    CHECK_THROWS_AS(chamber_check("A", {1, std::nan("")}),
                    std::invalid_argument);

    // E6: ascending, a1 + a2 > 0, a2 + a3 + a4 + a5 > a0.
    CHECK(chamber_check(ref_moduli(6)).pass);
    const auto e6_a0 = chamber_check(ModuliE(6, {1, 2, 3, 4, 5}, 20.0));
    CHECK(e6_a0.violated ==
          std::vector<std::string>{"a2 + a3 + a4 + a5 > a0"});
    const auto e6_p = chamber_check(ModuliE(6, {-5, 1, 2, 3, 4}, 0.0));
    CHECK(e6_p.violated == std::vector<std::string>{"a1 + a2 > 0"});
    const auto e6_chain = chamber_check(ModuliE(6, {2, 1, 3, 4, 5}, 3.0));
    CHECK_FALSE(e6_chain.pass);
    CHECK(std::find(e6_chain.violated.begin(), e6_chain.violated.end(),
                    "a2 > a1") != e6_chain.violated.end());

    // E7: both non-chain walls involve a0.
    CHECK(chamber_check(ref_moduli(7)).pass);
    const auto e7_one = chamber_check(ModuliE(7, {1, 2, 3, 4, 5, 6}, 20.0));
    CHECK(e7_one.violated ==
          std::vector<std::string>{"a3 + a4 + a5 + a6 > a0"});
    const auto e7_two = chamber_check(ModuliE(7, {1, 2, 3, 4, 5, 6}, 25.0));
    CHECK(e7_two.violated ==
          std::vector<std::string>{"a1 + a2 + a3 + a4 + a5 + a6 > a0",
                                   "a3 + a4 + a5 + a6 > a0"});

    // E8.
    CHECK(chamber_check(ref_moduli(8)).pass);
    const auto e8_a0 =
        chamber_check(ModuliE(8, {1, 2, 3, 4, 5, 6, 7}, 30.0));
    CHECK(e8_a0.violated ==
          std::vector<std::string>{"a2 + a3 + a4 + a5 + a6 + a7 > a0"});
}

// ===========================================================================
// Areas
// ===========================================================================

TEST_CASE("simple root areas match the stated lists and the quadratures") {
    // A3 with equally spaced points: every sphere has area 4 pi.
    const auto a3 = ale::simple_root_areas("A", {-3, -1, 1, 3});
    REQUIRE(a3.size() == 3);
    for (double v : a3) CHECK(v == doctest::Approx(4 * kPi).epsilon(1e-14));

    // D4: (a1 + a2, a2 - a1, a3 - a2, a4 - a3) times 2 pi.
    const auto d4 = ale::simple_root_areas("D", {1, 2, 3, 4});
    REQUIRE(d4.size() == 4);
    CHECK(d4[0] == doctest::Approx(6 * kPi).epsilon(1e-14));
    CHECK(d4[1] == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(d4[2] == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(d4[3] == doctest::Approx(2 * kPi).epsilon(1e-14));

    // The chain entry over a compact gap is the metric module's area:
    // component c spans (a_{2c+2}, a_{2c+3}), which is list entry 2c + 2.
    {
        const ale::ModuliD m4({1, 2, 3, 4});
        CHECK(d4[2] == doctest::Approx(ale::component_area(m4, 0))
                           .epsilon(1e-14));
        CHECK(std::abs(d4[2] - ale::component_area_quadrature(m4, 0)) <=
              1e-6 * d4[2]);

        const ale::ModuliD m6({1, 2, 3, 4, 5, 6});
        const auto d6 = ale::simple_root_areas("D", {1, 2, 3, 4, 5, 6});
        for (int c : {0, 1}) {
            CAPTURE(c);
            const std::size_t slot = static_cast<std::size_t>(2 * c + 2);
            CHECK(d6[slot] == doctest::Approx(ale::component_area(m6, c))
                                  .epsilon(1e-14));
            CHECK(std::abs(d6[slot] -
                           ale::component_area_quadrature(m6, c)) <=
                  1e-6 * d6[slot]);
        }
    }

    // E areas are the positive displays times 2 pi.
    const auto e6 = ale::simple_root_areas(ref_moduli(6));
    const std::vector<double> want6 = {4, 3, 1, 1, 1, 1};
    REQUIRE(e6.size() == want6.size());
    for (std::size_t i = 0; i < e6.size(); ++i) {
        CHECK(e6[i] ==
              doctest::Approx(2 * kPi * want6[i]).epsilon(1e-14));
        CHECK(e6[i] > 0.0);
    }

    // Off-chamber moduli are refused with the wall spelled out.
    CHECK_THROWS_AS(ale::simple_root_areas("A", {1, 1, 2}),
                    std::domain_error);
    CHECK_THROWS_WITH_AS(
        ale::simple_root_areas(ModuliE(6, {1, 2, 3, 4, 5}, 20.0)),
        "simple_root_areas: moduli violate the chamber wall "
        "a2 + a3 + a4 + a5 > a0",
        std::domain_error);
}

TEST_CASE("chamber verdicts agree with area positivity") {
    // Round trip: the chamber passes exactly when the area vector exists
    // and is componentwise positive.
    std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
    std::uniform_real_distribution<double> pick(-4.0, 8.0);

    for (int trial = 0; trial < 200; ++trial) {
        const int k = 6 + trial % 3;
        std::vector<double> a(static_cast<std::size_t>(k - 1));
        bool distinct = true;
        for (auto& v : a) v = pick(rng);
        for (std::size_t i = 0; i < a.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (a[i] == a[j]) distinct = false;
        if (!distinct) continue;
        // Sort most draws so both verdicts appear in the sample.
        if (trial % 4 != 0) std::sort(a.begin(), a.end());
        const ModuliE m(k, a, pick(rng));

        const auto report = ale::chamber_check(m);
        bool areas_positive = true;
        try {
            for (double v : ale::simple_root_areas(m))
                areas_positive = areas_positive && v > 0.0;
        } catch (const std::domain_error&) {
            areas_positive = false;
        }
        CAPTURE(k);
        CAPTURE(trial);
        CHECK(report.pass == areas_positive);
        CHECK(report.pass == report.violated.empty());
    }
}
