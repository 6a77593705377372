#pragma once

/**
 * @file tyurina.hpp
 * @brief Resolution polynomials for the D_k versal surface.
 *
 * For roots a_1..a_k write prod_i (v + a_i) = v*P1(v^2) + Q1(v^2) and set
 * P(z) = P1(-z), Q(z) = Q1(-z), p = prod_i a_i. These satisfy, exactly:
 *
 *   (1) Q(0) = p
 *   (2) z*P(z)^2 + Q(z)^2 = prod_i (z + a_i^2)
 *   (3) Q(z) - p = z*S(z)            (defines S)
 *   (4) Q(z) + i*t*P(z) - prod_i (a_i + i*t) = (z - t^2) * G(z, t)
 *
 * (4) defines the bivariate factor G. The blow-up relation
 * (t^2 - z)(y - S) = 2(Q + i P t) is equivalent, modulo (4), to the
 * A-series-format equation (z - t^2)(y + 2G - S) = -2 prod_i (a_i + i t);
 * verify_blowup_relation checks that chain as exact polynomial identities.
 *
 * Everything here is exact Gaussian-rational arithmetic; construction
 * asserts invariants (1)-(4) and failure signals an implementation bug,
 * not bad input. Roots may repeat and may be zero.
 */

#include "ale/poly.hpp"
#include "ale/rational.hpp"

#include <string>
#include <vector>

namespace ale {

struct TyurinaData {
    std::vector<Rational> roots;  // a_1..a_k, k >= 2
    Rational p;                   // prod a_i
    Poly1 P;                      // in z
    Poly1 Q;                      // in z
    Poly1 S;                      // in z, Q - p = z*S
    Poly2 G;                      // in (z, t)
};

// prod_i (x + a_i) as a polynomial in `var`.
Poly1 product_plus_roots(const std::vector<Rational>& roots, char var);

// prod_i (z + a_i^2).
Poly1 product_z_plus_root_squares(const std::vector<Rational>& roots);

// prod_i (a_i + i*t) as a polynomial in t.
Poly1 product_a_plus_it(const std::vector<Rational>& roots);

// Builds P, Q, S, G from the roots and asserts invariants (1)-(4).
// Throws std::invalid_argument for k < 2, std::logic_error if an
// invariant fails.
TyurinaData tyurina_data(const std::vector<Rational>& roots);

// Recomputes the factor G of invariant (4) by bivariate division and
// verifies the remainder is identically zero.
Poly2 factor_g(const TyurinaData& data);

struct BlowupCheck {
    std::string name;
    bool pass = false;
};

struct BlowupReport {
    bool pass = false;
    int deg_P = -1;
    int deg_Q = -1;
    int deg_S = -1;
    int deg_G_z = -1;
    int deg_G_t = -1;
    std::vector<BlowupCheck> checks;
};

// Verifies, exactly, 2(Q + i t P) - 2 prod(a_i + i t) = 2(z - t^2) G and the
// rewrite chain from the blow-up relation to the A-format equation (the y^1
// and y^0 coefficients of the trivariate identity).
BlowupReport verify_blowup_relation(const TyurinaData& data);

}  // namespace ale
