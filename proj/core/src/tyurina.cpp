#include "ale/tyurina.hpp"

#include <stdexcept>

namespace ale {

namespace {

Poly2 z_minus_t_squared() {
    return Poly2::monomial(GaussianRational(1), 1, 0) -
           Poly2::monomial(GaussianRational(1), 0, 2);
}

// Q(z) + i*t*P(z) - prod_i (a_i + i*t)
Poly2 blowup_numerator(const Poly1& P, const Poly1& Q,
                       const std::vector<Rational>& roots) {
    Poly2 it = Poly2::monomial(GaussianRational::i(), 0, 1);
    return Poly2::from_z(Q) + it * Poly2::from_z(P) -
           Poly2::from_t(product_a_plus_it(roots));
}

}  // namespace

Poly1 product_plus_roots(const std::vector<Rational>& roots, char var) {
    Poly1 f = Poly1::constant(var, GaussianRational(1));
    for (const Rational& a : roots)
        f = f * (Poly1::variable(var) + Poly1::constant(var, GaussianRational(a)));
    return f;
}

Poly1 product_z_plus_root_squares(const std::vector<Rational>& roots) {
    Poly1 f = Poly1::constant('z', GaussianRational(1));
    for (const Rational& a : roots)
        f = f * (Poly1::variable('z') + Poly1::constant('z', GaussianRational(a * a)));
    return f;
}

Poly1 product_a_plus_it(const std::vector<Rational>& roots) {
    Poly1 f = Poly1::constant('t', GaussianRational(1));
    Poly1 it = GaussianRational::i() * Poly1::variable('t');
    for (const Rational& a : roots)
        f = f * (it + Poly1::constant('t', GaussianRational(a)));
    return f;
}

TyurinaData tyurina_data(const std::vector<Rational>& roots) {
    if (roots.size() < 2)
        throw std::invalid_argument("tyurina_data: need at least 2 roots");

    TyurinaData d;
    d.roots = roots;
    d.p = Rational(1);
    for (const Rational& a : roots) d.p = d.p * a;

    // prod (v + a_i) = v*P1(v^2) + Q1(v^2); then substitute v^2 -> -z.
    Poly1 f = product_plus_roots(roots, 'v');
    auto [P1, Q1] = f.even_odd_split('w');
    Poly1 minus_z = GaussianRational(-1) * Poly1::variable('z');
    d.P = P1.compose(minus_z);
    d.Q = Q1.compose(minus_z);

    if (d.Q.eval(GaussianRational(0)) != GaussianRational(d.p))
        throw std::logic_error("tyurina_data: Q(0) != p");

    Poly1 z = Poly1::variable('z');
    if (z * d.P * d.P + d.Q * d.Q != product_z_plus_root_squares(roots))
        throw std::logic_error("tyurina_data: z*P^2 + Q^2 != prod(z + a_i^2)");

    auto [S, rem] = Poly1::divrem(d.Q - Poly1::constant('z', GaussianRational(d.p)), z);
    if (!rem.is_zero())
        throw std::logic_error("tyurina_data: Q - p not divisible by z");
    d.S = S;

    auto [G, rem2] = Poly2::divrem_z(blowup_numerator(d.P, d.Q, roots), z_minus_t_squared());
    if (!rem2.is_zero())
        throw std::logic_error("tyurina_data: Q + itP - prod(a_i + it) not divisible by z - t^2");
    d.G = G;

    return d;
}

Poly2 factor_g(const TyurinaData& data) {
    auto [G, rem] = Poly2::divrem_z(blowup_numerator(data.P, data.Q, data.roots),
                                    z_minus_t_squared());
    if (!rem.is_zero())
        throw std::logic_error("factor_g: nonzero remainder dividing by z - t^2");
    return G;
}

BlowupReport verify_blowup_relation(const TyurinaData& data) {
    BlowupReport rep;
    rep.deg_P = data.P.degree();
    rep.deg_Q = data.Q.degree();
    rep.deg_S = data.S.degree();
    rep.deg_G_z = data.G.degree_z();
    rep.deg_G_t = data.G.degree_t();

    GaussianRational two(2);
    Poly2 zmt2 = z_minus_t_squared();
    Poly2 numer = blowup_numerator(data.P, data.Q, data.roots);

    // 2(Q + itP) - 2 prod(a_i + it) = 2(z - t^2) G
    rep.checks.push_back({"2(Q+itP) - 2*prod(a_i+it) == 2(z-t^2)*G",
                          two * numer == two * (zmt2 * data.G)});

    // The blow-up relation (t^2-z)(y-S) = 2(Q+iPt) rewrites to
    // (z-t^2)(y+2G-S) = -2 prod(a_i+it). Their sum must vanish identically
    // as a polynomial in (z, t, y); y enters linearly, so compare the y^1
    // and y^0 coefficients.
    Poly2 y1 = (-zmt2) + zmt2;  // (t^2-z) + (z-t^2)
    rep.checks.push_back({"y^1 coefficient: (t^2-z) + (z-t^2) == 0", y1.is_zero()});

    Poly2 S2 = Poly2::from_z(data.S);
    Poly2 lhs0 = (-zmt2) * (-S2) - (two * (numer + Poly2::from_t(product_a_plus_it(data.roots))));
    Poly2 rhs0 = zmt2 * (two * data.G - S2) +
                 two * Poly2::from_t(product_a_plus_it(data.roots));
    rep.checks.push_back({"y^0 coefficient: -(t^2-z)S - 2(Q+iPt) + (z-t^2)(2G-S) + 2*prod == 0",
                          (lhs0 + rhs0).is_zero()});

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace ale
