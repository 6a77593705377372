// Period functional on the root lattices of the compactified surfaces.
//
// The symplectic form of the E_k family has a simple pole along a conic
// and a tangent line, and the period of a difference of exceptional
// curves meeting the tangent reduces to the difference of the parameters
// at which they meet it: the proper transform E_ij of the line through
// marked points i and j is read at its slope a_i + a_j, the class X at 0
// and Y at a_0.  On the displayed generators this gives
//   period(P) = a_1 + a_2                              P = E_12 - X
//   period(Q) = a_2 + a_3 + a_4 + a_5 - a_0            Q = (E_23-X)+(E_45-Y)
//   period(R) = a_3 + a_4 + a_5 + a_6 - a_0            R = (E_34-X)+(E_56-Y)
//   period(S) = a_2 + ... + a_7 - a_0                  S = (E_23-X)+(E_45-X)+(E_67-Y)
// and the functional extends Z-linearly over the span of the simple-root
// basis (lattice.orthogonal_root_basis).  Linearity leaves no freedom for
// the chain classes:
//   E_i - E_{i+1} = (E_{1,i+1} - X) - (E_{1,i} - X)
// forces period(E_i - E_{i+1}) = a_{i+1} - a_i, so on an ascending
// chamber the class with positive period is E_i - E_{i+1}, the reverse of
// the orientation the Dynkin display is usually written in.  2 pi times a
// positive period is the symplectic area of the root's sphere, which ties
// these values back to the quadratures of the metric modules.
//
// No contour integration happens here: the periods reduce to endpoint
// differences, and the module evaluates those exactly as written.

#pragma once

#include <string>
#include <vector>

#include "ale/lattice.hpp"

namespace ale {

// Marked points (a_i, a_i^2) on the conic, i = 1..k-1, plus the tangent
// parameter a_0 of the distinguished point, for k in {6, 7, 8}.  The a_i
// must be finite and pairwise distinct.  Throws std::invalid_argument.
class ModuliE {
  public:
    ModuliE(int k, std::vector<double> a, double a0);

    int k() const { return k_; }
    const std::vector<double>& a() const { return a_; }
    double a0() const { return a0_; }

  private:
    int k_;
    std::vector<double> a_;
    double a0_;
};

// Period of a divisor class, divided by 2 pi i.  The class must lie in
// the span of orthogonal_root_basis("E", k) on the matching model; the
// coordinates in that basis are solved exactly over the rationals, and
// std::invalid_argument is thrown outside the span or on a model
// mismatch.  Z-linear in the class by construction.
double period(const ModuliE& m, const DivClass& c);

// Raw periods of orthogonal_root_basis("E", k), in basis order, for the
// displayed classes themselves.  On an ascending chamber the chain
// entries a_i - a_{i+1} and the -P entries are negative: the displayed
// generators are not the effective orientations.
std::vector<double> root_basis_periods(const ModuliE& m);

// The same periods after the effective reorientation (chains as
// E_i - E_{i+1}, P in place of -P): positive exactly on the resolution
// chamber.  Defined for any moduli; on the chamber these are the values of
// simple_root_areas(m) divided by 2 pi.
std::vector<double> chamber_periods(const ModuliE& m);

// One verified decomposition of a named class into conic-minus-point
// generators, as an exact integer identity on the E_k model.
struct DecompositionCheck {
    std::string name;  // "P", "Q", "R", "S"
    std::string lhs;   // the class as defined
    std::string rhs;   // the decomposed sum
    bool pass = false;
};

struct DecompositionReport {
    bool pass = false;  // conjunction of checks
    std::vector<DecompositionCheck> checks;
};

// Verifies, for k in {6, 7, 8}:
//   P = E_12 - X
//   Q = (E_23 - X) + (E_45 - Y)
//   R = (E_34 - X) + (E_56 - Y)     (k >= 7: needs the point 6)
//   S = (E_23 - X) + (E_45 - X) + (E_67 - Y)   (k = 8)
// with P = H-E1-E2-X, Q = 2H-E2-E3-E4-E5-X-Y, R = 2H-E3-E4-E5-E6-X-Y,
// S = 3H-(E2+...+E7)-2X-Y and E_ij = H-Ei-Ej.
DecompositionReport decomposition_identities(int k);

// Chamber verdict with one entry per violated wall, each naming the wall
// and the offending value.
struct ChamberReport {
    bool pass = false;
    std::vector<std::string> violated;
};

// Walls of the positive chamber:
//   "A": a_1 < a_2 < ... (strict increase);
//   "D": strict increase plus a_1 + a_2 > 0.
ChamberReport chamber_check(const std::string& type_label,
                            const std::vector<double>& a);

// E_k chamber: every simple root, oriented so its sphere is effective
// (chains as E_i - E_{i+1}, P in place of -P, while P + R and R on E7
// keep their displayed orientation), has strictly positive period.
// Concretely, ascending a_i together with
//   E6:  a_1 + a_2 > 0   and  a_2 + a_3 + a_4 + a_5 > a_0
//   E7:  a_1 + ... + a_6 > a_0  and  a_3 + a_4 + a_5 + a_6 > a_0
//   E8:  a_1 + a_2 > 0   and  a_2 + ... + a_7 > a_0
ChamberReport chamber_check(const ModuliE& m);

// Areas 2 pi x period of the simple roots, each root oriented so its
// sphere has positive area on the chamber, one entry per Dynkin vertex in
// basis order:
//   "A": 2 pi (a_{i+1} - a_i);
//   "D": 2 pi (a_1 + a_2), then 2 pi (a_{i+1} - a_i);
//   E_k: 2 pi x root_basis_periods after the effective reorientation
//        described at chamber_check.
// Throws std::domain_error (quoting the first violated wall) outside the
// chamber.
std::vector<double> simple_root_areas(const std::string& type_label,
                                      const std::vector<double>& a);
std::vector<double> simple_root_areas(const ModuliE& m);

}  // namespace ale
