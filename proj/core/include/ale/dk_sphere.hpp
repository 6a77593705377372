// Central sphere of the D-type ALE space through its versal family.  The
// affine surface is, in the quadratic form used throughout this module,
//   -z x^2 + (z y + p)^2 = prod_i (z + a_i^2),        p = prod_i a_i,
// for k reals a_1 < a_2 < ... < a_k with a_1 + a_2 > 0 (the chamber that
// orders the squares a_i^2 increasingly and keeps all +-a_i +- a_j away
// from zero).  Fixed z = -s^2 < 0 cuts a circle when prod_i (a_i^2 - s^2)
// is positive, which happens in the gaps of the |a_i| with an even count
// of roots below; the gaps rooted at both ends assemble into spheres.  The
// central sphere is the one with exactly two roots above its gap, i.e.
// over (a_{k-2}, a_{k-1}); it is real precisely when k is even ((a_2, a_3)
// for k = 4).
//
// On top of the real parametrization this module evaluates the resolution
// data: the Tyurina coordinate t = (x + iP)/(y - S) built from the exact
// polynomials P, Q, S (frozen to double precision on construction), the
// meromorphic conformal coordinate w = (b_1 + it)(b_2 + it)/(z - t^2) for
// the root pair (b_1, b_2) adjacent to the component, the metric
// reconstructed from (ds ^ dtheta, w), the k = 4 comparison of the two
// printed formulas for t, and the Hamiltonian flow generated by z with
// respect to the symplectic form dx ^ dz / f_y, which deforms the sphere
// toward its ALF counterpart.

#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ale/geom.hpp"

namespace ale {

// Chamber predicate: strictly increasing, finite, a_1 + a_2 > 0.  This
// implies a_i > 0 for i >= 2, pairwise sums positive, and squares in
// strictly increasing order.
bool dk_chamber_valid(const std::vector<double>& a);

// Root data a_1 < ... < a_k in the chamber above, with the resolution
// polynomials precomputed exactly from the dyadic values of the roots and
// frozen to double coefficients:
//   prod_i (v + a_i) = v P1(v^2) + Q1(v^2),  P(z) = P1(-z),  Q(z) = Q1(-z),
//   Q(z) - p = z S(z),
//   Q(z) + i t P(z) - prod_i (a_i + i t) = (z - t^2) G(z, t).
// Throws std::invalid_argument outside the chamber or for fewer than two
// roots.
class ModuliD {
  public:
    explicit ModuliD(std::vector<double> a);

    int k() const { return static_cast<int>(a_.size()); }
    const std::vector<double>& a() const { return a_; }
    double p() const { return p_; }
    // Elementary symmetric function sigma_i of the roots, i = 0..k.
    double sigma(int i) const;

    double P(double z) const { return eval(pc_, z); }
    double Q(double z) const { return eval(qc_, z); }
    double S(double z) const { return eval(sc_, z); }
    // Derivatives in z, used by the closed-form chart partials.
    double dP(double z) const { return eval_deriv(pc_, z); }
    double dS(double z) const { return eval_deriv(sc_, z); }
    std::complex<double> G(std::complex<double> z,
                           std::complex<double> t) const;

    // Bounded components of the real surface: the s-intervals
    // (a_j, a_{j+1}) with j even and 2 <= j <= k - 1, where
    // prod_i (a_i^2 - s^2) > 0 with roots at both ends.  Ordered by
    // position.  Empty for k = 2.
    const std::vector<std::pair<double, double>>& compact_intervals() const {
        return intervals_;
    }
    // Index of the central sphere, the component over (a_{k-2}, a_{k-1}).
    // Its gap has k - 2 roots below, so it is real only for even k;
    // std::domain_error otherwise.
    int central_component() const;

  private:
    static double eval(const std::vector<double>& c, double z);
    static double eval_deriv(const std::vector<double>& c, double z);

    std::vector<double> a_;
    double p_ = 0.0;
    std::vector<double> sigma_;            // sigma_0..sigma_k
    std::vector<double> pc_, qc_, sc_;     // ascending coefficients
    std::vector<std::vector<std::complex<double>>> gc_;  // gc_[i][j] z^i t^j
    std::vector<std::pair<double, double>> intervals_;
};

// Point of the real surface together with the chart parameters that
// produced it: z = -s^2, R = sqrt(prod_i (a_i^2 - s^2)), x = R cos(theta)/s
// and y = (p - R sin(theta))/s^2, the sign for which z y + p = R sin(theta)
// and the surface equation holds exactly.
struct DkPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double s = 0.0;
    double theta = 0.0;
};

// Residuals of the two forms of the surface equation at a real point,
// oriented so that z * r1 = r2 identically:
//   r1 = (x^2 - z y^2) - (-(1/z)(prod_i (z + a_i^2) - p^2) + 2 y p)
//   r2 = prod_i (z + a_i^2) - (-z x^2 + (z y + p)^2)
// scale1/scale2 are the magnitudes the residuals should be judged against
// (1 plus the largest term of the respective form).  r1 needs z != 0;
// evaluation at z = 0 throws std::domain_error (the z = 0 slice carries
// only the quadratic form, which can be checked directly there).
struct SurfaceResidual {
    double r1 = 0.0;
    double r2 = 0.0;
    double scale1 = 0.0;
    double scale2 = 0.0;
};

SurfaceResidual surface_residual(const ModuliD& m, double x, double y,
                                 double z);

// Point of the sphere over compact interval `component` at (s, theta).
// s must sit inside the interval with a margin of 1e-4 of its width (the
// endpoints are poles of the chart); violations throw std::domain_error,
// a bad component index std::out_of_range.  The construction is verified
// against the surface equation (1e-10 of scale) before returning.
DkPoint sphere_point(const ModuliD& m, int component, double s, double theta);

// Tyurina coordinate t = (x + i P(z))/(y - S(z)).  When the denominator is
// negligible against the numerator the coordinate runs through infinity;
// that is a point of the resolution cycle, not an error, so it is reported
// by the `pole` flag rather than an exception (t itself overflows there).
struct TCoordinate {
    std::complex<double> t;
    bool pole = false;
};

TCoordinate t_coordinate(const ModuliD& m, const DkPoint& pt);

// Scaled residuals of the two resolution identities at a surface point:
//   blowup:   (t^2 - z)(y - S) - 2 (Q + i P t)
//   a_format: (z - t^2)(y + 2 G(z, t) - S) + 2 prod_i (a_i + i t)
// each divided by 1 plus the largest magnitude among its terms.
struct ResolutionResiduals {
    double blowup = 0.0;
    double a_format = 0.0;
};

ResolutionResiduals resolution_identity_residuals(const ModuliD& m,
                                                  const DkPoint& pt);

// Conformal coordinate of the central sphere,
//   w = (a_{k-1} + it)(a_k + it)/(z - t^2),
// built from the two largest roots and evaluated from the parts
// t = num/den as
//   w = (a_{k-1} den + i num)(a_k den + i num) / (z den^2 - num^2),
// which stays stable where t itself runs through infinity.  Near the
// actual pole of w, |z den^2 - num^2| below 1e-8 of its term scale, the
// value is meaningless and std::domain_error is thrown; the pole is the
// divisor defining the conformal structure, not a failure of the surface.
std::complex<double> conformal_coordinate(const ModuliD& m,
                                          const DkPoint& pt);

// Root pair (b_1, b_2) whose coordinate (b_1 + it)(b_2 + it)/(z - t^2)
// restricts to a degree-one chart on the given component: the pair just
// above the component's gap (the two largest roots for the central
// sphere), or just below it for the topmost gap of odd k.  Non-adjacent
// pairs pick up extra zeros or poles on the component and degenerate as
// charts.
std::pair<double, double> chart_root_pair(const ModuliD& m, int component);

// One sample of the sphere geometry over a compact component: the point,
// t, the coordinate w of chart_root_pair(component), its closed-form
// partials (chained through R(s), x, y, P, S), the metric from
// geom.metric_from_omega_w with area density 1 (the symplectic form is
// ds ^ dtheta), and the Gaussian curvature of that metric by the general
// finite-difference formula.  Near the pole of w the metric is computed
// from 1/w instead, which reconstructs the same metric; the recorded w
// and its partials still refer to w, so conformal_chart rejects samples
// at the pole itself (std::domain_error) while curvature integration
// across the pole remains well defined.
struct DkSample {
    DkPoint point;
    std::complex<double> t;
    bool t_pole = false;
    std::complex<double> w;
    std::complex<double> dw_ds;
    std::complex<double> dw_dtheta;
    double g_ss = 0.0;
    double g_tt = 0.0;
    double g_st = 0.0;
    double kappa = 0.0;
};

DkSample conformal_chart(const ModuliD& m, int component, double s,
                         double theta);

// Ratio of the finite-difference Jacobian d(x, z)/d(s, theta) to
// f_y = -2 z y - 2 p, which should be +-1: the symplectic form
// dx ^ dz / f_y equals ds ^ dtheta on the sphere.  residual = ||ratio| - 1|.
// Both the Jacobian and f_y vanish where sin(theta) = 0; within 1e-6 of
// that locus the ratio is 0/0 and std::domain_error is thrown.  fd_step
// <= 0 selects 1e-5 of the interval width.
struct DensityCheck {
    double ratio = 0.0;
    double residual = 0.0;
};

DensityCheck symplectic_density_check(const ModuliD& m, int component,
                                      double s, double theta,
                                      double fd_step = -1.0);

// Symplectic area of the sphere over a compact interval: 2 pi times the
// interval width, and an independent quadrature that integrates the
// measured density |Jacobian / f_y| over a midpoint grid (the grid avoids
// the sin(theta) = 0 locus by construction).
double component_area(const ModuliD& m, int component);
double component_area_quadrature(const ModuliD& m, int component,
                                 int n_s = 200, int n_theta = 64);

// Gauss-Bonnet integral of the curvature over the sphere, using the shared
// integrator on the reconstructed metric.  The integration runs in the
// chart u in [0, 1] with s = lo + width sin^2(pi u / 2), where the metric
// components stay bounded at the poles (in the raw s-chart g_ss grows like
// 1/(s - lo) and edge stencils would not converge); the chart covers the
// sphere up to its two poles, which carry no area.  h is the curvature
// step in u-units; h <= 0 selects 1e-4.
GaussBonnetResult total_curvature(const ModuliD& m, int component, int n_s,
                                  int n_theta, double h = -1.0,
                                  unsigned threads = 1);

// k = 4 comparison of the two printed formulas for the Tyurina parameter
// over the denominator y - z + sigma_2:
//   variant "z": numerator x + i sigma_1 z - i sigma_3
//   variant "y": numerator x + i sigma_1 y - i sigma_3
// Each variant's deviation from t_coordinate is the maximum over sample
// points of min(|v - t|, |v - conj(t)|) / max(1, |t|); the conjugate is
// admitted because t is only defined up to the choice of +-i in x +- iP,
// and `conjugated` records which alternative matched.  matched names the
// variant that meets `tol` if exactly one does, else "none".  Sampling
// avoids the poles of t and the y = z locus (where the variants collide).
// Throws std::invalid_argument unless k = 4.
struct D4CompareReport {
    double variant_z = 0.0;
    double variant_y = 0.0;
    std::string matched = "none";
    bool conjugated = false;
};

D4CompareReport d4_t_compare(const ModuliD& m, int n_samples = 50,
                             double tol = 1e-8);

// Hamiltonian flow of the function z with respect to dx ^ dz / f_y on the
// complex surface:
//   dx/dtau = i f_y = -2 i (z y + p),   dy/dtau = -i f_x = -2 i x,
// with z constant along the flow (it is its own Hamiltonian, so
// conservation is structural: the integrator never updates z).  The flow
// leaves the real slice immediately, so the result is a complex state.
// Integrated by classical RK4 from a real surface point; the surface
// residual is monitored at every step and drift beyond 1e-6 of scale
// throws std::runtime_error.  step must lie in (0, 1e-3].
struct AlfFlowResult {
    std::complex<double> x;
    std::complex<double> y;
    double z = 0.0;
    double z_drift = 0.0;       // identically zero, recorded for the report
    double max_residual = 0.0;  // largest scaled surface residual seen
    int steps = 0;
};

AlfFlowResult alf_flow(const ModuliD& m, const DkPoint& start,
                       double tau = 1.0, double step = 1e-3);

// Symplectic check of the time-tau flow map: finite differences of the map
// (s, theta) -> (x(tau), z) give the transported Jacobian, and dividing by
// f_y at the endpoint measures the flowed omega-density against the
// initial density 1.  The return value should be 1 up to integrator and
// difference error.  fd <= 0 selects 1e-5 of the interval width.
std::complex<double> alf_flow_density_ratio(const ModuliD& m, int component,
                                            double s, double theta,
                                            double tau = 1.0,
                                            double step = 1e-3,
                                            double fd = -1.0);

}  // namespace ale
