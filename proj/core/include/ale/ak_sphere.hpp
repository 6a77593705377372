// Central sphere of the odd A-type ALE space in Gibbons-Hawking form.
// The space is built from 2l collinear centers a_1 < ... < a_{2l}; this
// module evaluates the harmonic potential V = sum 1/(2|x - a_i|), the lift
// function h that singles out the pointwise-fixed sphere over the middle
// interval, the Morse function f = sum |x - a_i|, the induced metric
// V dz^2 + V^{-1} dtheta^2 with a meromorphic conformal coordinate w and its
// closed-form partials, symplectic areas of the chain spheres, a check that
// the associated twistor lines satisfy the surface equation, and the ALF
// deformation obtained by adding the constant 1 to V.
//
// All functions work with the centered root configuration (sum a_i = 0);
// the values passed to the constructor are kept for reporting only.

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ale/geom.hpp"

namespace ale {

// Root configuration on the axis: an even number 2l >= 2 of strictly
// increasing reals.  The constructor subtracts the mean so the stored roots
// sum to zero (up to rounding); translation is an isometry, so no geometry
// is lost.  Throws std::invalid_argument for an odd or empty list, a
// non-increasing or non-finite list, or a list whose gaps are too small to
// survive the centering.
class ModuliA {
  public:
    explicit ModuliA(std::vector<double> roots);

    int ell() const { return ell_; }
    const std::vector<double>& roots() const { return roots_; }
    const std::vector<double>& original_roots() const { return original_; }
    double shift() const { return shift_; }

    // Central interval (a_l, a_{l+1}) in the centered frame.
    double central_low() const { return roots_[ell_ - 1]; }
    double central_high() const { return roots_[ell_]; }
    double central_width() const { return central_high() - central_low(); }

  private:
    std::vector<double> original_;
    std::vector<double> roots_;
    int ell_ = 0;
    double shift_ = 0.0;
};

// Harmonic potential V(x) = sum_i 1/(2|x - a_i|) at a point of R^3, and the
// axial specialization V(z) = sum_i 1/(2|z - a_i|).  Throws
// std::domain_error at a center.
double potential(const ModuliA& m, const std::array<double, 3>& x);
double potential(const ModuliA& m, double z);

// Lift function h(x) = sum_i (x_1 - a_i)/|x - a_i| + c.  On the axis each
// term is a sign, so h there is an integer plus c; with c = 0 it vanishes
// identically on the central interval.  Throws std::domain_error at a
// center.
double lift_function(const ModuliA& m, const std::array<double, 3>& x,
                     double c = 0.0);
double lift_function(const ModuliA& m, double z, double c = 0.0);

// The differential of h is determined by the partials V_1, V_2, V_3 of the
// potential:
//   dh = -2 (x_2 V_2 + x_3 V_3) dx_1 + 2 x_2 V_1 dx_2 + 2 x_3 V_1 dx_3,
// an identity that holds term by term over the centers.  This evaluates
// both sides by centered differences of the given step and returns the
// largest componentwise mismatch.
double lift_gradient_residual(const ModuliA& m, const std::array<double, 3>& x,
                              double step);

// Morse function f(x) = sum_i |x - a_i| and its axial specialization.
// Defined everywhere (centers contribute 0).
double morse_function(const ModuliA& m, const std::array<double, 3>& x);
double morse_function(const ModuliA& m, double z);

// Value of f on the central sphere, where it is constant:
// sum_{i > l} a_i - sum_{i <= l} a_i.
double morse_central_value(const ModuliA& m);

// Increment of the Morse function across the chain sphere over
// [a_i, a_{i+1}] (intervals indexed 1..2l-1).  On that interval the lifted
// rotation acts on the fibers with integer weight 2(i - l), and the moment
// map increment measures the symplectic area through that weight:
//   2 pi (f(a_{i+1}) - f(a_i)) = 2 (i - l) * area_i,
// with area_i = 2 pi (a_{i+1} - a_i).  The central interval i = l has
// weight 0 and increment 0.  residual is the difference of the two sides.
// Throws std::out_of_range for an interval index outside 1..2l-1.
struct MorseAreaRelation {
    double two_pi_delta_f = 0.0;  // 2 pi (f(a_{i+1}) - f(a_i))
    int weight = 0;               // 2 (i - l)
    double area = 0.0;            // 2 pi (a_{i+1} - a_i)
    double residual = 0.0;        // two_pi_delta_f - weight * area
};

MorseAreaRelation morse_area_relation(const ModuliA& m, int interval);

// One sample of a central-sphere chart.  The conformal coordinate is
//   w = x / prod_{i <= l} (z - a_i),   |x|^2 = (-1)^l prod_i (z - a_i),
// which is positive on the central interval, with phase e^{i theta}.  Its
// logarithmic z-derivative is -V exactly, term by term, so the partials
// dw_dz = -V w and dw_dtheta = i w are closed forms, not differences.
// kappa is the Gaussian curvature of (g_zz, g_tt) by finite differences.
struct AkSample {
    double z = 0.0;
    double theta = 0.0;
    double V = 0.0;     // potential at z (unshifted, also for the ALF chart)
    double g_zz = 0.0;  // V for the sphere chart, 1 + V for the ALF chart
    double g_tt = 0.0;  // reciprocal of g_zz
    std::complex<double> w;
    std::complex<double> dw_dz;
    std::complex<double> dw_dtheta;
    double kappa = 0.0;
};

// Sample of the central-sphere metric V dz^2 + V^{-1} dtheta^2.  z must lie
// inside the central interval with a margin of 1e-6 of its width (the
// endpoints are smooth points of the sphere but poles of the chart);
// violations throw std::domain_error.
AkSample sphere_metric(const ModuliA& m, double z, double theta);

// Symplectic area 2 pi (a_{i+1} - a_i) of the chain sphere over interval i
// (indexed 1..2l-1; throws std::out_of_range otherwise), and an independent
// midpoint quadrature of the area density sqrt(det g) = sqrt(V * (1/V))
// over the same interval.
double symplectic_area(const ModuliA& m, int interval);
double symplectic_area_quadrature(const ModuliA& m, int interval,
                                  int n = 1024);

// Twistor-line check: the line through (x, z) is
//   u -> (X, Y, Z)(u) = (x u^l, (-1)^l conj(x) u^l, z u)
// and must satisfy X(u) Y(u) = prod_i (Z(u) - a_i u) for every u.  The
// (-1)^l factor is the twisted real structure that keeps X Y equal to the
// product when the product is negative at the real point.  Requires
// |x|^2 = (-1)^l prod_i (z - a_i) (throws std::invalid_argument otherwise,
// at relative tolerance 1e-8) and returns the largest residual
// |X Y - prod| / max(1, |u|^{2l}) over the supplied u samples.
double twistor_line_check(const ModuliA& m, std::complex<double> x, double z,
                          const std::vector<std::complex<double>>& u_samples);

// ALF deformation: same chart with potential 1 + V, metric
// (1+V) dz^2 + (1+V)^{-1} dtheta^2.  The conformal coordinate picks up a
// factor e^{-z}, so its logarithmic z-derivative is -(1 + V), matching the
// shifted potential; dw_dz and dw_dtheta are again closed forms.  Margins
// and errors as in sphere_metric.
AkSample alf_chart(const ModuliA& m, double z, double theta);

// The deformation acts on the surface coordinates by (x, y) -> (e^z x,
// e^{-z} y), which preserves x y.  This builds the real-slice point
// (x, y) = (x, (-1)^l conj(x)) over (z, theta), applies the transformation
// with a single exponential, and returns |x'y' - xy| / |xy|.  The defect is
// pure rounding, a few ulp.
double alf_invariance_defect(const ModuliA& m, double z, double theta);

// Gauss-Bonnet integral of kappa over the central sphere via the shared
// integrator: strip quadrature on an n_z x n_theta grid with the 2h margin
// slivers charged at the edge curvature.  The (z, theta) chart covers the
// sphere up to the two poles, so the external cap areas are zero.  The
// integrand is theta-independent, so n_theta = 1 suffices.  h <= 0 selects
// the default 1e-5 of the interval width.
GaussBonnetResult total_curvature(const ModuliA& m, int n_z, int n_theta = 1,
                                  double h = -1.0);

}  // namespace ale
