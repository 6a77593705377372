// Shared differential-geometry numerics for the central-sphere charts:
// Gaussian curvature of metrics given in a (p, theta) rectangle, a
// Gauss-Bonnet integrator with polar-cap corrections, reconstruction of a
// metric from a symplectic area density and a conformal coordinate, and the
// round case of the curvature-flow equation g_tt = 4*kappa*g.
//
// Charts are rectangles p in [p0, p1], theta in [0, 2*pi), with theta
// periodic; samplers must accept any real theta.

#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <utility>

namespace ale {

// Diagonal metric g = E dp^2 + G dtheta^2 on a rectangle.
struct MetricSampler {
    std::function<std::pair<double, double>(double p, double theta)> metric;
    double p0 = 0.0;
    double p1 = 0.0;
};

// General metric g = E dp^2 + 2F dp dtheta + G dtheta^2.
struct FullMetricSampler {
    struct Components {
        double E = 0.0, F = 0.0, G = 0.0;
    };
    std::function<Components(double p, double theta)> metric;
    double p0 = 0.0;
    double p1 = 0.0;
};

// Gaussian curvature of a diagonal metric by centered finite differences of
// step h,
//   kappa = -(1 / 2 sqrt(EG)) [ d/dp (G_p / sqrt(EG)) + d/dth (E_th / sqrt(EG)) ],
// nested differencing samples up to p +- 2h, so (p, theta) must sit at
// least 2h inside [p0, p1]; violations throw std::domain_error, as do
// non-positive sampled components.
double curvature(const MetricSampler& s, double p, double theta, double h);

// Gaussian curvature of a general metric via the Brioschi formula with
// centered finite differences of step h.  Same margin rule as above.
double curvature(const FullMetricSampler& s, double p, double theta, double h);

struct GaussBonnetResult {
    double total = 0.0;           // extrapolated integral incl. edge terms
    double error_estimate = 0.0;  // |I_2n - I_n| / 3 (midpoint Richardson)
    double strip = 0.0;           // finest-grid strip integral
    double caps = 0.0;            // polar caps plus the 2h margin slivers
};

// Integral of kappa dA over the closed surface: midpoint quadrature of
// kappa * sqrt(det g) over [p0 + 2h, p1 - 2h] x [0, 2pi) on an n_p x n_theta
// grid plus a doubled grid for a Richardson error estimate, with the two
// polar caps (areas supplied by the caller, since the chart does not extend
// there) and the 2h margin slivers charged at the edge curvature.  Throws
// std::runtime_error if the error estimate exceeds max_error.  Row sums are
// combined by pairwise reduction, so the result is bitwise independent of
// `threads`.
GaussBonnetResult gauss_bonnet(
    const FullMetricSampler& s, int n_p, int n_theta, double h,
    double cap_area_low, double cap_area_high,
    double max_error = std::numeric_limits<double>::infinity(),
    unsigned threads = 1);

GaussBonnetResult gauss_bonnet(
    const MetricSampler& s, int n_p, int n_theta, double h,
    double cap_area_low, double cap_area_high,
    double max_error = std::numeric_limits<double>::infinity(),
    unsigned threads = 1);

// Metric determined by an area density rho and a conformal coordinate w:
//   g = rho |dw|^2 / Im(conj(w_p) w_theta),
// conjugating w first if that denominator is negative (orientation flip).
// The area density of the result is rho identically:
//   det g = rho^2 (|w_p|^2 |w_th|^2 - Re^2) / Im^2 = rho^2.
// Throws std::domain_error when rho <= 0 or the denominator vanishes.
struct Metric2 {
    double g_pp = 0.0;
    double g_tt = 0.0;
    double g_pt = 0.0;
};

Metric2 metric_from_omega_w(double rho, std::complex<double> dw_dp,
                            std::complex<double> dw_dtheta);

// Round-sphere reduction of g_tt = 4 kappa(g) g: with g(t) = lambda(t) g_0,
// kappa(lambda g_0) = kappa_0 / lambda, the equation collapses to
// lambda'' = 4 kappa_0 with lambda(0) = 1, lambda'(0) = 0, solved by
// lambda(t) = 1 + 2 kappa_0 t^2.  The residual lambda'' - 4 kappa_0 is
// computed (not assumed) and is exactly zero.
struct RoundEvolution {
    double lambda = 0.0;
    double residual = 0.0;
};

RoundEvolution evolve_round(double kappa0, double t);

}  // namespace ale
