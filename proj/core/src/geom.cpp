#include <ale/geom.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ale {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_margin(double p, double p0, double p1, double h) {
    const double slack = 1e-12 * (std::abs(p0) + std::abs(p1) + 1.0);
    if (p - 2.0 * h < p0 - slack || p + 2.0 * h > p1 + slack)
        throw std::domain_error(
            "curvature: point closer than 2h to the chart boundary");
}

double positive(double v, const char* what) {
    if (!(v > 0.0))
        throw std::domain_error(std::string("curvature: non-positive ") + what);
    return v;
}

// Deterministic pairwise reduction; the summation tree depends only on the
// element count, never on the thread count.
double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
    if (hi - lo <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

double curvature(const MetricSampler& s, double p, double theta, double h) {
    if (!(h > 0.0)) throw std::domain_error("curvature: step must be positive");
    check_margin(p, s.p0, s.p1, h);

    const auto E = [&](double pp, double tt) {
        return positive(s.metric(pp, tt).first, "g_pp");
    };
    const auto G = [&](double pp, double tt) {
        return positive(s.metric(pp, tt).second, "g_tt");
    };
    // A = G_p / sqrt(EG), B = E_theta / sqrt(EG), each by a centered
    // difference; then kappa = -(A_p + B_theta) / (2 sqrt(EG)).
    const auto A = [&](double pp, double tt) {
        const double gp = (G(pp + h, tt) - G(pp - h, tt)) / (2.0 * h);
        return gp / std::sqrt(E(pp, tt) * G(pp, tt));
    };
    const auto B = [&](double pp, double tt) {
        const double et = (E(pp, tt + h) - E(pp, tt - h)) / (2.0 * h);
        return et / std::sqrt(E(pp, tt) * G(pp, tt));
    };
    const double ap = (A(p + h, theta) - A(p - h, theta)) / (2.0 * h);
    const double bt = (B(p, theta + h) - B(p, theta - h)) / (2.0 * h);
    return -(ap + bt) / (2.0 * std::sqrt(E(p, theta) * G(p, theta)));
}

double curvature(const FullMetricSampler& s, double p, double theta,
                 double h) {
    if (!(h > 0.0)) throw std::domain_error("curvature: step must be positive");
    check_margin(p, s.p0, s.p1, h);

    const auto at = [&](double pp, double tt) { return s.metric(pp, tt); };
    const auto c = at(p, theta);
    const double E = positive(c.E, "E");
    const double G = positive(c.G, "G");
    const double F = c.F;
    const double disc = positive(E * G - F * F, "det");

    const auto cpp = at(p + h, theta), cpm = at(p - h, theta);
    const auto ctp = at(p, theta + h), ctm = at(p, theta - h);
    const auto cpt = at(p + h, theta + h), cmt = at(p - h, theta + h);
    const auto cpb = at(p + h, theta - h), cmb = at(p - h, theta - h);

    const double Eu = (cpp.E - cpm.E) / (2.0 * h);
    const double Ev = (ctp.E - ctm.E) / (2.0 * h);
    const double Gu = (cpp.G - cpm.G) / (2.0 * h);
    const double Gv = (ctp.G - ctm.G) / (2.0 * h);
    const double Fu = (cpp.F - cpm.F) / (2.0 * h);
    const double Fv = (ctp.F - ctm.F) / (2.0 * h);
    const double Evv = (ctp.E - 2.0 * E + ctm.E) / (h * h);
    const double Guu = (cpp.G - 2.0 * G + cpm.G) / (h * h);
    const double Fuv = (cpt.F - cpb.F - cmt.F + cmb.F) / (4.0 * h * h);

    // Brioschi: kappa = (det M1 - det M2) / (EG - F^2)^2.
    const double m1[3][3] = {
        {-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev},
        {Fv - 0.5 * Gu, E, F},
        {0.5 * Gv, F, G}};
    const double m2[3][3] = {
        {0.0, 0.5 * Ev, 0.5 * Gu}, {0.5 * Ev, E, F}, {0.5 * Gu, F, G}};
    return (det3(m1) - det3(m2)) / (disc * disc);
}

namespace {

// Pointwise evaluators so the same integrator serves the diagonal and the
// general samplers with their respective curvature formulas.  (The diagonal
// formula differentiates G_p / sqrt(EG), which stays tame where E alone
// blows up towards the chart edge; routing diagonal metrics through the
// Brioschi path would lose that stability.)
struct PointEvals {
    std::function<double(double p, double t)> kappa;
    std::function<double(double p, double t)> density;  // sqrt(det g)
};

// Midpoint-rule integral of kappa * sqrt(det g) over
// [a, b] x [0, 2pi) with an n_p x n_theta grid, rows reduced pairwise.
double strip_integral(const PointEvals& ev, double a, double b, int n_p,
                      int n_theta, unsigned threads) {
    const double dp = (b - a) / n_p;
    const double dt = kTwoPi / n_theta;
    std::vector<double> rows(static_cast<std::size_t>(n_p), 0.0);

    const auto run_rows = [&](int first, int stride) {
        for (int i = first; i < n_p; i += stride) {
            const double p = a + (i + 0.5) * dp;
            double acc = 0.0;
            for (int j = 0; j < n_theta; ++j) {
                const double t = (j + 0.5) * dt;
                acc += ev.kappa(p, t) * ev.density(p, t);
            }
            rows[static_cast<std::size_t>(i)] = acc;
        }
    };

    const unsigned nt =
        std::min<unsigned>(std::max(threads, 1u), static_cast<unsigned>(n_p));
    if (nt <= 1) {
        run_rows(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back(run_rows, static_cast<int>(w),
                              static_cast<int>(nt));
        for (auto& th : pool) th.join();
    }
    return pairwise_sum(rows, 0, rows.size()) * dp * dt;
}

// Area of [lo, hi] x [0, 2pi) under sqrt(det g), for the margin slivers.
double band_area(const PointEvals& ev, double lo, double hi, int n_theta) {
    constexpr int kNp = 8;
    const double dp = (hi - lo) / kNp;
    const double dt = kTwoPi / n_theta;
    double acc = 0.0;
    for (int i = 0; i < kNp; ++i) {
        const double p = lo + (i + 0.5) * dp;
        for (int j = 0; j < n_theta; ++j) acc += ev.density(p, (j + 0.5) * dt);
    }
    return acc * dp * dt;
}

double edge_curvature(const PointEvals& ev, double p, int n_theta) {
    const double dt = kTwoPi / n_theta;
    double acc = 0.0;
    for (int j = 0; j < n_theta; ++j) acc += ev.kappa(p, (j + 0.5) * dt);
    return acc / n_theta;
}

GaussBonnetResult gauss_bonnet_impl(const PointEvals& ev, double p0, double p1,
                                    int n_p, int n_theta, double h,
                                    double cap_area_low, double cap_area_high,
                                    double max_error, unsigned threads) {
    // One theta cell is legitimate for surfaces of revolution, where the
    // integrand does not depend on theta; p needs at least two cells for
    // the strip to make sense.
    if (n_p < 2 || n_theta < 1)
        throw std::domain_error("gauss_bonnet: grid must be at least 2x1");
    const double a = p0 + 2.0 * h;
    const double b = p1 - 2.0 * h;
    if (!(a < b))
        throw std::domain_error("gauss_bonnet: chart narrower than 4h");

    const double coarse = strip_integral(ev, a, b, n_p, n_theta, threads);
    const double fine =
        strip_integral(ev, a, b, 2 * n_p, 2 * n_theta, threads);

    GaussBonnetResult r;
    r.error_estimate = std::abs(fine - coarse) / 3.0;
    r.strip = fine;

    // The 2h slivers and the caller-supplied polar caps are charged at the
    // curvature of the innermost fine-grid row (finite differencing right at
    // the margin boundary is ill-conditioned when a metric component blows
    // up towards the edge).  The bands have O(h) and O(delta) width, so the
    // displacement costs a second-order error in those widths.
    const double dp_fine = (b - a) / (2 * n_p);
    const double k_low = edge_curvature(ev, a + 0.5 * dp_fine, n_theta);
    const double k_high = edge_curvature(ev, b - 0.5 * dp_fine, n_theta);
    r.caps = k_low * (cap_area_low + band_area(ev, p0, a, n_theta)) +
             k_high * (cap_area_high + band_area(ev, b, p1, n_theta));

    r.total = fine + (fine - coarse) / 3.0 + r.caps;
    if (r.error_estimate > max_error)
        throw std::runtime_error(
            "gauss_bonnet: error estimate " + std::to_string(r.error_estimate) +
            " exceeds allowed " + std::to_string(max_error));
    return r;
}

}  // namespace

GaussBonnetResult gauss_bonnet(const FullMetricSampler& s, int n_p,
                               int n_theta, double h, double cap_area_low,
                               double cap_area_high, double max_error,
                               unsigned threads) {
    PointEvals ev;
    ev.kappa = [&s, h](double p, double t) { return curvature(s, p, t, h); };
    ev.density = [&s](double p, double t) {
        const auto c = s.metric(p, t);
        return std::sqrt(c.E * c.G - c.F * c.F);
    };
    return gauss_bonnet_impl(ev, s.p0, s.p1, n_p, n_theta, h, cap_area_low,
                             cap_area_high, max_error, threads);
}

GaussBonnetResult gauss_bonnet(const MetricSampler& s, int n_p, int n_theta,
                               double h, double cap_area_low,
                               double cap_area_high, double max_error,
                               unsigned threads) {
    PointEvals ev;
    ev.kappa = [&s, h](double p, double t) { return curvature(s, p, t, h); };
    ev.density = [&s](double p, double t) {
        const auto [e, g] = s.metric(p, t);
        return std::sqrt(e * g);
    };
    return gauss_bonnet_impl(ev, s.p0, s.p1, n_p, n_theta, h, cap_area_low,
                             cap_area_high, max_error, threads);
}

Metric2 metric_from_omega_w(double rho, std::complex<double> dw_dp,
                            std::complex<double> dw_dtheta) {
    if (!(rho > 0.0))
        throw std::domain_error("metric_from_omega_w: density must be positive");
    const std::complex<double> cross = std::conj(dw_dp) * dw_dtheta;
    const double jac = cross.imag();
    if (jac == 0.0)
        throw std::domain_error("metric_from_omega_w: degenerate chart (dw "
                                "not an immersion here)");
    // If Im < 0, replace w by conj(w): |w_p|, |w_th| and Re(conj(w_p) w_th)
    // are unchanged and the Jacobian flips sign.
    const double denom = std::abs(jac);
    Metric2 g;
    g.g_pp = rho * std::norm(dw_dp) / denom;
    g.g_tt = rho * std::norm(dw_dtheta) / denom;
    g.g_pt = rho * cross.real() / denom;
    return g;
}

RoundEvolution evolve_round(double kappa0, double t) {
    if (!(kappa0 > 0.0))
        throw std::domain_error("evolve_round: curvature must be positive");
    RoundEvolution r;
    r.lambda = 1.0 + 2.0 * kappa0 * t * t;
    // lambda(t) = 1 + 2 kappa0 t^2 has second derivative 4 kappa0; the
    // equation's right side is 4 kappa(lambda g0) lambda = 4 kappa0 after
    // the exact cancellation (kappa0 / lambda) * lambda.
    const double lambda_tt = 4.0 * kappa0;
    r.residual = lambda_tt - 4.0 * kappa0;
    return r;
}

}  // namespace ale
