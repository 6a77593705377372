#include "ale/ak_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace ale {

namespace {

constexpr double kMarginFactor = 1e-6;

double margin_delta(const ModuliA& m) {
    return kMarginFactor * m.central_width();
}

void check_central(const ModuliA& m, double z, const char* who) {
    const double d = margin_delta(m);
    if (!(z >= m.central_low() + d && z <= m.central_high() - d)) {
        throw std::domain_error(std::string(who) +
                                ": z outside the central interval "
                                "(margin 1e-6 of its width)");
    }
}

// prod_i (z - a_i); has sign (-1)^l strictly inside the central interval.
double root_product(const ModuliA& m, double z) {
    double p = 1.0;
    for (double a : m.roots()) p *= z - a;
    return p;
}

double parity_sign(const ModuliA& m) {
    return m.ell() % 2 == 0 ? 1.0 : -1.0;
}

// w at (z, theta): |w|^2 = prod_{i > l} (a_i - z) / prod_{i <= l} (z - a_i),
// every factor positive strictly inside the central interval.
std::complex<double> conformal_w(const ModuliA& m, double z, double theta) {
    const auto& a = m.roots();
    const int l = m.ell();
    double q = 1.0;
    for (int i = 0; i < l; ++i) q /= z - a[static_cast<std::size_t>(i)];
    for (int i = l; i < 2 * l; ++i) q *= a[static_cast<std::size_t>(i)] - z;
    return std::polar(std::sqrt(q), theta);
}

// Curvature of the diagonal chart (V + shift, 1/(V + shift)) at (z, theta),
// with the difference step capped so the nested samples stay strictly
// inside the interval even when z sits at the 1e-6 margin.
double chart_curvature(const ModuliA& m, double z, double theta,
                       double shift) {
    MetricSampler s;
    s.p0 = m.central_low();
    s.p1 = m.central_high();
    s.metric = [&m, shift](double p, double) {
        const double v = potential(m, p) + shift;
        return std::pair<double, double>(v, 1.0 / v);
    };
    const double h = std::min({1e-4 * m.central_width(), 0.25 * (z - s.p0),
                               0.25 * (s.p1 - z)});
    return curvature(s, z, theta, h);
}

// In-place pairwise reduction, independent of any threading of the fill.
double pairwise_sum(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        const std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
        n = half;
    }
    return v[0];
}

void check_interval_index(const ModuliA& m, int interval, const char* who) {
    if (interval < 1 || interval > 2 * m.ell() - 1) {
        throw std::out_of_range(std::string(who) +
                                ": interval index outside 1..2l-1");
    }
}

}  // namespace

ModuliA::ModuliA(std::vector<double> roots) : original_(std::move(roots)) {
    if (original_.size() < 2 || original_.size() % 2 != 0) {
        throw std::invalid_argument(
            "ModuliA: need a positive even number of roots");
    }
    for (double a : original_) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument("ModuliA: roots must be finite");
        }
    }
    for (std::size_t i = 0; i + 1 < original_.size(); ++i) {
        if (!(original_[i] < original_[i + 1])) {
            throw std::invalid_argument(
                "ModuliA: roots must be strictly increasing");
        }
    }
    ell_ = static_cast<int>(original_.size() / 2);
    shift_ = std::accumulate(original_.begin(), original_.end(), 0.0) /
             static_cast<double>(original_.size());
    roots_.reserve(original_.size());
    for (double a : original_) roots_.push_back(a - shift_);
    // Centering subtracts the same shift from every root, but rounding can
    // collapse a gap that is tiny relative to the shift.
    for (std::size_t i = 0; i + 1 < roots_.size(); ++i) {
        if (!(roots_[i] < roots_[i + 1])) {
            throw std::invalid_argument(
                "ModuliA: root gap too small to survive centering");
        }
    }
}

double potential(const ModuliA& m, const std::array<double, 3>& x) {
    double v = 0.0;
    for (double a : m.roots()) {
        const double d = x[0] - a;
        const double r = std::sqrt(d * d + x[1] * x[1] + x[2] * x[2]);
        if (r == 0.0) {
            throw std::domain_error("potential: evaluation at a center");
        }
        v += 1.0 / (2.0 * r);
    }
    return v;
}

double potential(const ModuliA& m, double z) {
    double v = 0.0;
    for (double a : m.roots()) {
        const double r = std::abs(z - a);
        if (r == 0.0) {
            throw std::domain_error("potential: evaluation at a center");
        }
        v += 1.0 / (2.0 * r);
    }
    return v;
}

double lift_function(const ModuliA& m, const std::array<double, 3>& x,
                     double c) {
    double h = c;
    for (double a : m.roots()) {
        const double d = x[0] - a;
        const double r = std::sqrt(d * d + x[1] * x[1] + x[2] * x[2]);
        if (r == 0.0) {
            throw std::domain_error("lift_function: evaluation at a center");
        }
        h += d / r;
    }
    return h;
}

double lift_function(const ModuliA& m, double z, double c) {
    double h = c;
    for (double a : m.roots()) {
        if (z == a) {
            throw std::domain_error("lift_function: evaluation at a center");
        }
        h += z > a ? 1.0 : -1.0;
    }
    return h;
}

double lift_gradient_residual(const ModuliA& m, const std::array<double, 3>& x,
                              double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument(
            "lift_gradient_residual: step must be positive");
    }
    const auto partial = [&](const auto& f, int axis) {
        std::array<double, 3> xp = x;
        std::array<double, 3> xm = x;
        xp[static_cast<std::size_t>(axis)] += step;
        xm[static_cast<std::size_t>(axis)] -= step;
        return (f(xp) - f(xm)) / (2.0 * step);
    };
    const auto v = [&](const std::array<double, 3>& p) {
        return potential(m, p);
    };
    const auto h = [&](const std::array<double, 3>& p) {
        return lift_function(m, p, 0.0);
    };
    const double v1 = partial(v, 0);
    const double v2 = partial(v, 1);
    const double v3 = partial(v, 2);
    const double r1 = partial(h, 0) + 2.0 * (x[1] * v2 + x[2] * v3);
    const double r2 = partial(h, 1) - 2.0 * x[1] * v1;
    const double r3 = partial(h, 2) - 2.0 * x[2] * v1;
    return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

double morse_function(const ModuliA& m, const std::array<double, 3>& x) {
    double f = 0.0;
    for (double a : m.roots()) {
        const double d = x[0] - a;
        f += std::sqrt(d * d + x[1] * x[1] + x[2] * x[2]);
    }
    return f;
}

double morse_function(const ModuliA& m, double z) {
    double f = 0.0;
    for (double a : m.roots()) f += std::abs(z - a);
    return f;
}

double morse_central_value(const ModuliA& m) {
    const auto& a = m.roots();
    const int l = m.ell();
    double f = 0.0;
    for (int i = l; i < 2 * l; ++i) f += a[static_cast<std::size_t>(i)];
    for (int i = 0; i < l; ++i) f -= a[static_cast<std::size_t>(i)];
    return f;
}

MorseAreaRelation morse_area_relation(const ModuliA& m, int interval) {
    check_interval_index(m, interval, "morse_area_relation");
    const auto& a = m.roots();
    const double lo = a[static_cast<std::size_t>(interval - 1)];
    const double hi = a[static_cast<std::size_t>(interval)];
    MorseAreaRelation r;
    const double two_pi = 2.0 * std::acos(-1.0);
    r.two_pi_delta_f =
        two_pi * (morse_function(m, hi) - morse_function(m, lo));
    r.weight = 2 * (interval - m.ell());
    r.area = two_pi * (hi - lo);
    r.residual = r.two_pi_delta_f - static_cast<double>(r.weight) * r.area;
    return r;
}

AkSample sphere_metric(const ModuliA& m, double z, double theta) {
    check_central(m, z, "sphere_metric");
    AkSample s;
    s.z = z;
    s.theta = theta;
    s.V = potential(m, z);
    s.g_zz = s.V;
    s.g_tt = 1.0 / s.V;
    s.w = conformal_w(m, z, theta);
    s.dw_dz = -s.V * s.w;
    s.dw_dtheta = std::complex<double>(0.0, 1.0) * s.w;
    s.kappa = chart_curvature(m, z, theta, 0.0);
    return s;
}

double symplectic_area(const ModuliA& m, int interval) {
    check_interval_index(m, interval, "symplectic_area");
    const auto& a = m.roots();
    const double two_pi = 2.0 * std::acos(-1.0);
    return two_pi * (a[static_cast<std::size_t>(interval)] -
                     a[static_cast<std::size_t>(interval - 1)]);
}

double symplectic_area_quadrature(const ModuliA& m, int interval, int n) {
    check_interval_index(m, interval, "symplectic_area_quadrature");
    if (n < 1) {
        throw std::invalid_argument(
            "symplectic_area_quadrature: need at least one cell");
    }
    const auto& a = m.roots();
    const double lo = a[static_cast<std::size_t>(interval - 1)];
    const double hi = a[static_cast<std::size_t>(interval)];
    const double dz = (hi - lo) / static_cast<double>(n);
    std::vector<double> cells(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double z = lo + (static_cast<double>(j) + 0.5) * dz;
        const double v = potential(m, z);
        cells[static_cast<std::size_t>(j)] = std::sqrt(v * (1.0 / v)) * dz;
    }
    const double two_pi = 2.0 * std::acos(-1.0);
    return two_pi * pairwise_sum(cells);
}

double twistor_line_check(const ModuliA& m, std::complex<double> x, double z,
                          const std::vector<std::complex<double>>& u_samples) {
    const int l = m.ell();
    const double sign = parity_sign(m);
    const double want = sign * root_product(m, z);
    if (std::abs(std::norm(x) - want) > 1e-8 * std::max(1.0, std::abs(want))) {
        throw std::invalid_argument(
            "twistor_line_check: |x|^2 does not satisfy the real-slice "
            "relation");
    }
    const std::complex<double> y = sign * std::conj(x);
    double worst = 0.0;
    for (const std::complex<double>& u : u_samples) {
        std::complex<double> ul = 1.0;
        for (int j = 0; j < l; ++j) ul *= u;
        const std::complex<double> xy = (x * ul) * (y * ul);
        std::complex<double> prod = 1.0;
        for (double a : m.roots()) prod *= z * u - a * u;
        const double scale =
            std::max(1.0, std::pow(std::abs(u), 2.0 * static_cast<double>(l)));
        worst = std::max(worst, std::abs(xy - prod) / scale);
    }
    return worst;
}

AkSample alf_chart(const ModuliA& m, double z, double theta) {
    check_central(m, z, "alf_chart");
    AkSample s;
    s.z = z;
    s.theta = theta;
    s.V = potential(m, z);
    s.g_zz = 1.0 + s.V;
    s.g_tt = 1.0 / (1.0 + s.V);
    s.w = std::exp(-z) * conformal_w(m, z, theta);
    s.dw_dz = -(1.0 + s.V) * s.w;
    s.dw_dtheta = std::complex<double>(0.0, 1.0) * s.w;
    s.kappa = chart_curvature(m, z, theta, 1.0);
    return s;
}

double alf_invariance_defect(const ModuliA& m, double z, double theta) {
    check_central(m, z, "alf_invariance_defect");
    const double sign = parity_sign(m);
    const std::complex<double> x =
        std::polar(std::sqrt(sign * root_product(m, z)), theta);
    const std::complex<double> y = sign * std::conj(x);
    const std::complex<double> xy = x * y;
    const double u = std::exp(z);
    const std::complex<double> moved = (x * u) * (y / u);
    return std::abs(moved - xy) / std::abs(xy);
}

GaussBonnetResult total_curvature(const ModuliA& m, int n_z, int n_theta,
                                  double h) {
    MetricSampler s;
    s.p0 = m.central_low();
    s.p1 = m.central_high();
    s.metric = [&m](double p, double) {
        const double v = potential(m, p);
        return std::pair<double, double>(v, 1.0 / v);
    };
    const double hh = h > 0.0 ? h : 1e-5 * m.central_width();
    return gauss_bonnet(s, n_z, n_theta, hh, 0.0, 0.0);
}

}  // namespace ale
