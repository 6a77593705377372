#include "ale/dk_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ale/rational.hpp"
#include "ale/tyurina.hpp"

namespace ale {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeMargin = 1e-4;  // of interval width, sphere_point
constexpr double kCurvStep = 1e-4;    // curvature step in the unit u-chart
constexpr double kPoleTol = 1e-8;     // relative rejection at the w pole
constexpr std::complex<double> kI(0.0, 1.0);

std::vector<double> freeze(const Poly1& poly) {
    std::vector<double> c(poly.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const GaussianRational& g = poly.coeffs()[i];
        if (g.im.to_double() != 0.0)
            throw std::logic_error(
                "ModuliD: resolution polynomial acquired an imaginary part");
        c[i] = g.re.to_double();
    }
    return c;
}

const std::pair<double, double>& checked_interval(const ModuliD& m,
                                                  int component) {
    const auto& iv = m.compact_intervals();
    if (component < 0 || component >= static_cast<int>(iv.size()))
        throw std::out_of_range("compact component index out of range");
    return iv[static_cast<std::size_t>(component)];
}

// prod_i (a_i^2 - s^2), factored for accuracy near the endpoints.
double radius_squared(const ModuliD& m, double s) {
    double r2 = 1.0;
    for (double ai : m.a()) r2 *= (ai - s) * (ai + s);
    return r2;
}

// Chart point at (s, theta) without the component margin check; used for
// curvature stencils that work close to the chart edge but must stay on
// the real locus.
DkPoint make_point(const ModuliD& m, double s, double theta) {
    if (!(s > 0.0))
        throw std::domain_error("dk chart: s must be positive");
    const double r2 = radius_squared(m, s);
    if (!(r2 > 0.0))
        throw std::domain_error("dk chart: no real circle at this s");
    const double radius = std::sqrt(r2);
    DkPoint pt;
    pt.s = s;
    pt.theta = theta;
    pt.z = -s * s;
    pt.x = radius * std::cos(theta) / s;
    pt.y = (m.p() - radius * std::sin(theta)) / (s * s);
    return pt;
}

// Parts of a conformal coordinate at a chart point.  With t = num/den and
// a root pair (b_1, b_2),
//   w = (b_1 + it)(b_2 + it)/(z - t^2)
//     = (b_1 den + i num)(b_2 den + i num) / (z den^2 - num^2),
// and the cleared form stays finite where t runs through infinity.
struct WParts {
    std::complex<double> num;   // x + i P(z)
    std::complex<double> den;   // y - S(z)
    std::complex<double> wnum;  // (b_1 den + i num)(b_2 den + i num)
    std::complex<double> wden;  // z den^2 - num^2
    double scale;               // |z| |den|^2 + |num|^2
};

WParts w_parts(const ModuliD& m, const DkPoint& pt, double b1, double b2) {
    WParts w;
    w.num = {pt.x, m.P(pt.z)};
    w.den = {pt.y - m.S(pt.z), 0.0};
    const std::complex<double> f1 = b1 * w.den + kI * w.num;
    const std::complex<double> f2 = b2 * w.den + kI * w.num;
    w.wnum = f1 * f2;
    w.wden = pt.z * w.den * w.den - w.num * w.num;
    w.scale = std::abs(pt.z) * std::norm(w.den) + std::norm(w.num);
    return w;
}

// The two largest roots, the pair entering the coordinate of the central
// component.
std::pair<double, double> top_pair(const ModuliD& m) {
    const auto& a = m.a();
    return {a[a.size() - 2], a[a.size() - 1]};
}

// Parts together with their closed-form s- and theta-partials, chained
// through z = -s^2, R = sqrt(prod (a_i^2 - s^2)), x, y, P and S.
struct ChartDerivs {
    DkPoint pt;
    WParts parts;
    std::complex<double> wn_s, wn_t;  // partials of wnum
    std::complex<double> wd_s, wd_t;  // partials of wden
};

ChartDerivs chart_derivs(const ModuliD& m, double s, double theta, double b1,
                         double b2) {
    ChartDerivs d;
    d.pt = make_point(m, s, theta);
    d.parts = w_parts(m, d.pt, b1, b2);

    const double z = d.pt.z;
    const double zs = -2.0 * s;
    double sum_inv = 0.0;
    for (double ai : m.a()) sum_inv += 1.0 / ((ai - s) * (ai + s));
    const double radius = std::sqrt(radius_squared(m, s));
    const double radius_s = -s * radius * sum_inv;

    const double ct = std::cos(theta), st = std::sin(theta);
    const double x_s = ct * (radius_s - radius / s) / s;
    const double x_t = -radius * st / s;
    const double y_s = -radius_s * st / (s * s) - 2.0 * d.pt.y / s;
    const double y_t = -radius * ct / (s * s);

    const std::complex<double> num_s(x_s, m.dP(z) * zs);
    const std::complex<double> num_t(x_t, 0.0);
    const std::complex<double> den_s(y_s - m.dS(z) * zs, 0.0);
    const std::complex<double> den_t(y_t, 0.0);

    const std::complex<double> f1 = b1 * d.parts.den + kI * d.parts.num;
    const std::complex<double> f2 = b2 * d.parts.den + kI * d.parts.num;
    const std::complex<double> f1_s = b1 * den_s + kI * num_s;
    const std::complex<double> f2_s = b2 * den_s + kI * num_s;
    const std::complex<double> f1_t = b1 * den_t + kI * num_t;
    const std::complex<double> f2_t = b2 * den_t + kI * num_t;
    d.wn_s = f1_s * f2 + f1 * f2_s;
    d.wn_t = f1_t * f2 + f1 * f2_t;
    d.wd_s = zs * d.parts.den * d.parts.den +
             2.0 * z * d.parts.den * den_s - 2.0 * d.parts.num * num_s;
    d.wd_t = 2.0 * z * d.parts.den * den_t - 2.0 * d.parts.num * num_t;
    return d;
}

// Value and partials of whichever of w, 1/w is bounded at the point.  Both
// reconstruct the same metric: replacing w by 1/w divides |dw|^2 and
// Im(conj(w_s) w_theta) by the same |w|^4.
struct BranchDerivs {
    bool inverted = false;
    std::complex<double> value;
    std::complex<double> d_s;
    std::complex<double> d_theta;
};

BranchDerivs branch_derivs(const ChartDerivs& d) {
    BranchDerivs out;
    out.inverted = std::abs(d.parts.wnum) > std::abs(d.parts.wden);
    if (out.inverted) {
        out.value = d.parts.wden / d.parts.wnum;
        out.d_s = (d.wd_s - out.value * d.wn_s) / d.parts.wnum;
        out.d_theta = (d.wd_t - out.value * d.wn_t) / d.parts.wnum;
    } else {
        out.value = d.parts.wnum / d.parts.wden;
        out.d_s = (d.wn_s - out.value * d.wd_s) / d.parts.wden;
        out.d_theta = (d.wn_t - out.value * d.wd_t) / d.parts.wden;
    }
    return out;
}

// Curvature and its integral run in the chart u in [0, 1] with
// s = lo + width sin^2(pi u / 2): pulled back there the sphere metric has
// bounded components and derivatives at the poles (u behaves like a
// geodesic polar radius), which fixed-step finite differences need.  In
// the raw s-chart g_ss grows like 1/(s - lo) and the curvature stencils
// near the edge would not converge.
double u_to_s(const std::pair<double, double>& iv, double u) {
    const double sn = std::sin(0.5 * kPi * u);
    return iv.first + (iv.second - iv.first) * sn * sn;
}

double s_to_u(const std::pair<double, double>& iv, double s) {
    const double f = (s - iv.first) / (iv.second - iv.first);
    return (2.0 / kPi) * std::asin(std::sqrt(f));
}

double ds_du(const std::pair<double, double>& iv, double u) {
    return (iv.second - iv.first) * 0.5 * kPi * std::sin(kPi * u);
}

FullMetricSampler u_sampler(const ModuliD& m,
                            const std::pair<double, double>& iv,
                            const std::pair<double, double>& pair) {
    FullMetricSampler fs;
    fs.p0 = 0.0;
    fs.p1 = 1.0;
    fs.metric = [&m, iv, pair](double u, double t) {
        const double s = u_to_s(iv, u);
        const double su = ds_du(iv, u);
        const BranchDerivs bd =
            branch_derivs(chart_derivs(m, s, t, pair.first, pair.second));
        // The symplectic form pulls back to su du ^ dtheta.
        const Metric2 g = metric_from_omega_w(su, bd.d_s * su, bd.d_theta);
        FullMetricSampler::Components c;
        c.E = g.g_pp;
        c.F = g.g_pt;
        c.G = g.g_tt;
        return c;
    };
    return fs;
}

double chart_curvature(const ModuliD& m, const std::pair<double, double>& iv,
                       const std::pair<double, double>& pair, double s,
                       double theta) {
    const FullMetricSampler fs = u_sampler(m, iv, pair);
    const double u = s_to_u(iv, s);
    const double h = std::min({kCurvStep, 0.25 * u, 0.25 * (1.0 - u)});
    return curvature(fs, u, theta, h);
}

// Finite-difference Jacobian d(x, z)/d(s, theta) over f_y; the margin and
// 0/0 guards live in the public wrapper.
double raw_density_ratio(const ModuliD& m, double s, double theta, double h) {
    const auto x_at = [&m](double ss, double th) {
        return make_point(m, ss, th).x;
    };
    const double xt = (x_at(s, theta + h) - x_at(s, theta - h)) / (2.0 * h);
    const double zs = (-(s + h) * (s + h) + (s - h) * (s - h)) / (2.0 * h);
    const DkPoint pt = make_point(m, s, theta);
    const double fy = -2.0 * (pt.z * pt.y + m.p());
    return -xt * zs / fy;
}

}  // namespace

bool dk_chamber_valid(const std::vector<double>& a) {
    if (a.size() < 2) return false;
    for (double v : a)
        if (!std::isfinite(v)) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!(a[i] > a[i - 1])) return false;
    return a[0] + a[1] > 0.0;
}

ModuliD::ModuliD(std::vector<double> a) : a_(std::move(a)) {
    if (a_.size() < 2)
        throw std::invalid_argument("ModuliD: need at least two roots");
    if (!dk_chamber_valid(a_))
        throw std::invalid_argument(
            "ModuliD: roots must be finite, strictly increasing, with "
            "a_1 + a_2 > 0");

    // Doubles are dyadic rationals, so the exact layer sees the roots with
    // no rounding at all.
    std::vector<Rational> exact;
    exact.reserve(a_.size());
    for (double v : a_) exact.emplace_back(mpq_class(v));
    const TyurinaData data = tyurina_data(exact);

    p_ = data.p.to_double();
    const Poly1 sym = product_plus_roots(exact, 'v');
    const int k = static_cast<int>(a_.size());
    sigma_.resize(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i)
        sigma_[static_cast<std::size_t>(i)] = sym.coeff(k - i).re.to_double();

    pc_ = freeze(data.P);
    qc_ = freeze(data.Q);
    sc_ = freeze(data.S);
    gc_.assign(static_cast<std::size_t>(data.G.degree_z()) + 1, {});
    for (int i = 0; i <= data.G.degree_z(); ++i) {
        auto& row = gc_[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(data.G.degree_t()) + 1);
        for (int j = 0; j <= data.G.degree_t(); ++j) {
            const GaussianRational g = data.G.coeff(i, j);
            row[static_cast<std::size_t>(j)] = {g.re.to_double(),
                                                g.im.to_double()};
        }
    }

    // s-intervals with prod_i (a_i^2 - s^2) > 0 and roots at both ends.
    // The squares increase across the chamber, so the j-th gap (between
    // the j-th and (j+1)-th of the |a_i|) has exactly j negative factors:
    // real circles need j even.  j >= 2 keeps a root at the lower end
    // (the j = 0 gap abuts s = 0, where the slice escapes into z >= 0),
    // and j <= k - 1 keeps one at the upper end.
    for (int j = 2; j <= k - 1; j += 2)
        intervals_.emplace_back(a_[static_cast<std::size_t>(j) - 1],
                                a_[static_cast<std::size_t>(j)]);
}

double ModuliD::sigma(int i) const {
    if (i < 0 || i >= static_cast<int>(sigma_.size()))
        throw std::out_of_range("ModuliD::sigma: index out of range");
    return sigma_[static_cast<std::size_t>(i)];
}

double ModuliD::eval(const std::vector<double>& c, double z) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

double ModuliD::eval_deriv(const std::vector<double>& c, double z) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;)
        acc = acc * z + static_cast<double>(i) * c[i];
    return acc;
}

std::complex<double> ModuliD::G(std::complex<double> z,
                                std::complex<double> t) const {
    std::complex<double> acc;
    for (auto row = gc_.rbegin(); row != gc_.rend(); ++row) {
        std::complex<double> r;
        for (auto cj = row->rbegin(); cj != row->rend(); ++cj) r = r * t + *cj;
        acc = acc * z + r;
    }
    return acc;
}

int ModuliD::central_component() const {
    // The central sphere lives over the gap (a_{k-2}, a_{k-1}), the one
    // with exactly two roots above it.  That gap has k - 2 roots below it,
    // so it carries a real component only when k is even.
    const int k = static_cast<int>(a_.size());
    if (k < 4 || k % 2 != 0)
        throw std::domain_error(
            "ModuliD: the central component is real only for even k >= 4");
    return k / 2 - 2;
}

SurfaceResidual surface_residual(const ModuliD& m, double x, double y,
                                 double z) {
    double prod = 1.0;
    for (double ai : m.a()) prod *= z + ai * ai;
    const double p = m.p();

    SurfaceResidual r;
    const double v = z * y + p;
    const double q_neg = -z * x * x;  // first term of the quadratic form
    r.r2 = prod - (q_neg + v * v);
    r.scale2 =
        1.0 + std::max({std::abs(prod), std::abs(q_neg), std::abs(v * v)});

    if (z == 0.0)
        throw std::domain_error(
            "surface_residual: the first form needs z != 0");
    const double t_x = x * x;
    const double t_y = -z * y * y;
    const double t_p = (p * p - prod) / z;
    const double t_l = 2.0 * y * p;
    r.r1 = (t_x + t_y) - (t_p + t_l);
    r.scale1 = 1.0 + std::max({std::abs(t_x), std::abs(t_y), std::abs(t_p),
                               std::abs(t_l)});
    return r;
}

DkPoint sphere_point(const ModuliD& m, int component, double s,
                     double theta) {
    const auto& iv = checked_interval(m, component);
    const double margin = kEdgeMargin * (iv.second - iv.first);
    if (!(s >= iv.first + margin && s <= iv.second - margin))
        throw std::domain_error(
            "s outside the component interval (margin 1e-4 of its width)");
    const DkPoint pt = make_point(m, s, theta);
    const SurfaceResidual r = surface_residual(m, pt.x, pt.y, pt.z);
    if (!(std::abs(r.r2) <= 1e-10 * r.scale2))
        throw std::logic_error(
            "sphere_point: constructed point misses the surface");
    return pt;
}

TCoordinate t_coordinate(const ModuliD& m, const DkPoint& pt) {
    const std::complex<double> num(pt.x, m.P(pt.z));
    const double den = pt.y - m.S(pt.z);
    TCoordinate out;
    out.pole = std::abs(den) < 1e-12 * std::max(1.0, std::abs(num));
    out.t = num / den;
    return out;
}

ResolutionResiduals resolution_identity_residuals(const ModuliD& m,
                                                  const DkPoint& pt) {
    const std::complex<double> t = t_coordinate(m, pt).t;
    const double z = pt.z;

    ResolutionResiduals out;
    const std::complex<double> lhs_b = (t * t - z) * (pt.y - m.S(z));
    const std::complex<double> rhs_b = 2.0 * (m.Q(z) + kI * m.P(z) * t);
    out.blowup = std::abs(lhs_b - rhs_b) /
                 (1.0 + std::max(std::abs(lhs_b), std::abs(rhs_b)));

    std::complex<double> prod = 1.0;
    for (double ai : m.a()) prod *= ai + kI * t;
    const std::complex<double> lhs_a =
        (z - t * t) * (pt.y + 2.0 * m.G(z, t) - m.S(z));
    const std::complex<double> rhs_a = -2.0 * prod;
    out.a_format = std::abs(lhs_a - rhs_a) /
                   (1.0 + std::max(std::abs(lhs_a), std::abs(rhs_a)));
    return out;
}

std::pair<double, double> chart_root_pair(const ModuliD& m, int component) {
    checked_interval(m, component);
    const auto& a = m.a();
    // Component index c sits over the gap (a_{2c+1}, a_{2c+2}) (0-based).
    // The adjacent pair just above the gap gives a degree-one coordinate
    // on that component; on the central component it is the two largest
    // roots.  The topmost gap of odd k has no pair above, and the pair
    // just below works there instead.  Pairs further away acquire extra
    // zeros or poles on the component and stop being coordinates.
    const std::size_t c = static_cast<std::size_t>(component);
    if (2 * c + 3 < a.size()) return {a[2 * c + 2], a[2 * c + 3]};
    return {a[2 * c], a[2 * c + 1]};
}

std::complex<double> conformal_coordinate(const ModuliD& m,
                                          const DkPoint& pt) {
    const auto [b1, b2] = top_pair(m);
    const WParts w = w_parts(m, pt, b1, b2);
    if (!(std::abs(w.wden) >= kPoleTol * w.scale))
        throw std::domain_error(
            "conformal coordinate pole (z (y - S)^2 = (x + iP)^2)");
    return w.wnum / w.wden;
}

DkSample conformal_chart(const ModuliD& m, int component, double s,
                         double theta) {
    const auto& iv = checked_interval(m, component);
    DkSample out;
    out.point = sphere_point(m, component, s, theta);

    const TCoordinate tc = t_coordinate(m, out.point);
    out.t = tc.t;
    out.t_pole = tc.pole;

    const auto pair = chart_root_pair(m, component);
    const ChartDerivs d = chart_derivs(m, s, theta, pair.first, pair.second);
    if (!(std::abs(d.parts.wden) >= kPoleTol * d.parts.scale))
        throw std::domain_error(
            "conformal coordinate pole (z (y - S)^2 = (x + iP)^2)");
    out.w = d.parts.wnum / d.parts.wden;
    out.dw_ds = (d.wn_s - out.w * d.wd_s) / d.parts.wden;
    out.dw_dtheta = (d.wn_t - out.w * d.wd_t) / d.parts.wden;

    const BranchDerivs bd = branch_derivs(d);
    const Metric2 g = metric_from_omega_w(1.0, bd.d_s, bd.d_theta);
    out.g_ss = g.g_pp;
    out.g_tt = g.g_tt;
    out.g_st = g.g_pt;
    out.kappa = chart_curvature(m, iv, pair, s, theta);
    return out;
}

DensityCheck symplectic_density_check(const ModuliD& m, int component,
                                      double s, double theta,
                                      double fd_step) {
    const auto& iv = checked_interval(m, component);
    const double h =
        fd_step > 0.0 ? fd_step : 1e-5 * (iv.second - iv.first);
    const DkPoint pt = sphere_point(m, component, s, theta);

    // Jacobian and f_y share the factor sin(theta); too close to its
    // zeros the ratio is 0/0.
    const double radius = std::sqrt(radius_squared(m, s));
    const double fy = -2.0 * (pt.z * pt.y + m.p());
    if (std::abs(fy) < 1e-6 * 2.0 * radius)
        throw std::domain_error(
            "symplectic density check is 0/0 where sin(theta) = 0");

    DensityCheck out;
    out.ratio = raw_density_ratio(m, s, theta, h);
    out.residual = std::abs(std::abs(out.ratio) - 1.0);
    return out;
}

double component_area(const ModuliD& m, int component) {
    const auto& iv = checked_interval(m, component);
    return 2.0 * kPi * (iv.second - iv.first);
}

double component_area_quadrature(const ModuliD& m, int component, int n_s,
                                 int n_theta) {
    if (n_s < 1 || n_theta < 1)
        throw std::invalid_argument(
            "component_area_quadrature: grid must be at least 1x1");
    const auto& iv = checked_interval(m, component);
    const double width = iv.second - iv.first;
    const double margin = kEdgeMargin * width;
    const double lo = iv.first + margin;
    const double span = width - 2.0 * margin;
    const double ds = span / n_s;
    const double dt = 2.0 * kPi / n_theta;
    const double h = 1e-5 * width;

    // Midpoint grid; theta midpoints never hit sin(theta) = 0.
    double sum = 0.0;
    for (int i = 0; i < n_s; ++i) {
        const double s = lo + (i + 0.5) * ds;
        double row = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            const double theta = (j + 0.5) * dt;
            row += std::abs(raw_density_ratio(m, s, theta, h));
        }
        sum += row * ds * dt;
    }
    // The measured density is a constant +-1; charge the two margin strips
    // at that constant.
    return sum + 2.0 * margin * 2.0 * kPi;
}

GaussBonnetResult total_curvature(const ModuliD& m, int component, int n_s,
                                  int n_theta, double h, unsigned threads) {
    const auto& iv = checked_interval(m, component);
    const double hh = h > 0.0 ? h : kCurvStep;
    const FullMetricSampler fs = u_sampler(m, iv, chart_root_pair(m, component));
    // The chart covers the sphere minus its two poles, which carry no area.
    return gauss_bonnet(fs, n_s, n_theta, hh, 0.0, 0.0,
                        std::numeric_limits<double>::infinity(), threads);
}

D4CompareReport d4_t_compare(const ModuliD& m, int n_samples, double tol) {
    if (m.k() != 4)
        throw std::invalid_argument(
            "d4_t_compare: the comparison is for k = 4");
    if (n_samples < 1)
        throw std::invalid_argument("d4_t_compare: need at least one sample");

    const int component = m.central_component();
    const auto& iv =
        m.compact_intervals()[static_cast<std::size_t>(component)];
    const double width = iv.second - iv.first;
    const double s1 = m.sigma(1);
    const double s2 = m.sigma(2);
    const double s3 = m.sigma(3);

    double dev_z_plain = 0.0, dev_z_conj = 0.0;
    double dev_y_plain = 0.0, dev_y_conj = 0.0;
    int used = 0;
    // Low-discrepancy sweep of the chart, skipping the poles of t (where
    // the shared denominator y - S vanishes) and the y = z locus (where
    // the two variants coincide and cannot be told apart).
    for (int i = 0; used < n_samples && i < 16 * n_samples; ++i) {
        const double f1 = std::fmod(0.6180339887498949 * i + 0.17, 1.0);
        const double f2 = std::fmod(0.4142135623730951 * i + 0.37, 1.0);
        const double s = iv.first + (0.05 + 0.90 * f1) * width;
        const double theta = 2.0 * kPi * f2;

        const DkPoint pt = sphere_point(m, component, s, theta);
        const TCoordinate tc = t_coordinate(m, pt);
        if (tc.pole) continue;
        const double den = pt.y - pt.z + s2;
        const double den_scale =
            1.0 + std::abs(pt.y) + std::abs(pt.z) + std::abs(s2);
        if (std::abs(den) < 1e-6 * den_scale) continue;
        if (std::abs(pt.y - pt.z) <
            1e-3 * (1.0 + std::abs(pt.y) + std::abs(pt.z)))
            continue;

        const std::complex<double> vz =
            std::complex<double>(pt.x, s1 * pt.z - s3) / den;
        const std::complex<double> vy =
            std::complex<double>(pt.x, s1 * pt.y - s3) / den;
        const std::complex<double> tconj = std::conj(tc.t);
        const double scale = std::max(1.0, std::abs(tc.t));
        dev_z_plain = std::max(dev_z_plain, std::abs(vz - tc.t) / scale);
        dev_z_conj = std::max(dev_z_conj, std::abs(vz - tconj) / scale);
        dev_y_plain = std::max(dev_y_plain, std::abs(vy - tc.t) / scale);
        dev_y_conj = std::max(dev_y_conj, std::abs(vy - tconj) / scale);
        ++used;
    }
    if (used < n_samples)
        throw std::runtime_error(
            "d4_t_compare: could not place enough samples away from the "
            "excluded loci");

    D4CompareReport out;
    out.variant_z = std::min(dev_z_plain, dev_z_conj);
    out.variant_y = std::min(dev_y_plain, dev_y_conj);
    const bool match_z = out.variant_z <= tol;
    const bool match_y = out.variant_y <= tol;
    if (match_z != match_y) {
        out.matched = match_z ? "z" : "y";
        out.conjugated = match_z ? dev_z_conj <= dev_z_plain
                                 : dev_y_conj <= dev_y_plain;
    }
    return out;
}

AlfFlowResult alf_flow(const ModuliD& m, const DkPoint& start, double tau,
                       double step) {
    if (!(step > 0.0) || step > 1e-3)
        throw std::invalid_argument("alf_flow: step must lie in (0, 1e-3]");
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("alf_flow: tau must be finite and >= 0");

    const double z = start.z;
    const double p = m.p();
    double prod = 1.0;
    for (double ai : m.a()) prod *= z + ai * ai;

    const auto scaled_residual = [&](std::complex<double> x,
                                     std::complex<double> y) {
        const std::complex<double> v = z * y + p;
        const std::complex<double> q_neg = -z * x * x;
        const double scale =
            1.0 + std::max({std::abs(prod), std::abs(q_neg), std::norm(v)});
        return std::abs(prod - (q_neg + v * v)) / scale;
    };
    const auto vel = [&](std::complex<double> x, std::complex<double> y) {
        return std::pair<std::complex<double>, std::complex<double>>(
            -2.0 * kI * (z * y + p), -2.0 * kI * x);
    };

    AlfFlowResult out;
    out.x = start.x;
    out.y = start.y;
    out.z = z;
    out.max_residual = scaled_residual(out.x, out.y);
    if (out.max_residual > 1e-8)
        throw std::invalid_argument("alf_flow: start is not on the surface");

    if (tau / step > 1e8)
        throw std::invalid_argument(
            "alf_flow: tau/step asks for more than 1e8 steps");
    const int n = tau == 0.0 ? 0 : static_cast<int>(std::ceil(tau / step));
    const double dt = n == 0 ? 0.0 : tau / n;
    for (int i = 0; i < n; ++i) {
        const auto [k1x, k1y] = vel(out.x, out.y);
        const auto [k2x, k2y] =
            vel(out.x + 0.5 * dt * k1x, out.y + 0.5 * dt * k1y);
        const auto [k3x, k3y] =
            vel(out.x + 0.5 * dt * k2x, out.y + 0.5 * dt * k2y);
        const auto [k4x, k4y] = vel(out.x + dt * k3x, out.y + dt * k3y);
        out.x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        out.y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        const double res = scaled_residual(out.x, out.y);
        out.max_residual = std::max(out.max_residual, res);
        if (out.max_residual > 1e-6)
            throw std::runtime_error(
                "alf_flow: surface residual drifted beyond 1e-6");
    }
    out.steps = n;
    return out;
}

std::complex<double> alf_flow_density_ratio(const ModuliD& m, int component,
                                            double s, double theta,
                                            double tau, double step,
                                            double fd) {
    const auto& iv = checked_interval(m, component);
    const double h = fd > 0.0 ? fd : 1e-5 * (iv.second - iv.first);

    const auto final_x = [&](double ss, double th) {
        return alf_flow(m, sphere_point(m, component, ss, th), tau, step).x;
    };
    const std::complex<double> xt =
        (final_x(s, theta + h) - final_x(s, theta - h)) / (2.0 * h);
    const double zs = (-(s + h) * (s + h) + (s - h) * (s - h)) / (2.0 * h);
    const std::complex<double> jac = -xt * zs;

    const AlfFlowResult end =
        alf_flow(m, sphere_point(m, component, s, theta), tau, step);
    const std::complex<double> fy = -2.0 * (end.z * end.y + m.p());
    return jac / fy;
}

}  // namespace ale
