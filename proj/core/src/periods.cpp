#include "ale/periods.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ale/rational.hpp"

namespace ale {

namespace {

constexpr double kPi = std::numbers::pi;

// Exact coordinates of c in the given root basis.  The Gram matrix of a
// root basis is nonsingular, so solving Gram . x = (pair(b_i, c)) pins
// down the only candidate; reconstructing sum x_i b_i and comparing it to
// c coefficient by coefficient then decides membership in the span.
std::vector<Rational> span_coordinates(const std::vector<DivClass>& basis,
                                       const DivClass& c) {
    const std::size_t n = basis.size();
    std::vector<std::vector<Rational>> aug(n,
                                           std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = Rational(static_cast<long>(pair(basis[i], basis[j])));
        aug[i][n] = Rational(static_cast<long>(pair(basis[i], c)));
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col].is_zero()) ++piv;
        if (piv == n)
            throw std::runtime_error("span_coordinates: singular Gram matrix");
        std::swap(aug[piv], aug[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col].is_zero()) continue;
            const Rational f = aug[r][col] / aug[col][col];
            for (std::size_t j = col; j <= n; ++j)
                aug[r][j] = aug[r][j] - f * aug[col][j];
        }
    }

    std::vector<Rational> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) x.push_back(aug[i][n] / aug[i][i]);

    for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < n; ++i)
            s = s + x[i] * Rational(static_cast<long>(basis[i].coeffs[j]));
        if (s != Rational(static_cast<long>(c.coeffs[j])))
            throw std::invalid_argument(
                "period: class lies outside the span of the simple-root basis");
    }
    return x;
}

// Orientation signs turning the displayed basis into the classes with
// positive period on the ascending chamber: the chains flip to
// E_i - E_{i+1} and the -P slots of E6 and E8 flip to P, while the two
// non-chain generators of E7 (P + R and R) and the leading Q and S slots
// already carry the positive combination.
std::vector<int> effective_orientation(int k) {
    std::vector<int> eps(static_cast<std::size_t>(k), -1);
    eps[0] = 1;
    if (k == 7) eps[1] = 1;
    return eps;
}

std::vector<double> normalized_root_periods(const ModuliE& m) {
    const auto eps = effective_orientation(m.k());
    std::vector<double> p = root_basis_periods(m);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] *= eps[i];
    return p;
}

// Wall of the chamber crossed when the chain root E_i - E_{i-1} flips.
std::string chain_wall(int i) {
    return "a" + std::to_string(i) + " > a" + std::to_string(i - 1);
}

std::string sum_of(int lo, int hi) {
    std::string s;
    for (int i = lo; i <= hi; ++i) {
        if (!s.empty()) s += " + ";
        s += "a" + std::to_string(i);
    }
    return s;
}

// Wall attached to slot `slot` of the effectively oriented E_k basis.
std::string e_wall(int k, std::size_t slot) {
    if (slot >= 2) return chain_wall(static_cast<int>(slot));
    switch (k) {
        case 6:
            return slot == 0 ? sum_of(2, 5) + " > a0" : "a1 + a2 > 0";
        case 7:
            return slot == 0 ? sum_of(1, 6) + " > a0" : sum_of(3, 6) + " > a0";
        default:
            return slot == 0 ? sum_of(2, 7) + " > a0" : "a1 + a2 > 0";
    }
}

}  // namespace

ModuliE::ModuliE(int k, std::vector<double> a, double a0)
    : k_(k), a_(std::move(a)), a0_(a0) {
    if (k_ != 6 && k_ != 7 && k_ != 8)
        throw std::invalid_argument("ModuliE: k must be 6, 7 or 8");
    if (a_.size() != static_cast<std::size_t>(k_ - 1))
        throw std::invalid_argument(
            "ModuliE: expected k - 1 marked-point parameters");
    for (double v : a_)
        if (!std::isfinite(v))
            throw std::invalid_argument("ModuliE: parameters must be finite");
    if (!std::isfinite(a0_))
        throw std::invalid_argument("ModuliE: a0 must be finite");
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = i + 1; j < a_.size(); ++j)
            if (a_[i] == a_[j])
                throw std::invalid_argument(
                    "ModuliE: marked points must be distinct");
}

std::vector<double> root_basis_periods(const ModuliE& m) {
    const auto& a = m.a();  // a[i] holds a_{i+1}
    const double a0 = m.a0();
    const auto sum = [&a](int lo, int hi) {
        double s = 0.0;
        for (int i = lo; i <= hi; ++i) s += a[static_cast<std::size_t>(i - 1)];
        return s;
    };
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(m.k()));
    switch (m.k()) {
        case 6:  // Q, -P
            p = {sum(2, 5) - a0, -(a[0] + a[1])};
            break;
        case 7:  // P + R, R
            p = {sum(1, 6) - a0, sum(3, 6) - a0};
            break;
        default:  // S, -P
            p = {sum(2, 7) - a0, -(a[0] + a[1])};
            break;
    }
    // Chain slot i holds the displayed class E_i - E_{i-1}, whose period
    // is a_{i-1} - a_i (see the header: linearity over the conic classes
    // reverses the endpoint difference).
    for (int i = 2; i <= m.k() - 1; ++i)
        p.push_back(a[static_cast<std::size_t>(i - 2)] -
                    a[static_cast<std::size_t>(i - 1)]);
    return p;
}

std::vector<double> chamber_periods(const ModuliE& m) {
    return normalized_root_periods(m);
}

double period(const ModuliE& m, const DivClass& c) {
    const ModelPtr model = make_ek_model(m.k());
    if (!c.model || !same_model(*c.model, *model))
        throw std::invalid_argument(
            "period: class does not live on the matching E_k model");
    const auto basis = orthogonal_root_basis("E", m.k());
    const auto x = span_coordinates(basis, c);
    const auto values = root_basis_periods(m);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i].to_double() * values[i];
    return s;
}

DecompositionReport decomposition_identities(int k) {
    if (k != 6 && k != 7 && k != 8)
        throw std::invalid_argument(
            "decomposition_identities: k must be 6, 7 or 8");
    const ModelPtr m = make_ek_model(k);
    const DivClass H = basis_class(m, "H");
    const DivClass X = basis_class(m, "X");
    const DivClass Y = basis_class(m, "Y");
    const auto E = [&m](int i) {
        return basis_class(m, "E" + std::to_string(i));
    };
    const auto conic = [&](int i, int j) { return H - E(i) - E(j); };

    DecompositionReport report;
    report.pass = true;
    const auto add = [&report](std::string name, const DivClass& lhs,
                               const DivClass& rhs, std::string rhs_str) {
        DecompositionCheck check;
        check.name = std::move(name);
        check.lhs = lhs.str();
        check.rhs = std::move(rhs_str);
        check.pass = (lhs == rhs);
        report.pass = report.pass && check.pass;
        report.checks.push_back(std::move(check));
    };

    add("P", H - E(1) - E(2) - X, conic(1, 2) - X,
        "(" + conic(1, 2).str() + ") - X");
    add("Q", 2 * H - E(2) - E(3) - E(4) - E(5) - X - Y,
        (conic(2, 3) - X) + (conic(4, 5) - Y),
        "(" + (conic(2, 3) - X).str() + ") + (" + (conic(4, 5) - Y).str() +
            ")");
    if (k >= 7)
        add("R", 2 * H - E(3) - E(4) - E(5) - E(6) - X - Y,
            (conic(3, 4) - X) + (conic(5, 6) - Y),
            "(" + (conic(3, 4) - X).str() + ") + (" +
                (conic(5, 6) - Y).str() + ")");
    if (k == 8) {
        DivClass S = 3 * H - X - X - Y;
        for (int i = 2; i <= 7; ++i) S = S - E(i);
        add("S", S, (conic(2, 3) - X) + (conic(4, 5) - X) + (conic(6, 7) - Y),
            "(" + (conic(2, 3) - X).str() + ") + (" +
                (conic(4, 5) - X).str() + ") + (" + (conic(6, 7) - Y).str() +
                ")");
    }
    return report;
}

ChamberReport chamber_check(const std::string& type_label,
                            const std::vector<double>& a) {
    if (type_label != "A" && type_label != "D")
        throw std::invalid_argument(
            "chamber_check: type must be \"A\" or \"D\" (E moduli carry a0; "
            "use the ModuliE overload)");
    if (a.size() < 2)
        throw std::invalid_argument(
            "chamber_check: need at least two parameters");
    for (double v : a)
        if (!std::isfinite(v))
            throw std::invalid_argument(
                "chamber_check: parameters must be finite");

    ChamberReport report;
    report.pass = true;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (!(a[i] > a[i - 1])) {
            report.pass = false;
            report.violated.push_back(chain_wall(static_cast<int>(i) + 1));
        }
    }
    if (type_label == "D" && !(a[0] + a[1] > 0.0)) {
        report.pass = false;
        report.violated.push_back("a1 + a2 > 0");
    }
    return report;
}

ChamberReport chamber_check(const ModuliE& m) {
    const auto p = normalized_root_periods(m);
    ChamberReport report;
    report.pass = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) {
            report.pass = false;
            report.violated.push_back(e_wall(m.k(), i));
        }
    }
    return report;
}

std::vector<double> simple_root_areas(const std::string& type_label,
                                      const std::vector<double>& a) {
    const auto report = chamber_check(type_label, a);
    if (!report.pass)
        throw std::domain_error(
            "simple_root_areas: moduli violate the chamber wall " +
            report.violated.front());
    std::vector<double> areas;
    if (type_label == "D") areas.push_back(2.0 * kPi * (a[0] + a[1]));
    for (std::size_t i = 1; i < a.size(); ++i)
        areas.push_back(2.0 * kPi * (a[i] - a[i - 1]));
    return areas;
}

std::vector<double> simple_root_areas(const ModuliE& m) {
    const auto report = chamber_check(m);
    if (!report.pass)
        throw std::domain_error(
            "simple_root_areas: moduli violate the chamber wall " +
            report.violated.front());
    std::vector<double> areas = normalized_root_periods(m);
    for (double& v : areas) v *= 2.0 * kPi;
    return areas;
}

}  // namespace ale
