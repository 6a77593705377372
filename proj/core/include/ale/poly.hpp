#pragma once

/**
 * @file poly.hpp
 * @brief Exact uni- and bivariate polynomials over the Gaussian rationals.
 *
 * Poly1 is a dense univariate polynomial with a variable symbol and
 * coefficients in ascending degree; the symbol is part of the value and
 * mixed-variable arithmetic is rejected. Poly2 is a dense bivariate
 * polynomial in the fixed pair (z, t) with coefficients indexed by
 * (deg_z, deg_t).
 *
 * Division lives where it is exact:
 *   - Poly1::divrem is ordinary field division (coefficients lie in Q(i)).
 *   - Poly2::divrem_z divides in the z variable with coefficients in the
 *     ring Q(i)[t]; the divisor's leading z-coefficient must be a nonzero
 *     constant (a unit of that ring), which covers divisors like z - t^2.
 */

#include "ale/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ale {

class Poly1 {
public:
    Poly1() : var_('z') {}
    explicit Poly1(char var) : var_(var) {}
    Poly1(char var, std::vector<GaussianRational> coeffs)
        : var_(var), c_(std::move(coeffs)) { trim(); }

    static Poly1 constant(char var, GaussianRational v) {
        return Poly1(var, {std::move(v)});
    }
    static Poly1 monomial(char var, GaussianRational v, int deg) {
        std::vector<GaussianRational> c(static_cast<std::size_t>(deg) + 1);
        c.back() = std::move(v);
        return Poly1(var, std::move(c));
    }
    // The polynomial "var" itself.
    static Poly1 variable(char var) { return monomial(var, GaussianRational(1), 1); }

    char var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    GaussianRational coeff(int deg) const {
        if (deg < 0 || deg >= static_cast<int>(c_.size())) return GaussianRational();
        return c_[static_cast<std::size_t>(deg)];
    }
    GaussianRational lead() const {
        if (is_zero()) throw std::domain_error("Poly1: zero polynomial has no leading coefficient");
        return c_.back();
    }
    const std::vector<GaussianRational>& coeffs() const { return c_; }

    Poly1 operator-() const {
        std::vector<GaussianRational> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
        return Poly1(var_, std::move(c));
    }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        a.require_same_var(b);
        std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(int(i)) + b.coeff(int(i));
        return Poly1(a.pick_var(b), std::move(c));
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        a.require_same_var(b);
        if (a.is_zero() || b.is_zero()) return Poly1(a.pick_var(b));
        std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Poly1(a.pick_var(b), std::move(c));
    }
    friend Poly1 operator*(const GaussianRational& s, const Poly1& p) {
        std::vector<GaussianRational> c(p.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * p.c_[i];
        return Poly1(p.var_, std::move(c));
    }

    friend bool operator==(const Poly1& a, const Poly1& b) {
        return (a.is_zero() && b.is_zero()) || (a.var_ == b.var_ && a.c_ == b.c_);
    }
    friend bool operator!=(const Poly1& a, const Poly1& b) { return !(a == b); }

    GaussianRational eval(const GaussianRational& x) const {
        GaussianRational acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    double eval_double(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].re.to_double();
        return acc;
    }

    // Substitution: this(g). The result carries g's variable.
    Poly1 compose(const Poly1& g) const {
        Poly1 acc(g.var_);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * g + Poly1::constant(g.var_, c_[i]);
        return acc;
    }

    Poly1 derivative() const {
        if (c_.size() <= 1) return Poly1(var_);
        std::vector<GaussianRational> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = GaussianRational(Rational(long(i))) * c_[i];
        return Poly1(var_, std::move(c));
    }

    // Division with remainder over the field Q(i): a = q*b + r, deg r < deg b.
    static std::pair<Poly1, Poly1> divrem(const Poly1& a, const Poly1& b) {
        a.require_same_var(b);
        if (b.is_zero()) throw std::domain_error("Poly1: division by zero polynomial");
        char v = a.pick_var(b);
        Poly1 q(v), r = a;
        GaussianRational blead = b.lead();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int d = r.degree() - b.degree();
            GaussianRational f = r.lead() / blead;
            Poly1 term = monomial(v, f, d);
            q = q + term;
            r = r - term * b;
        }
        return {q, r};
    }

    // Parity split: f(v) = v*P1(v^2) + Q1(v^2). Returns {P1, Q1} in out_var.
    std::pair<Poly1, Poly1> even_odd_split(char out_var) const {
        std::vector<GaussianRational> odd, even;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i % 2 == 0)
                even.push_back(c_[i]);
            else
                odd.push_back(c_[i]);
        }
        return {Poly1(out_var, std::move(odd)), Poly1(out_var, std::move(even))};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].str() + ")";
            if (i >= 1) { s += "*"; s += var_; }
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void require_same_var(const Poly1& o) const {
        if (!is_zero() && !o.is_zero() && var_ != o.var_ && degree() > 0 && o.degree() > 0)
            throw std::invalid_argument(std::string("Poly1: variable mismatch ") + var_ + " vs " + o.var_);
    }
    char pick_var(const Poly1& o) const { return degree() > 0 ? var_ : o.var_; }

    char var_;
    std::vector<GaussianRational> c_;  // ascending degree, trimmed
};

class Poly2 {
public:
    Poly2() = default;
    explicit Poly2(std::vector<std::vector<GaussianRational>> coeffs)
        : c_(std::move(coeffs)) { trim(); }

    static Poly2 constant(GaussianRational v) {
        return Poly2({{std::move(v)}});
    }
    static Poly2 monomial(GaussianRational v, int deg_z, int deg_t) {
        std::vector<std::vector<GaussianRational>> c(static_cast<std::size_t>(deg_z) + 1);
        c.back().resize(static_cast<std::size_t>(deg_t) + 1);
        c.back().back() = std::move(v);
        return Poly2(std::move(c));
    }
    // Lift a univariate polynomial into (z, t).
    static Poly2 from_z(const Poly1& p) {
        std::vector<std::vector<GaussianRational>> c;
        for (int i = 0; i <= p.degree(); ++i) c.push_back({p.coeff(i)});
        return Poly2(std::move(c));
    }
    static Poly2 from_t(const Poly1& p) {
        std::vector<std::vector<GaussianRational>> c(1);
        for (int j = 0; j <= p.degree(); ++j) c[0].push_back(p.coeff(j));
        return Poly2(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree_z() const { return static_cast<int>(c_.size()) - 1; }
    int degree_t() const {
        int d = -1;
        for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
        return d;
    }

    GaussianRational coeff(int deg_z, int deg_t) const {
        if (deg_z < 0 || deg_z >= static_cast<int>(c_.size())) return GaussianRational();
        const auto& row = c_[static_cast<std::size_t>(deg_z)];
        if (deg_t < 0 || deg_t >= static_cast<int>(row.size())) return GaussianRational();
        return row[static_cast<std::size_t>(deg_t)];
    }

    // Coefficient of z^deg_z as a polynomial in t.
    Poly1 z_coeff(int deg_z, char t_var = 't') const {
        if (deg_z < 0 || deg_z >= static_cast<int>(c_.size())) return Poly1(t_var);
        return Poly1(t_var, c_[static_cast<std::size_t>(deg_z)]);
    }

    Poly2 operator-() const {
        auto c = c_;
        for (auto& row : c)
            for (auto& v : row) v = -v;
        return Poly2(std::move(c));
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        std::vector<std::vector<GaussianRational>> c(
            std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::size_t w = std::max(a.row_width(i), b.row_width(i));
            c[i].resize(w);
            for (std::size_t j = 0; j < w; ++j)
                c[i][j] = a.coeff(int(i), int(j)) + b.coeff(int(i), int(j));
        }
        return Poly2(std::move(c));
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        if (a.is_zero() || b.is_zero()) return Poly2();
        std::vector<std::vector<GaussianRational>> c(a.c_.size() + b.c_.size() - 1);
        int dt = a.degree_t() + b.degree_t();
        for (auto& row : c) row.resize(static_cast<std::size_t>(dt) + 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < a.c_[i].size(); ++j) {
                if (a.c_[i][j].is_zero()) continue;
                for (std::size_t k = 0; k < b.c_.size(); ++k)
                    for (std::size_t l = 0; l < b.c_[k].size(); ++l)
                        c[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
            }
        return Poly2(std::move(c));
    }
    friend Poly2 operator*(const GaussianRational& s, const Poly2& p) {
        auto c = p.c_;
        for (auto& row : c)
            for (auto& v : row) v = s * v;
        return Poly2(std::move(c));
    }

    friend bool operator==(const Poly2& a, const Poly2& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    GaussianRational eval(const GaussianRational& z, const GaussianRational& t) const {
        GaussianRational acc;
        for (std::size_t i = c_.size(); i-- > 0;) {
            GaussianRational row;
            for (std::size_t j = c_[i].size(); j-- > 0;) row = row * t + c_[i][j];
            acc = acc * z + row;
        }
        return acc;
    }

    // Substitute z := s(t); the result is univariate in t.
    Poly1 substitute_z(const Poly1& s) const {
        Poly1 acc(s.var());
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * s + Poly1(s.var(), c_[i]);
        return acc;
    }

    Poly2 conj_coeffs() const {
        auto c = c_;
        for (auto& row : c)
            for (auto& v : row) v = v.conj();
        return Poly2(std::move(c));
    }

    // G(z, -t).
    Poly2 negate_t() const {
        auto c = c_;
        for (auto& row : c)
            for (std::size_t j = 1; j < row.size(); j += 2) row[j] = -row[j];
        return Poly2(std::move(c));
    }

    /**
     * Division with remainder in z: a = q*b + r with deg_z(r) < deg_z(b).
     * Coefficients live in Q(i)[t], so the divisor's leading z-coefficient
     * must be a nonzero constant in t; otherwise the quotient would leave
     * the polynomial ring.
     */
    static std::pair<Poly2, Poly2> divrem_z(const Poly2& a, const Poly2& b) {
        if (b.is_zero()) throw std::domain_error("Poly2: division by zero polynomial");
        Poly1 blead = b.z_coeff(b.degree_z());
        if (blead.degree() != 0)
            throw std::domain_error("Poly2: divisor leading z-coefficient must be constant in t");
        GaussianRational inv_lead = GaussianRational(1) / blead.coeff(0);
        Poly2 q, r = a;
        while (!r.is_zero() && r.degree_z() >= b.degree_z()) {
            int d = r.degree_z() - b.degree_z();
            Poly1 rl = r.z_coeff(r.degree_z());
            // term = (rl / blead) * z^d
            Poly2 term;
            {
                std::vector<std::vector<GaussianRational>> c(static_cast<std::size_t>(d) + 1);
                for (int j = 0; j <= rl.degree(); ++j)
                    c.back().push_back(inv_lead * rl.coeff(j));
                term = Poly2(std::move(c));
            }
            q = q + term;
            r = r - term * b;
        }
        return {q, r};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < c_[i].size(); ++j) {
                if (c_[i][j].is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += "(" + c_[i][j].str() + ")";
                if (i >= 1) s += "*z" + (i >= 2 ? "^" + std::to_string(i) : "");
                if (j >= 1) s += "*t" + (j >= 2 ? "^" + std::to_string(j) : "");
            }
        return s;
    }

private:
    std::size_t row_width(std::size_t i) const {
        return i < c_.size() ? c_[i].size() : 0;
    }
    void trim() {
        for (auto& row : c_)
            while (!row.empty() && row.back().is_zero()) row.pop_back();
        while (!c_.empty() && c_.back().empty()) c_.pop_back();
    }

    // c_[i][j] = coefficient of z^i t^j; rows trimmed, trailing empty rows trimmed
    std::vector<std::vector<GaussianRational>> c_;
};

}  // namespace ale
