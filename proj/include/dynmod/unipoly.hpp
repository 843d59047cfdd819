#pragma once

// Dense univariate polynomials over the rationals: the specialization layer.
// Used for specialized dynatomic polynomials (numeric parameter plugged in),
// square-free parts, and exact rational root finding.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmod/multipoly.hpp"
#include "dynmod/numeric.hpp"
#include "dynmod/rational.hpp"

namespace dynmod {

class UniPoly {
public:
    UniPoly() = default;

    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const Rational& a) { return UniPoly({a}); }

    // Interpret a MultiPoly as univariate in var; any other variable must be
    // absent (appear with exponent zero everywhere).
    static UniPoly from_multipoly(const MultiPoly& p, const std::string& var) {
        std::string v = canonical_var(var);
        long deg = std::max(p.degree(v), 0L);
        std::vector<Rational> c(static_cast<std::size_t>(deg) + 1, Rational(0));
        const auto& vars = p.vars();
        for (const auto& [e, coeff] : p.terms()) {
            long k = -1;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i] == v) {
                    k = e[i];
                } else if (e[i] != 0) {
                    throw std::invalid_argument("polynomial is not univariate in " + v);
                }
            }
            c[static_cast<std::size_t>(std::max(k, 0L))] += Rational(coeff);
        }
        return UniPoly(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Rational& operator[](std::size_t k) const {
        static const Rational kZero = 0;
        return k < c_.size() ? c_[k] : kZero;
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return UniPoly(std::move(c));
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        std::vector<Rational> c = c_;
        Rational l = c.back();
        for (auto& a : c) a /= l;
        return UniPoly(std::move(c));
    }

    // Remainder of *this by m (m != 0).
    UniPoly mod(const UniPoly& m) const {
        if (m.is_zero()) throw std::domain_error("polynomial mod zero");
        std::vector<Rational> r = c_;
        while (static_cast<long>(r.size()) - 1 >= m.degree()) {
            Rational q = r.back() / m.lead();
            std::size_t shift = r.size() - m.c_.size();
            for (std::size_t i = 0; i < m.c_.size(); ++i) r[shift + i] -= q * m.c_[i];
            while (!r.empty() && r.back() == 0) r.pop_back();
            if (r.empty()) break;
        }
        return UniPoly(std::move(r));
    }

    // Exact quotient; throws if the division leaves a remainder.
    friend UniPoly divexact(const UniPoly& p, const UniPoly& q) {
        if (q.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = p.c_;
        std::vector<Rational> quot(p.c_.size() > q.c_.size() ? p.c_.size() - q.c_.size() + 1 : 1,
                                   Rational(0));
        while (static_cast<long>(r.size()) - 1 >= q.degree() && !r.empty()) {
            Rational f = r.back() / q.lead();
            std::size_t shift = r.size() - q.c_.size();
            quot[shift] = f;
            for (std::size_t i = 0; i < q.c_.size(); ++i) r[shift + i] -= f * q.c_[i];
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        if (!r.empty()) throw NotDivisible("univariate division not exact");
        return UniPoly(std::move(quot));
    }

    // Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.
    friend UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a.mod(b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    // p / gcd(p, p'): the monic square-free part, plus a flag telling whether
    // p was already square-free (the gcd was constant).
    std::pair<UniPoly, bool> squarefree_part() const {
        if (is_zero()) throw std::domain_error("square-free part of zero polynomial");
        UniPoly g = gcd(*this, derivative());
        bool was_squarefree = g.degree() == 0;
        return {divexact(*this, g).monic(), was_squarefree};
    }

    // All rational roots (exact, sorted ascending, no multiplicity).
    std::vector<Rational> rational_roots() const {
        if (is_zero()) throw std::domain_error("rational roots of zero polynomial");
        std::vector<Rational> roots;
        std::vector<Rational> c = c_;
        std::size_t low = 0;
        while (low < c.size() && c[low] == 0) ++low;
        if (low > 0) {
            roots.push_back(Rational(0));
            c.erase(c.begin(), c.begin() + static_cast<long>(low));
        }
        if (c.size() > 1) {
            // clear denominators to a primitive integer polynomial
            Integer den = 1;
            for (const auto& a : c) den = lcm(den, a.get_den());
            std::vector<Integer> z(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                Rational v = c[i] * Rational(den);
                z[i] = v.get_num();
            }
            Integer content = 0;
            for (const auto& a : z) content = gcd(content, a);
            for (auto& a : z) a /= content;
            // candidates p/q with p | z.front(), q | z.back()
            for (const Integer& p : integer_divisors(z.front())) {
                for (const Integer& q : integer_divisors(z.back())) {
                    for (int sign : {+1, -1}) {
                        Rational cand = make_rational(sign * p, q);
                        if (eval(cand) == 0) roots.push_back(cand);
                    }
                }
            }
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }

    std::string to_text(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            bool neg = c_[i] < 0;
            Rational a = abs_rational(c_[i]);
            std::string body;
            if (a != 1 || i == 0) body = to_string(a);
            if (i >= 1) {
                if (!body.empty()) body += "*";
                body += var;
                if (i >= 2) body += "^" + std::to_string(i);
            }
            if (first) {
                out += (neg ? "-" : "") + body;
                first = false;
            } else {
                out += (neg ? " - " : " + ") + body;
            }
        }
        return out;
    }

private:
    std::vector<Rational> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

}  // namespace dynmod
