#pragma once

// Exact arbitrary-precision integers and rationals, backed by GMP.
// Everything in this library is exact: no floating point anywhere.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dynmod {

using Integer = mpz_class;
using Rational = mpq_class;

// Build a canonical rational (gcd-reduced, positive denominator).
// mpq_class arithmetic preserves canonical form, but raw num/den or string
// construction does not, so all construction funnels through here.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

// Parse "a/b" or "a" (optional leading '-'). Throws std::invalid_argument on
// malformed input and std::domain_error on a zero denominator.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = s.find('/');
    auto check_int = [&](const std::string& part, bool sign_ok) {
        if (part.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!check_int(num, true) || !check_int(den, false))
        throw std::invalid_argument("malformed rational literal: " + s);
    return make_rational(Integer(num), Integer(den));
}

// Canonical decimal string: "-7/4", integers without the "/1".
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer numerator(const Rational& q) { return q.get_num(); }
inline Integer denominator(const Rational& q) { return q.get_den(); }

inline bool is_perfect_square(const Integer& z) {
    return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

// Integer square root of a perfect square; throws otherwise.
inline Integer exact_sqrt(const Integer& z) {
    if (!is_perfect_square(z)) throw std::domain_error("not a perfect square: " + z.get_str());
    Integer r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

inline Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;  // canonical since base was canonical
}

inline Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace dynmod
