#pragma once

// Dynatomic polynomials for the quadratic family f_t(x) = x^2 + t.
//
//   Phi_N(x,t)   = prod over n | N of (f_t^n(x) - x)^mobius(N/n),
//                  computed as one exact division of the mobius(+1) product
//                  by the mobius(-1) product (never by fraction arithmetic);
//                  its roots are the points of formal period N.
//   Phi_{M,N}    = Phi_N(-f_t^{M-1}(x), t) for M >= 1 (the preperiod-M layer);
//                  equivalently Phi_N(f^M(x))/Phi_N(f^(M-1)(x)), kept around
//                  as an independent cross-check oracle.
//
// Degrees follow D(N) = sum mu(N/n) 2^n and deg_x Phi_{M,N} = 2^(M-1) D(N).
// Everything respects a configurable cap on deg_x so runaway requests fail
// fast with a clear error instead of exhausting memory.

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmod/multipoly.hpp"
#include "dynmod/numeric.hpp"
#include "dynmod/rational.hpp"
#include "dynmod/resultant.hpp"
#include "dynmod/unipoly.hpp"

namespace dynmod {

inline constexpr long kDefaultDegreeCap = 1024;

struct DynatomicTable {
    long n = 0;
    long long degree_x = 0;    // D(n), from the mobius sum
    long long cycle_count = 0; // R(n) = D(n)/n
    MultiPoly phi;
};

namespace detail {

struct DynCache {
    std::mutex mu;
    std::vector<MultiPoly> iterates;  // f^0 = x, f^1 = x^2 + t, ...
    std::map<long, MultiPoly> phi;    // N -> Phi_N
};

inline DynCache& dyn_cache() {
    static DynCache cache;
    return cache;
}

inline void check_cap(long long need, long cap, const std::string& what) {
    if (cap < 1) throw std::domain_error("degree cap must be positive");
    if (need > cap)
        throw std::domain_error("degree cap exceeded: " + what + " needs deg_x " +
                                std::to_string(need) + " > cap " + std::to_string(cap));
}

// f^N under an already-held cache lock.
inline const MultiPoly& iterate_locked(DynCache& cache, long N) {
    if (cache.iterates.empty()) cache.iterates.push_back(MultiPoly::variable("x1"));
    const MultiPoly t = MultiPoly::variable("t");
    while (static_cast<long>(cache.iterates.size()) <= N) {
        const MultiPoly& prev = cache.iterates.back();
        cache.iterates.push_back(prev * prev + t);
    }
    return cache.iterates[static_cast<std::size_t>(N)];
}

inline const MultiPoly& phi_locked(DynCache& cache, long N) {
    auto it = cache.phi.find(N);
    if (it != cache.phi.end()) return it->second;
    const MultiPoly x = MultiPoly::variable("x1");
    MultiPoly num = MultiPoly::constant(1, {"t", "x1"});
    MultiPoly den = num;
    for (long n : divisors(N)) {
        int mu = mobius(N / n);
        if (mu == 0) continue;
        MultiPoly factor = iterate_locked(cache, n) - x;
        (mu > 0 ? num : den) *= factor;
    }
    MultiPoly phi = divexact(num, den);
    if (phi.degree("x1") != period_degree(N))
        throw std::logic_error("dynatomic degree mismatch at N = " + std::to_string(N));
    return cache.phi.emplace(N, std::move(phi)).first->second;
}

// Phi_N with x replaced by -x (flip the sign of odd-x terms): the M = 1 layer.
inline MultiPoly negate_x(const MultiPoly& p) {
    std::vector<std::pair<MultiPoly::ExpVec, Integer>> terms;
    const auto& vars = p.vars();
    std::size_t xi = vars.size();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == "x1") xi = i;
    for (const auto& [e, c] : p.terms())
        terms.emplace_back(e, (xi < vars.size() && e[xi] % 2 == 1) ? Integer(-c) : c);
    return MultiPoly::from_terms(vars, terms);
}

}  // namespace detail

// f_t^N(x), exact; requires 2^N within the cap.
inline MultiPoly iterate_poly(long N, long cap = kDefaultDegreeCap) {
    if (N < 0) throw std::domain_error("iterate_poly needs N >= 0");
    if (N > 62 || (N > 0 && (1LL << N) > cap))
        detail::check_cap(N > 62 ? cap + 1LL : (1LL << N), cap, "f^" + std::to_string(N));
    auto& cache = detail::dyn_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    return detail::iterate_locked(cache, N);
}

// Phi_N plus its degree bookkeeping (D(N), R(N) straight from the mobius sum).
inline DynatomicTable dynatomic(long N, long cap = kDefaultDegreeCap) {
    if (N < 1) throw std::domain_error("dynatomic needs N >= 1");
    if (N > 62 || (1LL << N) > cap) detail::check_cap(N > 62 ? cap + 1LL : (1LL << N), cap, "Phi_" + std::to_string(N));
    auto& cache = detail::dyn_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    DynatomicTable out;
    out.n = N;
    out.degree_x = period_degree(N);
    out.cycle_count = cycle_count_bound(N);
    out.phi = detail::phi_locked(cache, N);
    return out;
}

// deg_x Phi_{M,N} = 2^(M-1) D(N) for M >= 1, D(N) for M = 0.
inline long long gen_dynatomic_degree(long M, long N) {
    if (M < 0 || N < 1) throw std::domain_error("portrait indices need M >= 0, N >= 1");
    long long d = period_degree(N);
    if (M >= 1) {
        if (M - 1 >= 62) throw std::domain_error("preperiod too large");
        d *= (1LL << (M - 1));
    }
    return d;
}

// Phi_{M,N}(x,t): the generalized dynatomic polynomial, computed through the
// substitution identity Phi_N(-f^(M-1)(x), t) for M >= 1.
inline MultiPoly gen_dynatomic(long M, long N, long cap = kDefaultDegreeCap) {
    detail::check_cap(gen_dynatomic_degree(M, N), cap,
                      "Phi_{" + std::to_string(M) + "," + std::to_string(N) + "}");
    MultiPoly phi = dynatomic(N, cap).phi;
    if (M == 0) return phi;
    if (M == 1) return detail::negate_x(phi);
    MultiPoly inner = -iterate_poly(M - 1, cap);
    return substitute(phi, "x1", inner);
}

// Oracle route: Phi_{M,N} = Phi_N(f^M(x),t) / Phi_N(f^(M-1)(x),t), M >= 1.
// Slower than gen_dynatomic but independent of the substitution identity.
inline MultiPoly gen_dynatomic_quotient(long M, long N, long cap = kDefaultDegreeCap) {
    if (M < 1) throw std::domain_error("quotient route needs M >= 1");
    detail::check_cap(gen_dynatomic_degree(M, N) * 2, cap * 2LL,
                      "Phi_{" + std::to_string(M) + "," + std::to_string(N) + "} (quotient)");
    MultiPoly phi = dynatomic(N, cap).phi;
    MultiPoly num = substitute(phi, "x1", iterate_poly(M, cap));
    MultiPoly den = substitute(phi, "x1", iterate_poly(M - 1, cap));
    return divexact(num, den);
}

// f^N(x) - x == prod over n | N of Phi_n(x,t), checked exactly.
inline bool verify_cycle_factorization(long N, long cap = kDefaultDegreeCap) {
    if (N < 1) throw std::domain_error("verify_cycle_factorization needs N >= 1");
    MultiPoly prod = MultiPoly::constant(1, {"t", "x1"});
    for (long n : divisors(N)) prod *= dynatomic(n, cap).phi;
    return prod == iterate_poly(N, cap) - MultiPoly::variable("x1");
}

// f^(M+N)(x) - f^M(x) == prod_{m=0..M} prod_{n|N} Phi_{m,n}, checked exactly.
inline bool verify_preper_factorization(long M, long N, long cap = kDefaultDegreeCap) {
    if (M < 1) throw std::domain_error("verify_preper_factorization needs M >= 1");
    if (N < 1) throw std::domain_error("verify_preper_factorization needs N >= 1");
    if (M + N > 62) throw std::domain_error("identity degree too large");
    detail::check_cap(1LL << (M + N), cap, "f^" + std::to_string(M + N));
    MultiPoly prod = MultiPoly::constant(1, {"t", "x1"});
    for (long m = 0; m <= M; ++m)
        for (long n : divisors(N)) prod *= gen_dynatomic(m, n, cap);
    return prod == iterate_poly(M + N, cap) - iterate_poly(M, cap);
}

// disc_x Phi_{M,N}: the parameters where the portrait-(M,N) fiber degenerates,
// as an integer-coefficient polynomial in t.
inline MultiPoly branch_poly(long M, long N, long cap = kDefaultDegreeCap) {
    return discriminant(gen_dynatomic(M, N, cap), "x1");
}

// Phi_{M,N}(x, c): specialize the parameter to a rational number.
inline UniPoly specialize(long M, long N, const Rational& c, long cap = kDefaultDegreeCap) {
    MultiPoly phi = gen_dynatomic(M, N, cap);
    const auto& vars = phi.vars();
    std::size_t ti = vars.size(), xi = vars.size();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == "t") ti = i;
        if (vars[i] == "x1") xi = i;
    }
    std::vector<Rational> cpow{Rational(1)};
    std::vector<Rational> coeffs(static_cast<std::size_t>(phi.degree("x1")) + 1, Rational(0));
    for (const auto& [e, coeff] : phi.terms()) {
        int tp = ti < vars.size() ? e[ti] : 0;
        int xp = xi < vars.size() ? e[xi] : 0;
        while (static_cast<int>(cpow.size()) <= tp) cpow.push_back(cpow.back() * c);
        coeffs[static_cast<std::size_t>(xp)] += Rational(coeff) * cpow[static_cast<std::size_t>(tp)];
    }
    return UniPoly(std::move(coeffs));
}

}  // namespace dynmod
