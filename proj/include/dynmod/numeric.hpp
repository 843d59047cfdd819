#pragma once

// Small number-theoretic helpers shared across the library: Moebius function,
// divisor lists, and the degree counts D(N) / R(N) for period-N structures.
//
//   D(N) = sum over n | N of mu(N/n) * 2^n   (degree in x of the period-N polynomial)
//   R(N) = D(N) / N                          (number of length-N cycles it cuts out)

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dynmod/rational.hpp"

namespace dynmod {

// Moebius function; rejects n < 1.
inline int mobius(long n) {
    if (n < 1) throw std::domain_error("mobius undefined for n < 1");
    int primes = 0;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;  // square factor
            ++primes;
        }
    }
    if (n > 1) ++primes;
    return (primes % 2 == 0) ? 1 : -1;
}

// Divisors of n in ascending order; rejects n < 1.
inline std::vector<long> divisors(long n) {
    if (n < 1) throw std::domain_error("divisors undefined for n < 1");
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

// D(N) = sum_{n|N} mu(N/n) 2^n. Exact in 64 bits for N <= 62.
inline long long period_degree(long N) {
    if (N < 1) throw std::domain_error("period_degree undefined for N < 1");
    if (N > 62) throw std::domain_error("period_degree overflows past N = 62");
    long long total = 0;
    for (long n : divisors(N)) total += static_cast<long long>(mobius(N / n)) * (1LL << n);
    return total;
}

// R(N) = D(N)/N, the count of length-N cycles; the division is always exact.
inline long long cycle_count_bound(long N) {
    long long d = period_degree(N);
    if (d % N != 0) throw std::logic_error("D(N) not divisible by N");
    return d / N;
}

// Prime factorization by trial division. Bails out (domain_error) if a
// composite cofactor survives the trial bound; desk-scale inputs never do.
inline std::vector<std::pair<Integer, int>> factorize(Integer n) {
    if (n < 1) throw std::domain_error("factorize requires n >= 1");
    std::vector<std::pair<Integer, int>> out;
    auto strip = [&](const Integer& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    for (Integer p = 3; p * p <= n && p < 2000000; p += 2) strip(p);
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw std::domain_error("coefficient too large to factor: " + n.get_str());
        out.emplace_back(n, 1);
    }
    return out;
}

// All positive divisors of |n| (n != 0), ascending.
inline std::vector<Integer> integer_divisors(const Integer& n) {
    if (n == 0) throw std::domain_error("divisors of zero requested");
    auto fac = factorize(abs(n));
    std::vector<Integer> out{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = out.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dynmod
