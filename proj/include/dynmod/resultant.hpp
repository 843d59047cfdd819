#pragma once

// Resultants and discriminants of multivariate polynomials with respect to
// one variable, computed exactly: Sylvester matrix + fraction-free Bareiss
// elimination (every division along the way is exact in Z[remaining vars]).

#include <stdexcept>
#include <string>
#include <vector>

#include "dynmod/multipoly.hpp"

namespace dynmod {

// Determinant of a square MultiPoly matrix by Bareiss one-step elimination.
// The matrix is consumed.
inline MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>>& m,
                                     const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(1, vars);
    int sign = 1;
    MultiPoly denom = MultiPoly::constant(1, vars);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t pivot = k;
            for (std::size_t r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot == k) return MultiPoly::zero(vars);  // singular column
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], denom);
            m[i][k] = MultiPoly::zero(vars);
        }
        denom = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign > 0 ? det : -det;
}

// Res_var(p, q) over Z[remaining vars]. Degenerate degrees follow the usual
// conventions: Res(a, q) = a^deg(q) for constants, Res over two constants = 1,
// and a zero input gives 0.
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
    std::string v = canonical_var(var);
    auto [a, b] = MultiPoly::aligned(p, q);
    std::vector<std::string> rest;
    for (const auto& w : a.vars())
        if (w != v) rest.push_back(w);
    if (a.is_zero() || b.is_zero()) return MultiPoly::zero(rest);

    std::vector<MultiPoly> pc = a.decompose(v);
    std::vector<MultiPoly> qc = b.decompose(v);
    const std::size_t dp = pc.size() - 1, dq = qc.size() - 1;
    if (dp == 0 && dq == 0) return MultiPoly::constant(1, rest);
    if (dp == 0) return pc[0].pow(static_cast<long>(dq));
    if (dq == 0) return qc[0].pow(static_cast<long>(dp));

    const std::size_t n = dp + dq;
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly::zero(rest)));
    for (std::size_t r = 0; r < dq; ++r)
        for (std::size_t k = 0; k <= dp; ++k) m[r][r + k] = pc[dp - k];
    for (std::size_t r = 0; r < dp; ++r)
        for (std::size_t k = 0; k <= dq; ++k) m[dq + r][r + k] = qc[dq - k];
    return bareiss_determinant(m, rest);
}

// disc_var(p) = (-1)^(d(d-1)/2) * Res_var(p, dp/dvar) / lc_var(p), d = deg >= 1.
inline MultiPoly discriminant(const MultiPoly& p, const std::string& var) {
    std::string v = canonical_var(var);
    long d = p.degree(v);
    if (d < 1) throw std::domain_error("discriminant needs degree >= 1 in " + v);
    MultiPoly res = resultant(p, p.derivative(v), v);
    MultiPoly lc = p.decompose(v).back();
    MultiPoly quot = divexact(res, lc.align_to(res.vars()));
    return ((d * (d - 1) / 2) % 2 == 0) ? quot : -quot;
}

}  // namespace dynmod
