#pragma once

// Sparse multivariate polynomials over arbitrary-precision integers.
//
// Variables are named "t", "x1", "x2", ... ("x" is accepted as an alias for
// "x1") and are kept in the canonical order t < x1 < x2 < ... . Terms are held
// in a map whose iteration order is the canonical serialization order: pure
// lexicographic with the highest variable most significant, descending — so
// x1^4 + 2*t*x1^2 - x1 + t^2 + t prints exactly in that sequence and the
// leading term of the order sits at begin().
//
// Multiplication dispatches to a Kronecker-substitution fast path for large
// operands: pack each polynomial into one huge integer (one fixed-width slot
// per possible exponent tuple), multiply with GMP, unpack. Signed inputs are
// split into positive/negative parts first so slots never borrow.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmod/rational.hpp"
#include "json.hpp"

namespace dynmod {

// Thrown when exact polynomial division fails over the integers.
struct NotDivisible : std::domain_error {
    using std::domain_error::domain_error;
};

// "x" -> "x1"; validates that the name is t or x<k> (k >= 1).
inline std::string canonical_var(const std::string& name) {
    if (name == "t") return name;
    if (name == "x") return "x1";
    if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
        for (std::size_t i = 1; i < name.size(); ++i)
            if (name[i] < '0' || name[i] > '9') throw std::invalid_argument("bad variable name: " + name);
        return name;
    }
    throw std::invalid_argument("bad variable name: " + name);
}

// t ranks 0, x<k> ranks k; canonical variable order is ascending rank.
inline long var_rank(const std::string& canonical_name) {
    if (canonical_name == "t") return 0;
    return std::stol(canonical_name.substr(1));
}

class MultiPoly {
public:
    using ExpVec = std::vector<int>;

    // Map comparator: "less" means earlier in print order, i.e. larger in the
    // monomial order (compare exponents from the highest variable down).
    struct TermOrder {
        bool operator()(const ExpVec& a, const ExpVec& b) const {
            for (std::size_t i = a.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] > b[i];
            return false;
        }
    };
    using TermMap = std::map<ExpVec, Integer, TermOrder>;

    MultiPoly() = default;

    static MultiPoly zero(std::vector<std::string> vars = {}) {
        MultiPoly p;
        p.vars_ = normalize_vars(std::move(vars));
        return p;
    }

    static MultiPoly constant(Integer c, std::vector<std::string> vars = {}) {
        MultiPoly p = zero(std::move(vars));
        if (c != 0) p.terms_.emplace(ExpVec(p.vars_.size(), 0), std::move(c));
        return p;
    }

    static MultiPoly variable(const std::string& name) {
        MultiPoly p = zero({canonical_var(name)});
        p.terms_.emplace(ExpVec{1}, Integer(1));
        return p;
    }

    static MultiPoly from_terms(std::vector<std::string> vars,
                                const std::vector<std::pair<ExpVec, Integer>>& terms) {
        MultiPoly p = zero(std::move(vars));
        for (const auto& [e, c] : terms) {
            if (e.size() != p.vars_.size()) throw std::invalid_argument("exponent arity mismatch");
            for (int x : e)
                if (x < 0) throw std::invalid_argument("negative exponent");
            if (c != 0) p.add_term(e, c);
        }
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    // Highest exponent of var across terms; -1 for the zero polynomial or a
    // variable absent from the list.
    long degree(const std::string& var) const {
        std::string v = canonical_var(var);
        long idx = var_index(v);
        if (idx < 0 || terms_.empty()) return terms_.empty() ? -1 : 0;
        long d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[idx]));
        return d;
    }

    Integer coefficient(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
        auto [x, y] = aligned(a, b);
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, c);
        return x;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, -c);
        return x;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        return multiply_aligned(x, y);
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(long e) const {
        if (e < 0) throw std::invalid_argument("negative polynomial power");
        MultiPoly base = *this;
        MultiPoly acc = constant(1, vars_);
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return acc;
    }

    // Exact division in Z[vars]; throws NotDivisible when p is not a multiple
    // of q, domain_error on q = 0. Standard leading-term reduction: for a true
    // multiple each step emits one quotient term and the loop count equals the
    // quotient's term count.
    friend MultiPoly divexact(const MultiPoly& p, const MultiPoly& q) {
        if (q.is_zero()) throw std::domain_error("polynomial division by zero");
        auto [r, d] = aligned(p, q);
        if (auto fast = dense_divexact_monic(r, d)) return *fast;
        MultiPoly quot = zero(r.vars_);
        const auto& dlead = *d.terms_.begin();
        while (!r.terms_.empty()) {
            const auto& rlead = *r.terms_.begin();
            ExpVec shift(rlead.first.size());
            for (std::size_t i = 0; i < shift.size(); ++i) {
                shift[i] = rlead.first[i] - dlead.first[i];
                if (shift[i] < 0) throw NotDivisible("leading monomial not divisible");
            }
            Integer c = rlead.second / dlead.second;
            if (c * dlead.second != rlead.second) throw NotDivisible("leading coefficient not divisible");
            quot.terms_.emplace_hint(quot.terms_.end(), shift, c);
            for (const auto& [e, dc] : d.terms_) {
                ExpVec target(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) target[i] = e[i] + shift[i];
                r.add_term(target, -c * dc);
            }
        }
        return quot;
    }

    // Replace var by q (Horner in var). A variable absent from p leaves p
    // unchanged (up to variable-list alignment with q).
    friend MultiPoly substitute(const MultiPoly& p, const std::string& var, const MultiPoly& q) {
        std::string v = canonical_var(var);
        long idx = p.var_index(v);
        if (idx < 0) return aligned(p, q).first;
        // decompose p as sum_k c_k(other vars) * v^k
        long d = p.degree(v);
        std::vector<MultiPoly> coeff(static_cast<std::size_t>(d) + 1, zero(p.vars_));
        for (const auto& [e, c] : p.terms_) {
            ExpVec rest = e;
            int k = rest[idx];
            rest[idx] = 0;
            coeff[static_cast<std::size_t>(k)].add_term(rest, c);
        }
        MultiPoly acc = coeff[static_cast<std::size_t>(d)];
        for (long k = d - 1; k >= 0; --k) acc = acc * q + coeff[static_cast<std::size_t>(k)];
        return acc;
    }

    // Exact evaluation; every variable occurring with a positive exponent must
    // be assigned (extra assignments are ignored).
    Rational eval(const std::map<std::string, Rational>& assignment) const {
        std::vector<const Rational*> vals(vars_.size(), nullptr);
        std::map<std::string, Rational> canon;
        for (const auto& [k, v] : assignment) canon[canonical_var(k)] = v;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = canon.find(vars_[i]);
            if (it != canon.end()) vals[i] = &it->second;
        }
        Rational total = 0;
        for (const auto& [e, c] : terms_) {
            Rational term(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!vals[i]) throw std::invalid_argument("missing assignment for " + vars_[i]);
                term *= pow_rational(*vals[i], static_cast<unsigned long>(e[i]));
            }
            total += term;
        }
        return total;
    }

    // Partial derivative with respect to var.
    MultiPoly derivative(const std::string& var) const {
        std::string v = canonical_var(var);
        long idx = var_index(v);
        MultiPoly out = zero(vars_);
        if (idx < 0) return out;
        for (const auto& [e, c] : terms_) {
            if (e[static_cast<std::size_t>(idx)] == 0) continue;
            ExpVec ne = e;
            int k = ne[static_cast<std::size_t>(idx)]--;
            out.add_term(ne, c * k);
        }
        return out;
    }

    // Rename a variable (the new name must not already occur).
    MultiPoly renamed(const std::string& from, const std::string& to) const {
        std::string f = canonical_var(from), g = canonical_var(to);
        if (f == g) return *this;
        long idx = var_index(f);
        if (idx < 0) return *this;
        if (var_index(g) >= 0) throw std::invalid_argument("rename target already in use: " + g);
        std::vector<std::string> nv = vars_;
        nv[static_cast<std::size_t>(idx)] = g;
        std::vector<std::size_t> order(nv.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return var_rank(nv[a]) < var_rank(nv[b]); });
        MultiPoly out;
        out.vars_.resize(nv.size());
        for (std::size_t i = 0; i < order.size(); ++i) out.vars_[i] = nv[order[i]];
        for (const auto& [e, c] : terms_) {
            ExpVec ne(e.size());
            for (std::size_t i = 0; i < order.size(); ++i) ne[i] = e[order[i]];
            out.terms_.emplace(std::move(ne), c);
        }
        return out;
    }

    // Coefficient polynomials of p viewed in var: index k holds the
    // coefficient of var^k over the remaining variables.
    std::vector<MultiPoly> decompose(const std::string& var) const {
        std::string v = canonical_var(var);
        long idx = var_index(v);
        std::vector<std::string> rest;
        for (const auto& w : vars_)
            if (w != v) rest.push_back(w);
        long d = std::max(degree(v), 0L);
        if (is_zero()) d = 0;
        std::vector<MultiPoly> out(static_cast<std::size_t>(d) + 1, zero(rest));
        if (idx < 0) {
            out[0] = *this;
            return out;
        }
        for (const auto& [e, c] : terms_) {
            ExpVec re;
            re.reserve(e.size() - 1);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (static_cast<long>(i) != idx) re.push_back(e[i]);
            out[static_cast<std::size_t>(e[idx])].add_term(re, c);
        }
        return out;
    }

    // ---- text form ----------------------------------------------------------

    std::string to_text() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            bool neg = c < 0;
            Integer a = abs(c);
            std::string body;
            bool has_var = false;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) has_var = true;
            if (a != 1 || !has_var) body = a.get_str();
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!body.empty()) body += "*";
                body += vars_[i];
                if (e[i] >= 2) body += "^" + std::to_string(e[i]);
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

    // Parses sums of integer-coefficient monomials in t/x1/x2/... ("x" means
    // x1), e.g. "x^2 - x + t" or the exact output of to_text().
    static MultiPoly from_text(const std::string& src);

    // ---- JSON form -----------------------------------------------------------

    nlohmann::json to_json() const {
        nlohmann::json jterms = nlohmann::json::array();
        for (const auto& [e, c] : terms_) {
            nlohmann::json jt;
            jt["coeff"] = c.get_str();
            jt["exps"] = e;
            jterms.push_back(std::move(jt));
        }
        nlohmann::json j;
        j["terms"] = std::move(jterms);
        j["vars"] = vars_;
        return j;
    }

    static MultiPoly from_json(const nlohmann::json& j) {
        if (!j.contains("vars") || !j.contains("terms"))
            throw std::invalid_argument("polynomial JSON needs vars and terms");
        std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
        MultiPoly p = zero(vars);
        for (const auto& jt : j.at("terms")) {
            Integer c(jt.at("coeff").get<std::string>());
            ExpVec e = jt.at("exps").get<ExpVec>();
            if (e.size() != p.vars_.size()) throw std::invalid_argument("exponent arity mismatch");
            for (int x : e)
                if (x < 0) throw std::invalid_argument("negative exponent");
            if (c != 0) p.add_term(e, c);
        }
        return p;
    }

    // Align both operands to the union of their variable lists.
    static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::set<long> ranks;
        for (const auto& v : a.vars_) ranks.insert(var_rank(v));
        for (const auto& v : b.vars_) ranks.insert(var_rank(v));
        std::vector<std::string> uni;
        for (long r : ranks) uni.push_back(r == 0 ? "t" : "x" + std::to_string(r));
        return {a.align_to(uni), b.align_to(uni)};
    }

    // Embed into a superset variable list (canonically ordered).
    MultiPoly align_to(const std::vector<std::string>& uni) const {
        if (uni == vars_) return *this;
        std::vector<long> pos(vars_.size(), -1);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            for (std::size_t k = 0; k < uni.size(); ++k)
                if (uni[k] == vars_[i]) pos[i] = static_cast<long>(k);
            if (pos[i] < 0) throw std::invalid_argument("alignment target misses " + vars_[i]);
        }
        MultiPoly out = zero(uni);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(uni.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[static_cast<std::size_t>(pos[i])] = e[i];
            out.terms_.emplace(std::move(ne), c);
        }
        return out;
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    static std::vector<std::string> normalize_vars(std::vector<std::string> vars) {
        for (auto& v : vars) v = canonical_var(v);
        std::sort(vars.begin(), vars.end(), [](const std::string& a, const std::string& b) {
            return var_rank(a) < var_rank(b);
        });
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        return vars;
    }

    long var_index(const std::string& canonical_name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == canonical_name) return static_cast<long>(i);
        return -1;
    }

    void add_term(const ExpVec& e, const Integer& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // ---- multiplication ------------------------------------------------------

    static MultiPoly multiply_aligned(const MultiPoly& a, const MultiPoly& b);
    static MultiPoly multiply_classic(const MultiPoly& a, const MultiPoly& b);
    static MultiPoly multiply_kronecker(const MultiPoly& a, const MultiPoly& b);

    // Dense bivariate long division for big operands with a divisor monic in
    // the higher variable (the dynatomic workload). Returns nothing when the
    // shape does not fit; exactness violations throw NotDivisible. For a monic
    // divisor the t-leading forms multiply without cancellation, so the exact
    // quotient has deg_t = deg_t(p) - deg_t(q) and every intermediate row fits
    // in width deg_t(p) + 1.
    static std::optional<MultiPoly> dense_divexact_monic(const MultiPoly& p, const MultiPoly& q);

    friend struct KroneckerPacker;
};

// Packs nonnegative-coefficient polynomials into a single integer with one
// fixed-width slot per exponent tuple of the *product's* degree box.
struct KroneckerPacker {
    std::vector<long> width;   // per-variable slot counts (product degree + 1)
    std::vector<long> stride;  // mixed-radix strides, first variable fastest
    std::size_t words_per_slot = 0;
    std::size_t total_slots = 0;

    KroneckerPacker(const MultiPoly& a, const MultiPoly& b, std::size_t coeff_bits) {
        std::size_t n = a.vars().size();
        width.resize(n);
        stride.resize(n);
        total_slots = 1;
        for (std::size_t i = 0; i < n; ++i) {
            long da = 0, db = 0;
            for (const auto& [e, c] : a.terms()) da = std::max(da, static_cast<long>(e[i]));
            for (const auto& [e, c] : b.terms()) db = std::max(db, static_cast<long>(e[i]));
            width[i] = da + db + 1;
            stride[i] = static_cast<long>(total_slots);
            total_slots *= static_cast<std::size_t>(width[i]);
        }
        words_per_slot = (coeff_bits + 63) / 64;
    }

    std::size_t slot_of(const MultiPoly::ExpVec& e) const {
        std::size_t s = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            s += static_cast<std::size_t>(e[i]) * static_cast<std::size_t>(stride[i]);
        return s;
    }

    Integer pack(const MultiPoly& p) const {
        std::vector<uint64_t> buf(total_slots * words_per_slot, 0);
        for (const auto& [e, c] : p.terms()) {
            std::size_t cnt = 0;
            mpz_export(buf.data() + slot_of(e) * words_per_slot, &cnt, -1, sizeof(uint64_t), 0, 0,
                       c.get_mpz_t());
        }
        Integer out;
        mpz_import(out.get_mpz_t(), buf.size(), -1, sizeof(uint64_t), 0, 0, buf.data());
        return out;
    }

    void unpack_into(const Integer& big, int sign, MultiPoly& dest) const {
        std::vector<uint64_t> buf(total_slots * words_per_slot, 0);
        std::size_t cnt = 0;
        mpz_export(buf.data(), &cnt, -1, sizeof(uint64_t), 0, 0, big.get_mpz_t());
        MultiPoly::ExpVec e(width.size(), 0);
        for (std::size_t s = 0; s < total_slots; ++s) {
            const uint64_t* w = buf.data() + s * words_per_slot;
            bool nonzero = false;
            for (std::size_t k = 0; k < words_per_slot; ++k)
                if (w[k]) nonzero = true;
            if (!nonzero) continue;
            Integer c;
            mpz_import(c.get_mpz_t(), words_per_slot, -1, sizeof(uint64_t), 0, 0, w);
            std::size_t rem = s;
            for (std::size_t i = 0; i < width.size(); ++i) {
                e[i] = static_cast<int>(rem % static_cast<std::size_t>(width[i]));
                rem /= static_cast<std::size_t>(width[i]);
            }
            dest.add_term(e, sign > 0 ? c : Integer(-c));
        }
    }
};

inline MultiPoly MultiPoly::multiply_classic(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out = zero(a.vars_);
    ExpVec e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

inline MultiPoly MultiPoly::multiply_kronecker(const MultiPoly& a, const MultiPoly& b) {
    auto split = [](const MultiPoly& p) {
        MultiPoly pos = zero(p.vars_), neg = zero(p.vars_);
        for (const auto& [e, c] : p.terms_)
            (c > 0 ? pos : neg).terms_.emplace(e, abs(c));
        return std::pair{pos, neg};
    };
    auto norm1 = [](const MultiPoly& p) {
        Integer s = 0;
        for (const auto& [e, c] : p.terms_) s += abs(c);
        return s;
    };
    auto norm_inf = [](const MultiPoly& p) {
        Integer m = 0;
        for (const auto& [e, c] : p.terms_) {
            Integer a = abs(c);
            if (a > m) m = a;
        }
        return m;
    };
    Integer bound = norm1(a) * norm_inf(b);
    // two products are summed before unpacking, so leave one extra bit
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 2;
    KroneckerPacker packer(a, b, bits);

    auto [ap, an] = split(a);
    auto [bp, bn] = split(b);
    Integer Ap = packer.pack(ap), An = packer.pack(an);
    Integer Bp = packer.pack(bp), Bn = packer.pack(bn);
    Integer plus = Ap * Bp + An * Bn;
    Integer minus = Ap * Bn + An * Bp;
    MultiPoly out = zero(a.vars_);
    packer.unpack_into(plus, +1, out);
    packer.unpack_into(minus, -1, out);
    return out;
}

inline std::optional<MultiPoly> MultiPoly::dense_divexact_monic(const MultiPoly& p,
                                                                const MultiPoly& q) {
    if (p.vars_.size() != 2 || p.num_terms() < 4096 || q.is_zero()) return std::nullopt;
    const std::string& tv = p.vars_[0];
    const std::string& xv = p.vars_[1];
    const long dpx = p.degree(xv), dpt = p.degree(tv);
    const long dqx = q.degree(xv), dqt = q.degree(tv);
    if (dqx < 1 || dpx < dqx) return std::nullopt;
    if ((dpx + 1) * (dpt + 1) > (1L << 24)) return std::nullopt;
    // require the divisor monic in x: single term x^dqx with coefficient 1
    {
        ExpVec lead{0, static_cast<int>(dqx)};
        auto it = q.terms_.find(lead);
        if (it == q.terms_.end() || it->second != 1) return std::nullopt;
        for (const auto& [e, c] : q.terms_)
            if (e[1] == dqx && e[0] != 0) return std::nullopt;
    }

    const std::size_t width = static_cast<std::size_t>(dpt) + 1;
    std::vector<std::vector<Integer>> rem(static_cast<std::size_t>(dpx) + 1,
                                          std::vector<Integer>(width));
    for (const auto& [e, c] : p.terms_) rem[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = c;
    std::vector<std::vector<Integer>> den(static_cast<std::size_t>(dqx),
                                          std::vector<Integer>(static_cast<std::size_t>(dqt) + 1));
    for (const auto& [e, c] : q.terms_)
        if (e[1] < dqx) den[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = c;

    const long qt_max = dpt - dqt;  // exact quotient t-degree
    std::vector<std::vector<Integer>> quot(static_cast<std::size_t>(dpx - dqx) + 1);
    for (long k = dpx; k >= dqx; --k) {
        std::vector<Integer>& row = rem[static_cast<std::size_t>(k)];
        bool nonzero = false;
        for (std::size_t a = 0; a < width; ++a) {
            if (row[a] == 0) continue;
            nonzero = true;
            if (static_cast<long>(a) > qt_max) throw NotDivisible("dense division not exact");
        }
        if (!nonzero) {
            row.clear();
            continue;
        }
        for (std::size_t i = 0; i < den.size(); ++i) {
            std::vector<Integer>& target = rem[static_cast<std::size_t>(k - dqx) + i];
            for (std::size_t b = 0; b <= static_cast<std::size_t>(dqt); ++b) {
                if (den[i][b] == 0) continue;
                for (std::size_t a = 0; a < width; ++a) {
                    if (row[a] == 0) continue;
                    mpz_submul(target[a + b].get_mpz_t(), row[a].get_mpz_t(), den[i][b].get_mpz_t());
                }
            }
        }
        quot[static_cast<std::size_t>(k - dqx)] = std::move(row);
        rem[static_cast<std::size_t>(k)].clear();
    }
    for (long k = 0; k < dqx; ++k)
        for (const Integer& c : rem[static_cast<std::size_t>(k)])
            if (c != 0) throw NotDivisible("dense division leaves a remainder");

    MultiPoly out = zero(p.vars_);
    ExpVec e(2);
    for (std::size_t k = quot.size(); k-- > 0;) {
        if (quot[k].empty()) continue;
        for (std::size_t a = quot[k].size(); a-- > 0;) {
            if (quot[k][a] == 0) continue;
            e[0] = static_cast<int>(a);
            e[1] = static_cast<int>(k);
            out.terms_.emplace_hint(out.terms_.end(), e, std::move(quot[k][a]));
        }
    }
    return out;
}

inline MultiPoly MultiPoly::multiply_aligned(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.vars_);
    const std::size_t cost = a.num_terms() * b.num_terms();
    if (cost > 1u << 21) {
        // sanity-limit the slot box so degenerate sparse operands stay classic
        KroneckerPacker probe(a, b, 1);
        if (probe.total_slots <= (1u << 26)) return multiply_kronecker(a, b);
    }
    return multiply_classic(a, b);
}

// ---- text parsing -------------------------------------------------------------

namespace detail {

struct PolyLexer {
    const std::string& s;
    std::size_t i = 0;
    explicit PolyLexer(const std::string& src) : s(src) {}

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        if (i >= s.size()) throw std::invalid_argument("unexpected end of polynomial text");
        return s[i++];
    }
    Integer take_int() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == start) throw std::invalid_argument("expected integer in polynomial text");
        return Integer(s.substr(start, i - start));
    }
    std::string take_name() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() &&
               ((s[i] >= 'a' && s[i] <= 'z') || (s[i] >= 'A' && s[i] <= 'Z') ||
                (i > start && s[i] >= '0' && s[i] <= '9')))
            ++i;
        if (i == start) throw std::invalid_argument("expected variable in polynomial text");
        return s.substr(start, i - start);
    }
};

}  // namespace detail

inline MultiPoly MultiPoly::from_text(const std::string& src) {
    detail::PolyLexer lex(src);
    // First pass builds raw (coeff, {var: exp}) terms, collecting variables.
    struct RawTerm {
        Integer coeff;
        std::map<std::string, int> exps;
    };
    std::vector<RawTerm> raw;
    std::set<std::string> seen;

    bool expect_term = true;
    int sign = +1;
    while (!lex.eof()) {
        char c = lex.peek();
        if (expect_term) {
            if (c == '+' || c == '-') {
                lex.take();
                if (c == '-') sign = -sign;
                continue;
            }
            // one term: factors joined by '*'
            RawTerm term{Integer(sign), {}};
            bool more = true;
            while (more) {
                char f = lex.peek();
                if (f >= '0' && f <= '9') {
                    term.coeff *= lex.take_int();
                } else {
                    std::string name = canonical_var(lex.take_name());
                    int e = 1;
                    if (lex.peek() == '^') {
                        lex.take();
                        Integer ei = lex.take_int();
                        if (ei > 4096) throw std::invalid_argument("exponent too large");
                        e = static_cast<int>(ei.get_si());
                    }
                    term.exps[name] += e;
                    seen.insert(name);
                }
                if (lex.peek() == '*') {
                    lex.take();
                } else {
                    more = false;
                }
            }
            raw.push_back(std::move(term));
            sign = +1;
            expect_term = false;
        } else {
            if (c != '+' && c != '-') throw std::invalid_argument("expected + or - in polynomial text");
            lex.take();
            sign = (c == '-') ? -1 : +1;
            expect_term = true;
        }
    }
    if (expect_term && !raw.empty()) throw std::invalid_argument("dangling sign in polynomial text");

    std::vector<std::string> vars(seen.begin(), seen.end());
    MultiPoly p = zero(vars);
    for (const auto& rt : raw) {
        ExpVec e(p.vars_.size(), 0);
        for (const auto& [name, k] : rt.exps) {
            for (std::size_t i = 0; i < p.vars_.size(); ++i)
                if (p.vars_[i] == name) e[i] = k;
        }
        p.add_term(e, rt.coeff);
    }
    return p;
}

}  // namespace dynmod
