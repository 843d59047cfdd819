#pragma once

// Exact rational dynamics of the quadratic family x -> x^2 + c.
//
// Everything here rests on two elementary facts. First, if c = a/b in lowest
// terms admits any rational preperiodic point, then b is a perfect square and
// every preperiodic point has denominator exactly sqrt(b) in lowest terms.
// Second, once |x| exceeds the larger root of x^2 - x - |c| the orbit's
// absolute value grows strictly, so "x^2 - |x| > |c|" certifies escape. Both
// tests are evaluated in exact rational arithmetic, giving a terminating and
// complete enumeration: a non-escaping orbit with the mandatory denominator
// has boundedly many possible values and must repeat.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynmod/dynatomic.hpp"
#include "dynmod/numeric.hpp"
#include "dynmod/portrait_graph.hpp"
#include "dynmod/rational.hpp"
#include "dynmod/unipoly.hpp"

namespace dynmod {

inline Rational quadratic_step(const Rational& x, const Rational& c) {
    Rational y = x * x + c;
    y.canonicalize();
    return y;
}

// Exact escape test: beyond the positive root of x^2 - x - |c| the orbit of x
// increases in absolute value forever.
inline bool escapes(const Rational& x, const Rational& c) {
    return x * x - abs_rational(x) > abs_rational(c);
}

struct OrbitRecord {
    Rational point;
    Portrait portrait;
    std::vector<Rational> orbit;  // forward orbit, ending at the first repeated value
};

struct RationalPreperSet {
    Rational c;
    std::vector<OrbitRecord> points;  // sorted by value
    PortraitGraph graph;              // vertex names are the points as strings
};

namespace detail {

// Classify the forward orbit of x under x -> x^2 + c. If `den` is nonzero,
// any iterate whose reduced denominator differs from `den` disqualifies the
// point (preperiodic points all share that exact denominator).
enum class OrbitKind { Preperiodic, Escapes, WrongDenominator };

struct OrbitResult {
    OrbitKind kind = OrbitKind::Escapes;
    Portrait portrait;            // Preperiodic only
    std::vector<Rational> orbit;  // values visited, last entry shows the exit
    long exit_step = 0;           // Escapes / WrongDenominator: index of the witness
};

inline OrbitResult classify_orbit(const Rational& x, const Rational& c, const Integer& den) {
    OrbitResult res;
    std::map<Rational, long> position;
    Rational cur = x;
    while (true) {
        auto it = position.find(cur);
        if (it != position.end()) {
            res.kind = OrbitKind::Preperiodic;
            long m = it->second;
            res.portrait = Portrait{m, static_cast<long>(res.orbit.size()) - m};
            res.orbit.push_back(cur);
            return res;
        }
        if (den != 0 && denominator(cur) != den) {
            res.kind = OrbitKind::WrongDenominator;
            res.orbit.push_back(cur);
            res.exit_step = static_cast<long>(res.orbit.size()) - 1;
            return res;
        }
        if (escapes(cur, c)) {
            res.kind = OrbitKind::Escapes;
            res.orbit.push_back(cur);
            res.exit_step = static_cast<long>(res.orbit.size()) - 1;
            return res;
        }
        position.emplace(cur, static_cast<long>(res.orbit.size()));
        res.orbit.push_back(cur);
        cur = quadratic_step(cur, c);
    }
}

}  // namespace detail

// The complete set of rational preperiodic points of x^2 + c, with orbits,
// portraits and the induced portrait graph.
inline RationalPreperSet preper_set(const Rational& c) {
    RationalPreperSet out;
    out.c = c;
    out.graph = PortraitGraph::from_edges({});

    Integer b = denominator(c);
    if (!is_perfect_square(b)) return out;
    Integer s = exact_sqrt(b);
    Integer a_abs = abs(numerator(c));

    // Candidate numerators: |x| <= 1/2 + sqrt(1/4 + |c|) for x = n/s becomes
    // n^2 - n s <= |a| over the integers.
    std::vector<Rational> candidates;
    for (Integer n = 0; n * n - n * s <= a_abs; ++n) {
        if (gcd(n, s) != 1) continue;
        candidates.push_back(make_rational(n, s));
        if (n != 0) candidates.push_back(make_rational(-n, s));
    }

    for (const Rational& x : candidates) {
        auto res = detail::classify_orbit(x, c, s);
        if (res.kind != detail::OrbitKind::Preperiodic) continue;
        out.points.push_back(OrbitRecord{x, res.portrait, res.orbit});
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const OrbitRecord& p, const OrbitRecord& q) { return p.point < q.point; });

    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& rec : out.points)
        for (std::size_t i = 0; i + 1 < rec.orbit.size(); ++i)
            edges.emplace(to_string(rec.orbit[i]), to_string(rec.orbit[i + 1]));
    out.graph = PortraitGraph::from_edges(
        std::vector<std::pair<std::string, std::string>>(edges.begin(), edges.end()));
    return out;
}

// Certificate for whether the critical point 0 is preperiodic (c is then
// called postcritically finite). A rational preperiodic point's denominator
// is forced, so a non-integer c can never be postcritically finite; otherwise
// the integer orbit of 0 either repeats or passes the exact escape test.
struct PcfCertificate {
    bool pcf = false;
    Portrait portrait;            // portrait of 0 when pcf
    std::string reason;           // "escape" or "denominator" when not pcf
    long step = 0;                // index of the witnessing orbit entry
    std::vector<Rational> orbit;  // orbit prefix of 0 ending at the witness
};

inline PcfCertificate is_pcf(const Rational& c) {
    PcfCertificate cert;
    if (denominator(c) != 1) {
        // 0 has denominator 1; preperiodic points of x^2 + c must have
        // denominator sqrt(den(c)) > 1, so the orbit cannot return.
        cert.pcf = false;
        cert.reason = "denominator";
        cert.orbit = {Rational(0), c};
        cert.step = 1;
        return cert;
    }
    auto res = detail::classify_orbit(Rational(0), c, Integer(1));
    cert.orbit = res.orbit;
    if (res.kind == detail::OrbitKind::Preperiodic) {
        cert.pcf = true;
        cert.portrait = res.portrait;
    } else {
        cert.pcf = false;
        cert.reason = "escape";
        cert.step = res.exit_step;
    }
    return cert;
}

struct PcfParameter {
    Rational c;
    Portrait portrait;  // portrait of the critical point 0
    bool periodic_zero = false;
};

// All rational c for which 0 carries portrait (m, n) with m <= max_preperiod
// and n <= max_period: the rational roots of the generalized dynatomic
// polynomials evaluated at x = 0, each re-verified by the exact orbit test.
inline std::vector<PcfParameter> pcf_parameters(long max_preperiod, long max_period,
                                                long cap = kDefaultDegreeCap) {
    if (max_preperiod < 0 || max_period < 1)
        throw std::invalid_argument("pcf scan needs max_preperiod >= 0 and max_period >= 1");
    std::set<Rational> seen;
    std::vector<PcfParameter> out;
    for (long n = 1; n <= max_period; ++n) {
        for (long m = 0; m <= max_preperiod; ++m) {
            MultiPoly at_zero =
                substitute(gen_dynatomic(m, n, cap), "x1", MultiPoly::zero());
            UniPoly u = UniPoly::from_multipoly(at_zero, "t");
            for (const Rational& root : u.rational_roots()) {
                if (!seen.insert(root).second) continue;
                PcfCertificate cert = is_pcf(root);
                if (!cert.pcf)
                    throw std::logic_error("root of a dynatomic specialization failed the orbit test");
                out.push_back(PcfParameter{root, cert.portrait, cert.portrait.preperiod == 0});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PcfParameter& p, const PcfParameter& q) { return p.c < q.c; });
    return out;
}

// Local bound on cycle lengths: a rational cycle of f_c surviving reduction
// at two primes of norms np and nq has length at most (np^2-1)(nq^2-1).
// The hypothesis needs primes of distinct residue characteristic; the flag
// reports whether the given norms can satisfy it.
struct PeriodBoundResult {
    Integer bound;
    bool hypothesis_ok = false;
    std::string note;
};

inline PeriodBoundResult period_bound(const Integer& norm_p, const Integer& norm_q) {
    if (norm_p < 2 || norm_q < 2) throw std::invalid_argument("prime norms are at least 2");
    PeriodBoundResult res;
    res.bound = (norm_p * norm_p - 1) * (norm_q * norm_q - 1);
    auto residue_char = [](const Integer& n) -> Integer {
        auto fac = factorize(n);
        return fac.size() == 1 ? fac[0].first : Integer(0);  // 0: not a prime power
    };
    Integer p = residue_char(norm_p), q = residue_char(norm_q);
    if (p == 0 || q == 0) {
        res.hypothesis_ok = false;
        res.note = "a norm is not a prime power, so it is not the norm of a prime";
    } else if (p == q) {
        res.hypothesis_ok = false;
        res.note = "both norms lie over residue characteristic " + to_string(p) +
                   "; the bound needs distinct residue characteristics";
    } else {
        res.hypothesis_ok = true;
    }
    return res;
}

// Uniform bound: any graph realized as the full rational preperiodic graph of
// some x^2 + c admits a curve of bounded degree over it, so its points
// survive at norms 4 and 9, giving (2^(2d)-1)(3^(2d)-1) as a cycle bound at
// curve degree d.
inline Integer realize_bound(long deg) {
    if (deg < 1) throw std::invalid_argument("realize_bound needs a positive degree");
    Integer two = pow_integer(2, static_cast<unsigned long>(2 * deg)) - 1;
    Integer three = pow_integer(3, static_cast<unsigned long>(2 * deg)) - 1;
    return two * three;
}

}  // namespace dynmod
