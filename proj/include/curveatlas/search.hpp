#ifndef CURVEATLAS_SEARCH_HPP_
#define CURVEATLAS_SEARCH_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "curveatlas/counting.hpp"
#include "curveatlas/curve.hpp"
#include "curveatlas/zeta.hpp"

/// Exhaustive scanner over hyperelliptic coefficient families: rediscovers
/// witness-type curves (B_r = 0, pointless, B_2-extremal) by brute force in
/// deterministic coefficient-lexicographic order.

namespace curveatlas {

struct SearchSpec {
    Field base;
    unsigned g = 1;
    enum class Predicate { BrZero, Pointless, MaximizeB2 };
    Predicate predicate = Predicate::Pointless;
    unsigned r = 2;  // BrZero
    std::uint64_t budget = std::uint64_t(1) << 26;  // max coefficient tuples
    unsigned threads = 1;
};

struct SearchHit {
    HyperellipticModel model;
    CountsProfile profile;
    BigInt b_value;  // B_r for BrZero hits, B_2 for MaximizeB2, N_1 for Pointless
};

struct SearchResult {
    std::vector<SearchHit> hits;  // coefficient-lexicographic order
    std::uint64_t tuples_considered = 0;
    std::uint64_t models_valid = 0;  // degree-valid and smooth
    BigInt max_b2 = -1;              // MaximizeB2 only
};

namespace detail {

inline FPoly poly_from_code(const Field& F, std::uint64_t code, unsigned len) {
    std::vector<FieldElement> c;
    for (unsigned i = 0; i < len; ++i) {
        c.push_back(F->element_at(code % F->q));
        code /= F->q;
    }
    return FPoly::make(F, std::move(c));
}

/// Quick disqualifier for the pointless predicate: find any rational point.
/// Valid for singular tuples too (a point is a point), so it runs before the
/// smoothness check; survivors get the full treatment.
inline bool has_rational_point(const HyperellipticModel& m, const std::vector<bool>& is_sq) {
    const Field& F = m.base;
    const unsigned lead = std::max(2 * unsigned(std::max(m.h.degree(), 0)),
                                   unsigned(std::max(m.f.degree(), 0)));
    if (lead == 2 * m.g + 1) return true;  // odd degree: one point at infinity
    if (F->p != 2) {
        // complete the square: y^2 = f + h^2/4; a point exists at infinity
        // iff the leading coefficient is a square, and over x iff the
        // right-hand side value is one
        FieldElement quarter = F->inv(F->from_int(4));
        FieldElement disc = F->add(m.f.coeff(2 * m.g + 2),
                                   F->mul(quarter, F->mul(m.h.coeff(m.g + 1), m.h.coeff(m.g + 1))));
        if (is_sq[F->index_of(disc)]) return true;
        for (std::uint64_t i = 0; i < F->q; ++i) {
            FieldElement x = F->element_at(i);
            FieldElement rhs = F->add(m.f.eval(x),
                                      F->mul(quarter, F->mul(m.h.eval(x), m.h.eval(x))));
            if (is_sq[F->index_of(rhs)]) return true;
        }
        return false;
    }
    if (num_quadratic_roots(F->one(), m.h.coeff(m.g + 1), F->neg(m.f.coeff(2 * m.g + 2))) > 0)
        return true;
    for (std::uint64_t i = 0; i < F->q; ++i) {
        FieldElement x = F->element_at(i);
        if (num_quadratic_roots(F->one(), m.h.eval(x), F->neg(m.f.eval(x))) > 0) return true;
    }
    return false;
}

}  // namespace detail

/// Exhaustive scan in coefficient-lexicographic order (f code ascending, h
/// code ascending within f; code digit i is the coefficient of x^i). In odd
/// characteristic only h = 0 is scanned: y^2 + h y = f and the completed
/// square y^2 = f + h^2/4 define the same curve, so nothing is lost. Every
/// hit is re-verified through the zeta route before being reported.
inline SearchResult scan(const SearchSpec& spec) {
    const Field& F = spec.base;
    const unsigned flen = 2 * spec.g + 3, hlen = spec.g + 2;
    std::uint64_t fcount = 1, hcount = 1;
    for (unsigned i = 0; i < flen; ++i) {
        if (fcount > spec.budget / F->q + 1) throw BudgetExceededError("family exceeds scan budget");
        fcount *= F->q;
    }
    if (F->p == 2)
        for (unsigned i = 0; i < hlen; ++i) hcount *= F->q;
    if (fcount > spec.budget / hcount)
        throw BudgetExceededError("family of " + std::to_string(fcount) + "*" +
                                  std::to_string(hcount) + " tuples exceeds the scan budget");

    std::vector<bool> is_sq(F->q, false);
    for (std::uint64_t i = 0; i < F->q; ++i) {
        FieldElement x = F->element_at(i);
        is_sq[F->index_of(F->mul(x, x))] = true;
    }

    const unsigned n_max =
        spec.predicate == SearchSpec::Predicate::BrZero ? std::max(spec.r, spec.g)
        : spec.predicate == SearchSpec::Predicate::MaximizeB2 ? std::max(2u, spec.g)
                                                              : std::max(1u, spec.g);

    struct Partial {
        std::vector<std::pair<std::uint64_t, SearchHit>> hits;  // keyed by tuple index
        std::uint64_t considered = 0, valid = 0;
    };

    // over an odd prime field (h = 0, one digit per coefficient) the
    // pointless pre-filter runs on machine integers; only the rare survivors
    // pay for field-element polynomial construction
    const bool fast_pointless = spec.predicate == SearchSpec::Predicate::Pointless &&
                                F->k == 1 && F->p != 2;
    std::vector<bool> is_sq_int(F->p, false);
    if (fast_pointless)
        for (std::uint64_t i = 0; i < F->p; ++i) is_sq_int[i * i % F->p] = true;

    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi, Partial& out) {
        std::vector<std::uint32_t> digits(flen);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            ++out.considered;
            if (fast_pointless) {
                std::uint64_t code = idx;
                int deg = -1;
                for (unsigned i = 0; i < flen; ++i) {
                    digits[i] = std::uint32_t(code % F->p);
                    if (digits[i] != 0) deg = int(i);
                    code /= F->p;
                }
                if (deg != int(2 * spec.g + 1) && deg != int(2 * spec.g + 2)) continue;
                if (deg == int(2 * spec.g + 1)) continue;  // odd degree: point at infinity
                if (is_sq_int[digits[deg]]) continue;      // square lead: point at infinity
                bool point = false;
                for (std::uint64_t x = 0; x < F->p && !point; ++x) {
                    std::uint64_t acc = 0;
                    for (unsigned i = flen; i-- > 0;) acc = (acc * x + digits[i]) % F->p;
                    point = is_sq_int[acc];  // includes acc = 0, the point y = 0
                }
                if (point) continue;
            }
            std::uint64_t fcode = idx / hcount, hcode = idx % hcount;
            FPoly f = detail::poly_from_code(F, fcode, flen);
            FPoly h = detail::poly_from_code(F, hcode, hlen);
            int lead = std::max(2 * h.degree(), f.degree());
            if (lead != int(2 * spec.g + 1) && lead != int(2 * spec.g + 2)) continue;
            HyperellipticModel m{F, f, h, spec.g};
            if (spec.predicate == SearchSpec::Predicate::Pointless &&
                detail::has_rational_point(m, is_sq))
                continue;
            if (!is_smooth_hyperelliptic(m).is_smooth_ok()) continue;
            ++out.valid;
            CountsProfile profile = count_sequence(m, n_max);
            std::map<unsigned, BigInt> N;
            for (unsigned n = 1; n <= n_max; ++n) N[n] = BigInt(profile.counts[n - 1]);
            switch (spec.predicate) {
                case SearchSpec::Predicate::Pointless:
                    if (profile.counts[0] == 0)
                        out.hits.push_back({idx, {m, profile, BigInt(0)}});
                    break;
                case SearchSpec::Predicate::BrZero: {
                    BigInt br = closed_points_from_counts(N, spec.r);
                    if (br == 0) out.hits.push_back({idx, {m, profile, br}});
                    break;
                }
                case SearchSpec::Predicate::MaximizeB2: {
                    BigInt b2 = closed_points_from_counts(N, 2);
                    out.hits.push_back({idx, {m, profile, b2}});
                    break;
                }
            }
        }
    };

    const std::uint64_t total = fcount * hcount;
    const unsigned workers = std::max(1u, spec.threads);
    std::vector<Partial> parts(workers);
    if (workers == 1) {
        scan_range(0, total, parts[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                scan_range(w * chunk, std::min(total, (w + 1) * chunk), parts[w]);
            });
        for (auto& t : pool) t.join();
    }

    SearchResult res;
    for (const auto& p : parts) {
        res.tuples_considered += p.considered;
        res.models_valid += p.valid;
    }
    std::vector<std::pair<std::uint64_t, SearchHit>> merged;
    for (auto& p : parts)
        for (auto& h : p.hits) merged.push_back(std::move(h));
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    if (spec.predicate == SearchSpec::Predicate::MaximizeB2) {
        for (const auto& [i, h] : merged)
            if (h.b_value > res.max_b2) res.max_b2 = h.b_value;
        for (auto& [i, h] : merged)
            if (h.b_value == res.max_b2) res.hits.push_back(std::move(h));
    } else {
        for (auto& [i, h] : merged) res.hits.push_back(std::move(h));
    }

    // re-verification pass: every reported hit must reproduce its counts
    // through the zeta route
    for (const auto& h : res.hits) {
        if (spec.g >= 1) {
            std::vector<std::uint64_t> first_g(h.profile.counts.begin(),
                                               h.profile.counts.begin() + spec.g);
            LPolynomial P = l_polynomial_from_counts(F->q, spec.g, first_g);
            for (unsigned n = 1; n <= n_max; ++n)
                if (counts_from_l_polynomial(P, n) != BigInt(h.profile.counts[n - 1]))
                    throw InvariantViolationError("scan hit fails zeta re-verification");
        }
    }
    return res;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_SEARCH_HPP_
