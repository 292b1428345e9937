#ifndef CURVEATLAS_COUNTING_HPP_
#define CURVEATLAS_COUNTING_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curveatlas/curve.hpp"
#include "curveatlas/field.hpp"

/// Exact computation of N_n = #X(F_{q^n}) by enumeration.

namespace curveatlas {

class InvariantViolationError : public std::runtime_error {
public:
    explicit InvariantViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t(1) << 26;

struct CountsProfile {
    enum class Source { DirectEnumeration, ZetaDerived };
    std::uint64_t q = 0;
    unsigned g = 0;
    std::vector<std::uint64_t> counts;  // counts[n-1] = N_n
    Source source = Source::DirectEnumeration;

    /// Weil containment and divisibility monotonicity are theorems; a
    /// violation signals a counting bug, never valid data.
    void validate() const {
        std::uint64_t qn = 1;
        for (std::size_t n = 1; n <= counts.size(); ++n) {
            qn *= q;
            const std::int64_t diff = std::int64_t(counts[n - 1]) - std::int64_t(qn + 1);
            if (__int128(diff) * diff > __int128(4) * g * g * qn)
                throw InvariantViolationError("N_" + std::to_string(n) + " violates the Weil interval");
        }
        for (std::size_t d = 1; d <= counts.size(); ++d)
            for (std::size_t r = 2 * d; r <= counts.size(); r += d)
                if (counts[d - 1] > counts[r - 1])
                    throw InvariantViolationError("N_d <= N_r fails for d | r");
    }
};

/// Number of points of a hyperelliptic model lying over x = infinity in
/// F_{q^n}. For an odd-degree model there is one; for an even-degree model
/// the fiber is cut out by T^2 + H T = F in the leading coefficients,
/// re-solved in each extension.
inline std::uint64_t infinity_count(const HyperellipticModel& m, const Field& E,
                                    const Embedding& emb) {
    const unsigned lead = std::max(2 * unsigned(std::max(m.h.degree(), 0)),
                                   unsigned(std::max(m.f.degree(), 0)));
    if (lead == 2 * m.g + 1) return 1;
    FieldElement H = emb(m.h.coeff(m.g + 1));
    FieldElement F = emb(m.f.coeff(2 * m.g + 2));
    return num_quadratic_roots(E->one(), H, E->neg(F));
}

inline std::uint64_t count_points(const HyperellipticModel& m, unsigned n,
                                  std::uint64_t field_cap = kDefaultFieldCap) {
    auto [E, emb] = build_extension(m.base, n, field_cap);
    FPoly f = m.f.mapped(emb);
    FPoly h = m.h.mapped(emb);
    std::uint64_t total = 0;
    const FieldElement one = E->one();
    if (E->p != 2) {
        // y^2 + hy = f has 1 + chi(h^2 + 4f) solutions in y; one squaring
        // pass tabulates the nonzero squares so chi is a lookup, not a power
        std::vector<bool> is_sq(E->q, false);
        for (std::uint64_t i = 1; i < E->q; ++i) {
            FieldElement x = E->element_at(i);
            is_sq[E->index_of(E->mul(x, x))] = true;
        }
        const FieldElement four = E->from_int(4);
        for (std::uint64_t i = 0; i < E->q; ++i) {
            FieldElement x = E->element_at(i);
            FieldElement hx = h.eval(x);
            FieldElement disc = E->add(E->mul(hx, hx), E->mul(four, f.eval(x)));
            if (E->is_zero(disc)) total += 1;
            else if (is_sq[E->index_of(disc)]) total += 2;
        }
        return total + infinity_count(m, E, emb);
    }
    // characteristic 2: y^2 + hy = f has one root where h(x) = 0 and two
    // where Tr(f/h^2) = 0, none otherwise. Batched inversion shares one
    // field inversion per block and the trace, being F_2-linear in the
    // coefficient bits, reduces to a parity against precomputed basis traces
    std::array<std::uint32_t, kMaxFieldDegree> basis_trace{};
    {
        FieldElement t = E->k == 1 ? E->one() : E->gen_t();
        FieldElement ti = E->one();
        for (unsigned i = 0; i < E->k; ++i) {
            basis_trace[i] = E->abs_trace(ti);
            ti = E->mul(ti, t);
        }
    }
    auto trace_bit = [&](const FieldElement& x) {
        std::uint32_t b = 0;
        for (unsigned i = 0; i < E->k; ++i) b ^= basis_trace[i] & x.c[i];
        return b;
    };
    const std::uint64_t kBlock = std::min(E->q, std::uint64_t(1) << 15);
    std::vector<FieldElement> h2(kBlock), fv(kBlock), pref(kBlock);
    for (std::uint64_t lo = 0; lo < E->q; lo += kBlock) {
        const std::uint64_t hi = std::min(E->q, lo + kBlock);
        std::size_t count = 0;
        FieldElement acc = one;
        for (std::uint64_t i = lo; i < hi; ++i) {
            FieldElement x = E->element_at(i);
            FieldElement hx = h.eval(x);
            if (E->is_zero(hx)) {
                total += 1;  // y -> y^2 is bijective, one root
                continue;
            }
            h2[count] = E->mul(hx, hx);
            fv[count] = f.eval(x);
            acc = E->mul(acc, h2[count]);
            pref[count] = acc;
            ++count;
        }
        if (count == 0) continue;
        FieldElement run = E->inv(acc);
        for (std::size_t j = count; j-- > 0;) {
            FieldElement invj = j == 0 ? run : E->mul(run, pref[j - 1]);
            run = E->mul(run, h2[j]);
            if (trace_bit(E->mul(fv[j], invj)) == 0) total += 2;
        }
    }
    return total + infinity_count(m, E, emb);
}

inline std::uint64_t count_points(const PlaneCurveModel& m, unsigned n,
                                  std::uint64_t field_cap = kDefaultFieldCap,
                                  std::uint64_t budget = kDefaultEnumBudget) {
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < n * m.base->k; ++i) {
        if (qn > field_cap / m.base->p) throw CapExceededError("q^n exceeds field cap");
        qn *= m.base->p;
    }
    if (qn * qn + qn + 1 > budget)
        throw BudgetExceededError("plane scan of " + std::to_string(qn * qn + qn + 1) +
                                  " candidates exceeds the enumeration budget");
    auto [E, emb] = build_extension(m.base, n, field_cap);
    PlaneCurveModel Fm = m.mapped(emb);

    // Organize F(x,y,1) as a polynomial in y whose coefficients are
    // polynomials in x; per x one Horner pass over y does the chart.
    std::vector<FPoly> ycoeff(m.degree + 1, FPoly::zero(E));
    {
        std::vector<std::vector<FieldElement>> build(m.degree + 1,
                                                     std::vector<FieldElement>(m.degree + 1, E->zero()));
        for (const auto& [e, cf] : Fm.monomials) build[e[1]][e[0]] = E->add(build[e[1]][e[0]], cf);
        for (unsigned j = 0; j <= m.degree; ++j) ycoeff[j] = FPoly::make(E, build[j]);
    }

    std::uint64_t total = 0;
    std::vector<FieldElement> yc(m.degree + 1, E->zero());
    for (std::uint64_t i = 0; i < E->q; ++i) {
        FieldElement x = E->element_at(i);
        for (unsigned j = 0; j <= m.degree; ++j) yc[j] = ycoeff[j].eval(x);
        for (std::uint64_t jj = 0; jj < E->q; ++jj) {
            FieldElement y = E->element_at(jj);
            FieldElement acc = E->zero();
            for (unsigned j = m.degree + 1; j-- > 0;) {
                acc = E->mul(acc, y);
                acc = E->add(acc, yc[j]);
            }
            if (E->is_zero(acc)) ++total;
        }
    }
    // chart (x, 1, 0), then the single point (1, 0, 0)
    const FieldElement one = E->one(), zero = E->zero();
    for (std::uint64_t i = 0; i < E->q; ++i) {
        FieldElement x = E->element_at(i);
        if (E->is_zero(Fm.eval(x, one, zero))) ++total;
    }
    if (E->is_zero(Fm.eval(one, zero, zero))) ++total;
    return total;
}

inline std::uint64_t count_points(const CurveModel& m, unsigned n,
                                  std::uint64_t field_cap = kDefaultFieldCap,
                                  std::uint64_t budget = kDefaultEnumBudget) {
    if (std::holds_alternative<HyperellipticModel>(m))
        return count_points(std::get<HyperellipticModel>(m), n, field_cap);
    return count_points(std::get<PlaneCurveModel>(m), n, field_cap, budget);
}

inline CountsProfile count_sequence(const CurveModel& m, unsigned n_max,
                                    std::uint64_t field_cap = kDefaultFieldCap,
                                    std::uint64_t budget = kDefaultEnumBudget) {
    CountsProfile profile;
    profile.q = base_field(m)->q;
    profile.g = genus(m);
    profile.source = CountsProfile::Source::DirectEnumeration;
    for (unsigned n = 1; n <= n_max; ++n)
        profile.counts.push_back(count_points(m, n, field_cap, budget));
    profile.validate();
    return profile;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_COUNTING_HPP_
