// Acceptance harness: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "curveatlas/search.hpp"
#include "curveatlas/tables.hpp"

using namespace curveatlas;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

    void fail(const std::string& why) {
        if (problem_.empty()) problem_ = why;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
    void note(const std::string& text) { notes_.push_back(text); }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    ~Criterion() {
        double secs = elapsed();
        if (problem_.empty()) {
            std::printf("criterion %d: PASS — %s (%.2fs)\n", number_, title_.c_str(), secs);
        } else {
            std::printf("criterion %d: FAIL — %s: %s (%.2fs)\n", number_, title_.c_str(),
                        problem_.c_str(), secs);
            ++failures;
        }
        for (const auto& n : notes_) std::printf("  note: %s\n", n.c_str());
        std::fflush(stdout);
    }

private:
    int number_;
    std::string title_;
    std::string problem_;
    std::vector<std::string> notes_;
    std::chrono::steady_clock::time_point start_;
};

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<std::pair<std::uint64_t, unsigned>> prime_powers_up_to(std::uint64_t cap) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p <= cap; ++p) {
        if (!curveatlas::detail::is_prime_u64(p)) continue;
        std::uint64_t q = p;
        unsigned k = 1;
        while (q <= cap) {
            out.push_back({p, k});
            if (q > cap / p) break;
            q *= p;
            ++k;
        }
    }
    return out;
}

/// Largest n <= 6 whose full enumeration fits the default caps.
unsigned enumerable_degree(const CurveModel& m) {
    const std::uint64_t q = base_field(m)->q;
    const bool plane = std::holds_alternative<PlaneCurveModel>(m);
    unsigned n = 0;
    std::uint64_t qn = 1;
    while (n < 6) {
        if (qn > kDefaultFieldCap / q) break;
        qn *= q;
        if (plane && (qn > (std::uint64_t(1) << 13) || qn * qn + qn + 1 > kDefaultEnumBudget))
            break;
        ++n;
    }
    return n;
}

// independent oracle arithmetic for the quadratic solver, keyed on element
// enumeration indices: prime fields reduce to integers mod p and
// characteristic-2 extensions to carryless bitmask arithmetic
std::set<std::uint64_t> oracle_quadratic_roots(const Field& F, std::uint64_t ia, std::uint64_t ib,
                                               std::uint64_t ic) {
    std::set<std::uint64_t> out;
    if (F->k == 1) {
        const std::uint64_t p = F->p;
        for (std::uint64_t y = 0; y < p; ++y)
            if ((ia * y % p * y + ib * y + ic) % p == 0) out.insert(y);
        return out;
    }
    if (F->p == 2) {
        std::uint64_t mask = 0;
        for (unsigned i = 0; i <= F->k; ++i) mask |= std::uint64_t(F->modulus[i]) << i;
        auto clmul = [&](std::uint64_t x, std::uint64_t y) {
            std::uint64_t r = 0;
            while (y) {
                if (y & 1) r ^= x;
                y >>= 1;
                x <<= 1;
                if (x >> F->k) x ^= mask;
            }
            return r;
        };
        for (std::uint64_t y = 0; y < F->q; ++y)
            if ((clmul(ia, clmul(y, y)) ^ clmul(ib, y) ^ ic) == 0) out.insert(y);
        return out;
    }
    FieldElement a = F->element_at(ia), b = F->element_at(ib), c = F->element_at(ic);
    for (std::uint64_t i = 0; i < F->q; ++i) {
        FieldElement y = F->element_at(i);
        FieldElement v = F->add(F->mul(a, F->mul(y, y)), F->add(F->mul(b, y), c));
        if (F->is_zero(v)) out.insert(i);
    }
    return out;
}

void criterion_1(const Catalog& cat) {
    Criterion c(1, "all 11 extremal B_2 rows re-verified: counts, attained sharp bound, "
                   "both bound columns, N_2 inequality");
    for (const auto& row : extremal_b2_table()) {
        ExtremalB2Outcome out = verify_extremal_b2_row(row, cat);
        c.require(out.pass, "row (q=" + std::to_string(row.q) + ", g=" + std::to_string(row.g) +
                                "): " + out.detail);
        if (out.transcript.generator_fallback)
            c.note("row (q=" + std::to_string(row.q) + ", g=" + std::to_string(row.g) +
                   ") bound its generator symbol to element index " +
                   std::to_string(out.transcript.generator_index) + " (canonical choice failed)");
    }
    c.require(c.elapsed() < 30.0, "runtime exceeded 30 s");
}

void criterion_2(const Catalog& cat) {
    Criterion c(2, "all 72 rho(q,g) table cells certified Exact with re-verified witnesses");
    for (const auto& cell : rho_table()) {
        RhoTableOutcome out = verify_rho_cell(cell, cat);
        c.require(out.pass, "cell (q=" + std::to_string(cell.q) + ", g=" +
                                std::to_string(cell.g) + "): " + out.detail);
    }
    c.require(c.elapsed() < 300.0, "runtime exceeded 5 min");
}

void criterion_3(const Catalog& cat) {
    Criterion c(3, "zeta route from N_1..N_g reproduces direct enumeration for n <= 6 "
                   "on every catalog curve");
    for (const auto& rec : cat.witnesses) {
        CurveModel m = parse_curve(rec.curve_text);
        const unsigned g = genus(m);
        const unsigned n_max = enumerable_degree(m);
        if (n_max < 6)
            c.note("witness " + rec.id + " enumerated to n = " + std::to_string(n_max) +
                   " (full scan for larger n exceeds the default enumeration caps)");
        CountsProfile direct = count_sequence(m, n_max);
        LPolynomial P = l_polynomial_from_counts(direct.q, g,
                                                 {direct.counts.begin(),
                                                  direct.counts.begin() + g});
        for (unsigned n = 1; n <= n_max; ++n)
            c.require(counts_from_l_polynomial(P, n) == BigInt(direct.counts[n - 1]),
                      "witness " + rec.id + " disagrees at n = " + std::to_string(n));
    }
}

void criterion_4(const Catalog& cat) {
    Criterion c(4, "divisor-sum identity sum_{d|r} d B_d = N_r holds for r <= 12 "
                   "on every catalog curve");
    for (const auto& rec : cat.witnesses) {
        CurveModel m = parse_curve(rec.curve_text);
        const unsigned g = genus(m);
        auto B = closed_points_profile(m, 12);
        std::vector<std::uint64_t> direct;
        for (unsigned n = 1; n <= g; ++n) direct.push_back(count_points(m, n));
        LPolynomial P = l_polynomial_from_counts(base_field(m)->q, g, direct);
        for (unsigned r = 1; r <= 12; ++r) {
            BigInt acc = 0;
            for (std::uint64_t d : divisors(r)) acc += BigInt(d) * B.at(unsigned(d));
            c.require(acc == counts_from_l_polynomial(P, r),
                      "witness " + rec.id + " fails at r = " + std::to_string(r));
        }
    }
}

void criterion_5() {
    Criterion c(5, "bound dominance: sharp B_2 bound <= Weil-route bound for all prime "
                   "powers q <= 128, 1 <= g <= 100, N_1 across the Weil interval");
    for (auto [p, k] : prime_powers_up_to(128)) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        for (unsigned g = 1; g <= 100; ++g) {
            auto free_reps = b2_upper_bounds(q, g);
            BigInt weil = *find_bound(free_reps, "b2_weil").integer_part;
            BigInt hp = *find_bound(free_reps, "b2_hp").integer_part;
            if (hp > weil) {
                c.fail("N_1-free dominance fails at (q=" + std::to_string(q) + ", g=" +
                       std::to_string(g) + ")");
                return;
            }
            auto [lo, hi] = weil_interval(q, g, 1);
            const std::uint64_t top = std::uint64_t(hi);
            // exact rational evaluation of the two N_1-aware bounds, anchored
            // to the report API at three sampled N_1 values per cell
            auto weil_n1_floor = [&](std::uint64_t n1) {
                return certified::floor_rational(
                    Rational(BigInt(q) * q + 1 + BigInt(2) * g * q - n1, 2));
            };
            auto hp_n1_floor = [&](std::uint64_t n1) {
                BigInt delta = BigInt(n1) - (BigInt(q) + 1);
                BigInt num = BigInt(g) * (BigInt(q) * q + 1 + BigInt(2) * g * q - n1) -
                             delta * delta;
                return certified::floor_rational(Rational(num, BigInt(2) * g));
            };
            for (std::uint64_t n1 : {std::uint64_t(0), top / 2, top}) {
                auto reps = b2_upper_bounds(q, g, n1);
                if (*find_bound(reps, "b2_weil_n1").integer_part != weil_n1_floor(n1) ||
                    *find_bound(reps, "b2_hp_n1").integer_part != hp_n1_floor(n1)) {
                    c.fail("direct evaluation disagrees with the bound reports at (q=" +
                           std::to_string(q) + ", g=" + std::to_string(g) + ", N_1=" +
                           std::to_string(n1) + ")");
                    return;
                }
            }
            for (std::uint64_t n1 = 0; n1 <= top; ++n1) {
                if (hp_n1_floor(n1) > weil_n1_floor(n1)) {
                    c.fail("N_1-aware dominance fails at (q=" + std::to_string(q) + ", g=" +
                           std::to_string(g) + ", N_1=" + std::to_string(n1) + ")");
                    return;
                }
            }
        }
    }
    c.require(c.elapsed() < 60.0, "runtime exceeded 1 min");
}

void criterion_6() {
    Criterion c(6, "bound spot values: 2g+1 route (2,3) = 7, fourth-root route (3,3) = 5, "
                   "discriminant route (5,3) = 3 vs 4, discriminant signs at (11,1)/(9,1)");
    c.require(*find_bound(rho_upper_bounds(2, 3), "elkies_rho").integer_part == 7,
              "2g+1 route at (2,3) is not 7");
    c.require(*find_bound(rho_upper_bounds(3, 3), "ahl_rho").integer_part == 5,
              "fourth-root route at (3,3) is not 5");
    c.require(*find_bound(rho_upper_bounds(5, 3), "discriminant_rho").integer_part == 3,
              "discriminant route at (5,3) is not 3");
    c.require(*find_bound(rho_upper_bounds(5, 3), "ahl_rho").integer_part == 4,
              "fourth-root route at (5,3) is not 4");
    c.require(amplitude_discriminant_sign(11, 1) < 0, "discriminant sign at (11,1) not negative");
    c.require(amplitude_discriminant_sign(9, 1) >= 0,
              "discriminant sign at (9,1) not nonnegative");
}

void criterion_7() {
    Criterion c(7, "field axioms on every field <= 2^10, quadratic solver vs independent "
                   "oracle on 10^4 triples per field <= 2^12, exhaustive embeddings");
    for (auto [p, k] : prime_powers_up_to(1 << 10)) {
        Field F = make_field(p, k);
        for (std::uint64_t i = 1; i < F->q; ++i) {
            FieldElement x = F->element_at(i);
            if (!(F->mul(x, F->inv(x)) == F->one())) {
                c.fail("inverse fails in F_" + std::to_string(F->q));
                return;
            }
        }
        std::uint64_t seed = F->q * 1000003ull;
        const bool exhaustive = F->q <= 16;
        const std::uint64_t trials = exhaustive ? F->q * F->q * F->q : 2000;
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::uint64_t ia, ib, ic;
            if (exhaustive) {
                ia = t % F->q;
                ib = (t / F->q) % F->q;
                ic = t / (F->q * F->q);
            } else {
                ia = splitmix(seed) % F->q;
                ib = splitmix(seed) % F->q;
                ic = splitmix(seed) % F->q;
            }
            FieldElement a = F->element_at(ia), b = F->element_at(ib), cc = F->element_at(ic);
            bool ok = F->add(a, b) == F->add(b, a) && F->mul(a, b) == F->mul(b, a) &&
                      F->add(F->add(a, b), cc) == F->add(a, F->add(b, cc)) &&
                      F->mul(F->mul(a, b), cc) == F->mul(a, F->mul(b, cc)) &&
                      F->mul(a, F->add(b, cc)) == F->add(F->mul(a, b), F->mul(a, cc));
            if (!ok) {
                c.fail("ring axiom fails in F_" + std::to_string(F->q));
                return;
            }
        }
    }
    for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 1}, {2, 2}, {2, 3}, {2, 4},
                        {2, 6}, {2, 9}, {2, 12}, {3, 1}, {3, 2}, {3, 4}, {5, 1},
                        {5, 2}, {7, 1}, {7, 3}, {11, 2}, {13, 2}, {251, 1}, {4093, 1}}) {
        Field F = make_field(p, k);
        std::uint64_t seed = F->q ^ 0xabcdefull;
        for (int t = 0; t < 10000; ++t) {
            std::uint64_t ia = 1 + splitmix(seed) % (F->q - 1);
            std::uint64_t ib = splitmix(seed) % F->q;
            std::uint64_t ic = splitmix(seed) % F->q;
            auto roots = solve_quadratic(F->element_at(ia), F->element_at(ib), F->element_at(ic));
            std::set<std::uint64_t> got;
            for (const auto& r : roots) got.insert(F->index_of(r));
            if (got.size() != roots.size() || got != oracle_quadratic_roots(F, ia, ib, ic)) {
                c.fail("quadratic solver disagrees with the oracle in F_" + std::to_string(F->q));
                return;
            }
        }
    }
    for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 2}, {3, 2}}) {
        Field base = make_field(p, k);
        auto [ext, emb] = build_extension(base, 2);
        std::set<std::uint64_t> images;
        for (std::uint64_t i = 0; i < base->q; ++i) {
            images.insert(ext->index_of(emb(base->element_at(i))));
            for (std::uint64_t j = 0; j < base->q; ++j) {
                FieldElement a = base->element_at(i), b = base->element_at(j);
                if (!(emb(base->add(a, b)) == ext->add(emb(a), emb(b))) ||
                    !(emb(base->mul(a, b)) == ext->mul(emb(a), emb(b)))) {
                    c.fail("embedding is not a homomorphism from F_" + std::to_string(base->q));
                    return;
                }
            }
        }
        if (images.size() != base->q) {
            c.fail("embedding from F_" + std::to_string(base->q) + " is not injective");
            return;
        }
    }
}

void criterion_8() {
    Criterion c(8, "search rediscovery: genus-2 scan over F_2 finds B_3 = 0 curves, "
                   "genus-1 scan over F_2 finds max B_2 = 3");
    SearchSpec b3;
    b3.base = make_field(2, 1);
    b3.g = 2;
    b3.predicate = SearchSpec::Predicate::BrZero;
    b3.r = 3;
    SearchResult rb3 = scan(b3);
    c.require(!rb3.hits.empty(), "no B_3 = 0 genus-2 curve found over F_2");
    bool n1n3 = false;
    for (const auto& h : rb3.hits)
        if (h.profile.counts[0] == 5 && h.profile.counts[2] == 5) n1n3 = true;
    c.require(n1n3, "the N_1 = N_3 = 5 family was not rediscovered");
    SearchSpec mx;
    mx.base = make_field(2, 1);
    mx.g = 1;
    mx.predicate = SearchSpec::Predicate::MaximizeB2;
    SearchResult rmx = scan(mx);
    c.require(rmx.max_b2 == 3, "genus-1 max B_2 over F_2 is not 3");
    c.require(c.elapsed() < 60.0, "runtime exceeded 1 min");
}

}  // namespace

int main() {
    const Catalog& cat = default_catalog();
    criterion_1(cat);
    criterion_2(cat);
    criterion_3(cat);
    criterion_4(cat);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0) {
        std::printf("all 8 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
