#ifndef CURVEATLAS_BOUNDS_HPP_
#define CURVEATLAS_BOUNDS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curveatlas/zeta.hpp"

/// Certified evaluation of the explicit bounds on N_n, B_r and rho(q,g):
/// exact rationals wherever an expression is rational in q, exact sign and
/// comparison logic in Q(sqrt(d)) for single radicals, and directed rational
/// enclosures with iterative refinement for nested radicals. Floor/ceiling
/// extraction refuses to guess: an enclosure that straddles an integer
/// boundary is refined and, past a cap, reported as an error.

namespace curveatlas {

using Rational = boost::multiprecision::cpp_rational;

class RefinementCapExceededError : public std::runtime_error {
public:
    explicit RefinementCapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace certified {

inline BigInt pow_int(std::uint64_t base, unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

inline BigInt floor_rational(const Rational& x) {
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline BigInt ceil_rational(const Rational& x) { return -floor_rational(-x); }

inline int sign_rational(const Rational& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }

/// Exact square root of a nonnegative rational, if it is one.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt sn = boost::multiprecision::sqrt(n);
    BigInt sd = boost::multiprecision::sqrt(d);
    if (sn * sn == n && sd * sd == d) return Rational(sn, sd);
    return std::nullopt;
}

/// Closed rational enclosure of a real value.
struct RatInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator*(const RatInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
    }

    static RatInterval point(const Rational& v) { return {v, v}; }
};

/// sqrt enclosure with 2^-prec_bits absolute slack; exact when x is a
/// perfect rational square.
inline RatInterval sqrt_interval(const Rational& x, unsigned prec_bits) {
    if (x < 0) throw std::domain_error("sqrt of negative value");
    if (auto e = exact_sqrt(x)) return RatInterval::point(*e);
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt scale = BigInt(1) << prec_bits;
    BigInt L = boost::multiprecision::sqrt(BigInt(n * d * scale * scale));
    Rational lo(L, d * scale), hi(L + 1, d * scale);
    return {lo, hi};
}

inline RatInterval sqrt_interval(const RatInterval& x, unsigned prec_bits) {
    RatInterval lo = sqrt_interval(std::max(Rational(0), x.lo), prec_bits);
    RatInterval hi = sqrt_interval(std::max(Rational(0), x.hi), prec_bits);
    return {lo.lo, hi.hi};
}

/// a + b * sqrt(d) with rational a, b and rational d >= 0. Normalized: if d
/// is a perfect square the radical is folded into a. All sign and comparison
/// queries are exact (squaring-based), which is what makes floor/ceil of
/// these values safe.
struct Surd {
    Rational a, b, d;

    Surd(Rational a_, Rational b_, Rational d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
        if (d < 0) throw std::domain_error("Surd with negative radicand");
        if (auto e = exact_sqrt(d)) {
            a += b * *e;
            b = 0;
            d = 0;
        }
        if (b == 0) d = 0;
    }

    static Surd rational(Rational v) { return Surd(std::move(v), 0, 0); }

    bool is_rational() const { return b == 0; }

    int sign() const {
        if (b == 0) return sign_rational(a);
        if (a == 0) return sign_rational(b);
        int sa = sign_rational(a), sb = sign_rational(b);
        if (sa == sb) return sa;
        // compare |a| vs |b| sqrt(d) by squaring
        int c = sign_rational(a * a - b * b * d);
        return c == 0 ? 0 : (c > 0 ? sa : sb);
    }

    Surd operator+(const Surd& o) const { return Surd(a + o.a, b + o.b, b + o.b == 0 ? 0 : pick_d(o)); }
    Surd operator-(const Surd& o) const { return Surd(a - o.a, b - o.b, b - o.b == 0 ? 0 : pick_d(o)); }
    Surd operator*(const Surd& o) const {
        Rational dd = pick_d(o);
        return Surd(a * o.a + b * o.b * dd, a * o.b + b * o.a, dd);
    }
    Surd operator-() const { return Surd(-a, -b, d); }
    Surd scaled(const Rational& s) const { return Surd(a * s, b * s, d); }

    friend int cmp(const Surd& x, const Surd& y) { return (x - y).sign(); }

    RatInterval to_interval(unsigned prec_bits = 128) const {
        if (b == 0) return RatInterval::point(a);
        RatInterval s = sqrt_interval(d, prec_bits);
        return RatInterval::point(a) + s * RatInterval::point(b);
    }

    /// Exact floor: double estimate corrected by exact comparisons.
    BigInt floor() const {
        if (b == 0) return floor_rational(a);
        double est = double(a) + double(b) * std::sqrt(double(d));
        BigInt n = BigInt(std::llround(std::floor(est)));
        while (cmp(*this, Surd::rational(Rational(n))) < 0) --n;
        while (cmp(*this, Surd::rational(Rational(n + 1))) >= 0) ++n;
        return n;
    }

    BigInt ceil() const { return -(-*this).floor(); }

private:
    Rational pick_d(const Surd& o) const {
        if (b != 0 && o.b != 0 && d != o.d)
            throw std::invalid_argument("mixing distinct radicands");
        return b != 0 ? d : o.d;
    }
};

/// q^{n/2} as an exact element of Q(sqrt(q)).
inline Surd half_power(std::uint64_t q, unsigned n) {
    BigInt whole = pow_int(q, n / 2);
    if (n % 2 == 0) return Surd::rational(Rational(whole));
    return Surd(0, Rational(whole), Rational(q));
}

/// A = q/(q-1) + 2g sqrt(q)/(sqrt(q)-1), rationalized to
/// (q + 2gq)/(q-1) + (2g/(q-1)) sqrt(q).
inline Surd tvn_amplitude(std::uint64_t q, unsigned g) {
    Rational den = Rational(q) - 1;
    return Surd(Rational(BigInt(q) + BigInt(2) * g * q) / den, Rational(BigInt(2) * g) / den,
                Rational(q));
}

}  // namespace certified

struct CertifiedValue {
    Rational lo, hi;
    bool exact = false;

    static CertifiedValue from_rational(const Rational& v) { return {v, v, true}; }
    static CertifiedValue from_surd(const certified::Surd& s, unsigned prec_bits = 128) {
        auto iv = s.to_interval(prec_bits);
        return {iv.lo, iv.hi, iv.exact()};
    }
    static CertifiedValue from_interval(const certified::RatInterval& iv) {
        return {iv.lo, iv.hi, iv.exact()};
    }
};

struct BoundReport {
    std::string id;
    std::uint64_t q = 0;
    unsigned g = 0;
    std::optional<unsigned> r;
    std::optional<std::uint64_t> n1;
    std::optional<std::uint64_t> n2;
    CertifiedValue value{0, 0, false};
    std::optional<BigInt> integer_part;  // floor for upper bounds, as published
    bool applicable = false;
    std::string reason;
    bool guarantees_positive = false;  // for B_r lower bounds
};

/// Exact Weil interval for N_n: [ceil(q^n+1-2g q^{n/2}), floor(q^n+1+2g q^{n/2})].
inline std::pair<BigInt, BigInt> weil_interval(std::uint64_t q, unsigned g, unsigned n) {
    using namespace certified;
    Surd mid = Surd::rational(Rational(pow_int(q, n) + 1));
    Surd radius = half_power(q, n).scaled(Rational(BigInt(2) * g));
    return {(mid - radius).ceil(), (mid + radius).floor()};
}

// ---------------------------------------------------------------------------
// Lower bounds on B_r
// ---------------------------------------------------------------------------

/// Four certified lower-bound routes for B_r. Vacuous (negative) bounds are
/// reported, not suppressed.
inline std::vector<BoundReport> br_lower_bounds(std::uint64_t q, unsigned g, unsigned r) {
    using namespace certified;
    std::vector<BoundReport> out;
    const Rational qr(pow_int(q, r));
    const Surd qr_half = half_power(q, r);

    {
        // Weil floor at r = 1: B_1 = N_1 >= q+1-2g sqrt(q).
        BoundReport rep;
        rep.id = "weil_b1_lower";
        rep.q = q; rep.g = g; rep.r = r;
        if (r == 1) {
            Surd v = Surd::rational(Rational(BigInt(q) + 1)) - half_power(q, 1).scaled(Rational(BigInt(2) * g));
            rep.applicable = true;
            rep.value = CertifiedValue::from_surd(v);
            rep.integer_part = v.ceil();
            rep.guarantees_positive = v.sign() > 0;
        } else {
            rep.reason = "only the r = 1 case reads B_1 off the Weil interval";
        }
        out.push_back(std::move(rep));
    }
    {
        // B_r >= q^r/r - A (q^{r/2}-1)/r, A the usual amplitude.
        BoundReport rep;
        rep.id = "tvn_br_lower";
        rep.q = q; rep.g = g; rep.r = r;
        rep.applicable = true;
        Surd A = tvn_amplitude(q, g);
        Surd v = (Surd::rational(qr) - A * (qr_half - Surd::rational(1))).scaled(Rational(1, r));
        rep.value = CertifiedValue::from_surd(v);
        rep.guarantees_positive = v.sign() > 0;
        out.push_back(std::move(rep));
    }
    {
        // strict: B_r > (q^r - (6g+3) q^{r/2})/r.
        BoundReport rep;
        rep.id = "elkies_br_lower";
        rep.q = q; rep.g = g; rep.r = r;
        rep.applicable = true;
        Surd v = (Surd::rational(qr) - qr_half.scaled(Rational(BigInt(6) * g + 3))).scaled(Rational(1, r));
        rep.value = CertifiedValue::from_surd(v);
        rep.guarantees_positive = v.sign() >= 0;  // the displayed inequality is strict
        out.push_back(std::move(rep));
    }
    {
        // strict: B_r > (q^{r/4}+1)^2 ((q^{r/4}-1)^2 - 2g)/r, for g >= 1, r >= 2.
        BoundReport rep;
        rep.id = "ahl_br_lower";
        rep.q = q; rep.g = g; rep.r = r;
        if (g >= 1 && r >= 2) {
            rep.applicable = true;
            // with u = q^{r/2}, s = q^{r/4}, c = 1-2g the product expands to
            // u^2 + (c-3)u + c + 2(c-1)s; only s leaves Q(sqrt(q)).
            const Rational c = Rational(1) - Rational(BigInt(2) * g);
            Surd u = qr_half;
            Surd alpha = u * u + u.scaled(c - 3) + Surd::rational(c);
            RatInterval s = sqrt_interval(qr_half.to_interval(192), 192);
            RatInterval val = (alpha.to_interval(192) +
                               s * RatInterval::point(2 * (c - 1))) *
                              RatInterval::point(Rational(1, r));
            rep.value = CertifiedValue::from_interval(val);
            // positivity is exactly (q^{r/4}-1)^2 >= 2g, i.e. u+1-2g >= 2 q^{r/4}
            Surd lhs = u + Surd::rational(1 - Rational(BigInt(2) * g));
            bool guarantees = false;
            if (lhs.sign() >= 0) guarantees = cmp(lhs * lhs, u.scaled(4)) >= 0;
            rep.guarantees_positive = guarantees;
        } else {
            rep.reason = "needs g >= 1 and r >= 2";
        }
        out.push_back(std::move(rep));
    }
    {
        // prime-degree existence: if r is prime and g < (sqrt(q^r)-sqrt(q))/2
        // then B_r > 0; certified value (q^r - q - 2g(q^{r/2}+sqrt(q)))/r.
        BoundReport rep;
        rep.id = "prime_weil_br_lower";
        rep.q = q; rep.g = g; rep.r = r;
        bool r_prime = detail::is_prime_u64(r);
        if (r_prime) {
            rep.applicable = true;
            Surd v = (Surd::rational(qr - Rational(q)) -
                      (qr_half + half_power(q, 1)).scaled(Rational(BigInt(2) * g)))
                         .scaled(Rational(1, r));
            rep.value = CertifiedValue::from_surd(v);
            rep.guarantees_positive = v.sign() > 0;
        } else {
            rep.reason = "applies only for prime r";
        }
        out.push_back(std::move(rep));
    }
    return out;
}

/// True when some certified route guarantees B_r > 0 for every genus-g curve
/// over F_q.
inline bool formula_guarantees_br_positive(std::uint64_t q, unsigned g, unsigned r) {
    for (const auto& rep : br_lower_bounds(q, g, r))
        if (rep.applicable && rep.guarantees_positive) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Upper bounds on rho(q,g)
// ---------------------------------------------------------------------------

namespace certified {

/// Discriminant A(A-4) as an exact element of Q(sqrt(q)).
inline Surd amplitude_discriminant(std::uint64_t q, unsigned g) {
    Surd A = tvn_amplitude(q, g);
    return A * (A - Surd::rational(4));
}

/// Greatest r >= 1 with q^{r-1} <= csq, where csq is delivered as a
/// refinable enclosure; exact enclosures resolve immediately.
inline unsigned floor_log_search(std::uint64_t q,
                                 const std::function<RatInterval(unsigned)>& csq,
                                 unsigned max_r = 512) {
    for (unsigned prec = 64; prec <= 8192; prec *= 2) {
        RatInterval iv = csq(prec);
        unsigned best = 0;
        bool straddle = false;
        Rational qpow = 1;
        for (unsigned r = 1; r <= max_r; ++r) {
            if (qpow <= iv.lo) {
                best = r;
            } else if (qpow <= iv.hi && !iv.exact()) {
                straddle = true;
                break;
            } else {
                break;
            }
            qpow *= q;
        }
        if (!straddle) return best;
    }
    throw RefinementCapExceededError("enclosure straddles an integer power past the refinement cap");
}

}  // namespace certified

/// All formula upper bounds on rho(q,g), plus the two exact rho = 1 rules.
inline std::vector<BoundReport> rho_upper_bounds(std::uint64_t q, unsigned g) {
    using namespace certified;
    std::vector<BoundReport> out;
    if (g == 0) {
        BoundReport rep;
        rep.id = "genus_zero";
        rep.q = q; rep.g = 0;
        rep.applicable = true;
        rep.value = CertifiedValue::from_rational(1);
        rep.integer_part = BigInt(1);
        out.push_back(std::move(rep));
        return out;
    }

    {
        // ceil(2 log_q((2g+1)/(sqrt(q)-1)) + 1): least r with q^{r-1} >= c^2;
        // the comparison q^{r-1}(q+1-2 sqrt(q)) >= (2g+1)^2 is exact.
        BoundReport rep;
        rep.id = "tvn_rho";
        rep.q = q; rep.g = g;
        rep.applicable = true;
        const Rational target(BigInt(2 * g + 1) * (2 * g + 1));
        unsigned r = 1;
        for (;; ++r) {
            Surd lhs = Surd(Rational(pow_int(q, r - 1)) * (Rational(q) + 1),
                            -Rational(pow_int(q, r - 1)) * 2, Rational(q));
            if (cmp(lhs, Surd::rational(target)) >= 0) break;
            if (r > 4 * g + 8) break;  // the uniform bound caps the search
        }
        rep.integer_part = BigInt(std::max(r, 1u));
        rep.value = CertifiedValue::from_rational(Rational(*rep.integer_part));
        out.push_back(std::move(rep));
    }
    {
        BoundReport rep;
        rep.id = "rho_uniform";
        rep.q = q; rep.g = g;
        rep.applicable = true;
        rep.integer_part = BigInt(4) * g + 3;
        rep.value = CertifiedValue::from_rational(Rational(*rep.integer_part));
        out.push_back(std::move(rep));
    }
    {
        // rho <= 2g+1 for g >= 2.
        BoundReport rep;
        rep.id = "elkies_rho";
        rep.q = q; rep.g = g;
        if (g >= 2) {
            rep.applicable = true;
            rep.integer_part = BigInt(2) * g + 1;
            rep.value = CertifiedValue::from_rational(Rational(*rep.integer_part));
        } else {
            rep.reason = "applies for g >= 2";
        }
        out.push_back(std::move(rep));
    }
    {
        // max(2, ceil(4 log_q(1 + sqrt(2g)))): least r with q^r >= (1+sqrt(2g))^4,
        // decided exactly in Q(sqrt(2g)).
        BoundReport rep;
        rep.id = "ahl_rho";
        rep.q = q; rep.g = g;
        rep.applicable = true;
        const Rational tg(BigInt(2) * g);
        Surd w4((1 + tg) * (1 + tg) + 4 * tg, 4 * (1 + tg), tg);
        unsigned r = 0;
        while (cmp(Surd::rational(Rational(pow_int(q, r))), w4) < 0 && r <= 4 * g + 8) ++r;
        rep.integer_part = BigInt(std::max(r, 2u));
        rep.value = CertifiedValue::from_rational(Rational(*rep.integer_part));
        out.push_back(std::move(rep));
    }
    {
        // floor(2 log_q((A + sqrt(A(A-4)))/2) + 1), valid when A(A-4) >= 0.
        // Applicability is decided by the computed discriminant sign, not by
        // a prose precondition.
        BoundReport rep;
        rep.id = "discriminant_rho";
        rep.q = q; rep.g = g;
        Surd A = tvn_amplitude(q, g);
        Surd D = amplitude_discriminant(q, g);
        if (D.sign() >= 0) {
            rep.applicable = true;
            unsigned r;
            // c^2 = (A^2 + D)/4 + (A/2) sqrt(D)
            Surd head = (A * A + D).scaled(Rational(1, 4));
            std::optional<Surd> csq_exact;
            if (D.is_rational()) {
                if (auto e = exact_sqrt(D.a)) {
                    csq_exact = head + A.scaled(*e / 2);  // sqrt(D) rational
                } else if (A.is_rational() && head.is_rational()) {
                    csq_exact = Surd(head.a, A.a / 2, D.a);  // lives in Q(sqrt(D))
                }
            }
            if (csq_exact) {
                r = 0;
                unsigned cand = 1;
                Rational qpow = 1;
                for (; cand <= 4 * g + 8; ++cand) {
                    if (cmp(Surd::rational(qpow), *csq_exact) <= 0) r = cand;
                    else break;
                    qpow *= q;
                }
            } else {
                auto gen = [&](unsigned prec) {
                    RatInterval Ai = A.to_interval(prec);
                    RatInterval Di = D.to_interval(prec);
                    RatInterval s = sqrt_interval(Di, prec);
                    RatInterval c = (Ai + s) * RatInterval::point(Rational(1, 2));
                    return c * c;
                };
                r = floor_log_search(q, gen);
            }
            rep.integer_part = BigInt(std::max(r, 1u));
            rep.value = CertifiedValue::from_rational(Rational(*rep.integer_part));
        } else {
            rep.reason = "discriminant A(A-4) is negative";
        }
        out.push_back(std::move(rep));
    }
    {
        // exact rho = 1 criterion: g < (sqrt(q)/2)(1 - (sqrt(q)-1)/(q-1)),
        // squared to (2g(q-1)+q)^2 < q^3; shares the discriminant condition.
        BoundReport rep;
        rep.id = "rho_one_criterion";
        rep.q = q; rep.g = g;
        Surd D = amplitude_discriminant(q, g);
        BigInt lhs = BigInt(2) * g * (BigInt(q) - 1) + q;
        bool holds = lhs * lhs < pow_int(q, 3);
        if (D.sign() >= 0 && holds) {
            rep.applicable = true;
            rep.integer_part = BigInt(1);
            rep.value = CertifiedValue::from_rational(1);
        } else {
            rep.reason = D.sign() < 0 ? "discriminant A(A-4) is negative" : "criterion fails";
        }
        out.push_back(std::move(rep));
    }
    {
        // A(A-4) < 0 forces B_r >= 1 for every r, hence rho = 1 outright.
        BoundReport rep;
        rep.id = "negative_discriminant_rho_one";
        rep.q = q; rep.g = g;
        Surd D = amplitude_discriminant(q, g);
        if (D.sign() < 0) {
            rep.applicable = true;
            rep.integer_part = BigInt(1);
            rep.value = CertifiedValue::from_rational(1);
        } else {
            rep.reason = "discriminant A(A-4) is nonnegative";
        }
        out.push_back(std::move(rep));
    }
    return out;
}

inline int amplitude_discriminant_sign(std::uint64_t q, unsigned g) {
    return certified::amplitude_discriminant(q, g).sign();
}

/// Minimum over the applicable formula upper bounds.
inline BigInt rho_upper_min(const std::vector<BoundReport>& reports) {
    std::optional<BigInt> best;
    for (const auto& rep : reports)
        if (rep.applicable && rep.integer_part && (!best || *rep.integer_part < *best))
            best = rep.integer_part;
    if (!best) throw std::logic_error("no applicable rho upper bound");
    return *best;
}

// ---------------------------------------------------------------------------
// Upper bounds on B_2
// ---------------------------------------------------------------------------

inline std::vector<BoundReport> b2_upper_bounds(std::uint64_t q, unsigned g,
                                                std::optional<std::uint64_t> n1 = std::nullopt) {
    using namespace certified;
    std::vector<BoundReport> out;
    const Rational core = Rational(BigInt(q) * q + 1 + BigInt(2) * g * q) / 2;  // (q^2+1+2gq)/2

    auto finish = [](BoundReport& rep, const Surd& v) {
        rep.applicable = true;
        rep.value = CertifiedValue::from_surd(v);
        rep.integer_part = v.floor();
    };

    {
        // r = 2 specialization of the general closed-point inequality:
        // B_2 <= (q^2+1+2gq)/2 + (q-1+2g sqrt(q))/2.
        BoundReport rep;
        rep.id = "b2_tvn";
        rep.q = q; rep.g = g;
        finish(rep, Surd(core + Rational(BigInt(q) - 1) / 2, Rational(g), Rational(q)));
        out.push_back(std::move(rep));
    }
    {
        // B_2 = (N_2-N_1)/2 <= (q^2+1+2gq)/2 - N_1/2.
        BoundReport rep;
        rep.id = "b2_weil_n1";
        rep.q = q; rep.g = g; rep.n1 = n1;
        if (n1) {
            finish(rep, Surd::rational(core - Rational(*n1) / 2));
        } else {
            rep.reason = "needs N_1";
        }
        out.push_back(std::move(rep));
    }
    {
        // N_1-free Weil route, split at g >= (q+1)/(2 sqrt(q)) (exact branch test).
        BoundReport rep;
        rep.id = "b2_weil";
        rep.q = q; rep.g = g;
        bool big_genus = BigInt(4) * g * g * q >= (BigInt(q) + 1) * (BigInt(q) + 1);
        if (big_genus)
            finish(rep, Surd::rational(core));
        else
            finish(rep, Surd(Rational(BigInt(q) * q - q + BigInt(2) * g * q) / 2, Rational(g),
                             Rational(q)));
        out.push_back(std::move(rep));
    }
    {
        // Hallouin-Perret consequence with N_1:
        // B_2 <= (q^2+1+2gq)/2 - N_1/2 - (N_1-(q+1))^2/(2g).
        BoundReport rep;
        rep.id = "b2_hp_n1";
        rep.q = q; rep.g = g; rep.n1 = n1;
        if (n1 && g >= 1) {
            Rational delta = Rational(*n1) - (Rational(q) + 1);
            finish(rep, Surd::rational(core - Rational(*n1) / 2 - delta * delta / (Rational(2) * g)));
        } else {
            rep.reason = "needs N_1 and g >= 1";
        }
        out.push_back(std::move(rep));
    }
    {
        // N_1-free optimization of the previous bound, split at g >= 2q+2.
        BoundReport rep;
        rep.id = "b2_hp";
        rep.q = q; rep.g = g;
        if (g >= 1) {
            Rational v;
            if (BigInt(g) >= BigInt(2) * q + 2)
                v = core - Rational((BigInt(q) + 1) * (BigInt(q) + 1)) / (Rational(2) * g);
            else
                v = core - (Rational(4) * (Rational(q) + 1) - g) / 8;
            finish(rep, Surd::rational(v));
        } else {
            rep.reason = "needs g >= 1";
        }
        out.push_back(std::move(rep));
    }
    return out;
}

inline BoundReport find_bound(const std::vector<BoundReport>& reports, const std::string& id) {
    for (const auto& rep : reports)
        if (rep.id == id) return rep;
    throw std::invalid_argument("no bound report with id " + id);
}

/// Exact test of N_2 - (q^2+1) <= 2gq - (N_1-(q+1))^2 / g.
inline bool hallouin_perret_check(std::uint64_t q, unsigned g, std::uint64_t n1, std::uint64_t n2) {
    if (g < 1) throw std::invalid_argument("needs g >= 1");
    BigInt delta = BigInt(n1) - (BigInt(q) + 1);
    return BigInt(g) * (BigInt(n2) - (BigInt(q) * q + 1)) <= BigInt(2) * g * g * q - delta * delta;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_BOUNDS_HPP_
