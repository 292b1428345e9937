#ifndef CURVEATLAS_ZETA_HPP_
#define CURVEATLAS_ZETA_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curveatlas/counting.hpp"
#include "curveatlas/curve.hpp"

/// L-polynomial reconstruction from N_1..N_g via Newton's identities,
/// extension of N_n to all n, and closed-point counts B_r by Moebius
/// inversion. All arithmetic here is exact.

namespace curveatlas {

using BigInt = boost::multiprecision::cpp_int;

class NonIntegralCoefficientError : public std::runtime_error {
public:
    explicit NonIntegralCoefficientError(const std::string& msg) : std::runtime_error(msg) {}
};

class NotWeilError : public std::runtime_error {
public:
    explicit NotWeilError(const std::string& msg) : std::runtime_error(msg) {}
};

class NonIntegralResultError : public std::runtime_error {
public:
    explicit NonIntegralResultError(const std::string& msg) : std::runtime_error(msg) {}
};

class NegativeResultError : public std::runtime_error {
public:
    explicit NegativeResultError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius(0)");
    int factors = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return factors % 2 == 0 ? 1 : -1;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Numerator of the zeta function: degree-2g integer polynomial with
/// a_0 = 1 and the functional-equation symmetry a_{2g-i} = q^{g-i} a_i.
struct LPolynomial {
    std::uint64_t q = 0;
    unsigned g = 0;
    std::vector<BigInt> a;  // a_0..a_{2g}

    void validate() const {
        if (a.size() != 2 * g + 1 || a[0] != 1)
            throw NotWeilError("malformed L-polynomial coefficient vector");
        for (unsigned i = 0; i <= g; ++i) {
            BigInt scale = 1;
            for (unsigned j = 0; j < g - i; ++j) scale *= q;
            if (a[2 * g - i] != scale * a[i])
                throw NotWeilError("functional equation fails at index " + std::to_string(i));
        }
        if (g > 0 && !roots_on_weil_circle())
            throw NotWeilError("a reciprocal root strays from |w| = sqrt(q)");
    }

    /// Numerical guard (1e-6 relative), not a proof: every complex reciprocal
    /// root of the polynomial must sit on the circle of radius sqrt(q).
    bool roots_on_weil_circle() const {
        // Durand-Kerner on the squarefree part of the monic reversal: roots
        // of T^{2g} + ... give the reciprocal roots w_j directly, and
        // dividing out gcd(P, P') exactly keeps multiple roots (maximal
        // curves!) from wrecking convergence.
        using Rat = boost::multiprecision::cpp_rational;
        std::vector<Rat> mono(2 * g + 1);  // monic, highest degree first
        for (unsigned i = 0; i <= 2 * g; ++i) mono[i] = Rat(a[i]);  // z^{2g} coeff = a_0 = 1
        auto trim = [](std::vector<Rat>& p) {
            std::size_t lead = 0;
            while (lead + 1 < p.size() && p[lead] == 0) ++lead;
            p.erase(p.begin(), p.begin() + std::ptrdiff_t(lead));
        };
        auto rem = [&](std::vector<Rat> num, const std::vector<Rat>& den) {
            while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
                Rat f = num[0] / den[0];
                for (std::size_t i = 0; i < den.size(); ++i) num[i] -= f * den[i];
                trim(num);
                if (num.size() == 1 && num[0] == 0) break;
            }
            return num;
        };
        std::vector<Rat> u = mono, v(2 * g);
        for (unsigned i = 0; i < 2 * g; ++i) v[i] = mono[i] * (2 * g - i);
        trim(v);
        while (!(v.size() == 1 && v[0] == 0)) {
            std::vector<Rat> r = rem(u, v);
            u = std::move(v);
            v = std::move(r);
        }
        // u = gcd(P, P'); squarefree part = P / u, computed by exact division
        std::vector<Rat> sqf;
        {
            std::vector<Rat> num = mono;
            while (num.size() >= u.size() && !(num.size() == 1 && num[0] == 0)) {
                Rat f = num[0] / u[0];
                sqf.push_back(f);
                for (std::size_t i = 0; i < u.size(); ++i) num[i] -= f * u[i];
                num.erase(num.begin());
            }
        }
        for (std::size_t i = sqf.size(); i-- > 0;) sqf[i] /= sqf[0];  // make monic
        const unsigned d = unsigned(sqf.size()) - 1;
        if (d == 0) return true;
        std::vector<std::complex<double>> coef(d + 1);  // monic, highest first
        for (unsigned i = 0; i <= d; ++i) coef[i] = double(sqf[i]);
        auto eval = [&](std::complex<double> z) {
            std::complex<double> acc = 0;
            for (unsigned i = 0; i <= d; ++i) acc = acc * z + coef[i];
            return acc;
        };
        std::vector<std::complex<double>> r(d);
        for (unsigned i = 0; i < d; ++i)
            r[i] = std::polar(std::sqrt(double(q)) * 1.1, 0.4 + 2.0 * M_PI * i / d);
        for (int iter = 0; iter < 500; ++iter) {
            double moved = 0;
            for (unsigned i = 0; i < d; ++i) {
                std::complex<double> denom = 1;
                for (unsigned j = 0; j < d; ++j)
                    if (j != i) denom *= (r[i] - r[j]);
                std::complex<double> delta = eval(r[i]) / denom;
                r[i] -= delta;
                moved = std::max(moved, std::abs(delta));
            }
            if (moved < 1e-12) break;
        }
        const double sq = std::sqrt(double(q));
        for (unsigned i = 0; i < d; ++i)
            if (std::abs(std::abs(r[i]) - sq) > 1e-6 * sq) return false;
        return true;
    }
};

/// Power sums S_n = q^n + 1 - N_n of the reciprocal roots, then Newton's
/// identities S_n + a_1 S_{n-1} + ... + a_{n-1} S_1 + n a_n = 0 recover
/// a_1..a_g; the functional equation fills the rest.
inline LPolynomial l_polynomial_from_counts(std::uint64_t q, unsigned g,
                                            const std::vector<std::uint64_t>& counts) {
    if (counts.size() != g)
        throw std::invalid_argument("need exactly g point counts");
    LPolynomial P{q, g, std::vector<BigInt>(2 * g + 1)};
    P.a[0] = 1;
    std::vector<BigInt> S(g + 1);
    BigInt qn = 1;
    for (unsigned n = 1; n <= g; ++n) {
        qn *= q;
        S[n] = qn + 1 - BigInt(counts[n - 1]);
    }
    for (unsigned n = 1; n <= g; ++n) {
        BigInt acc = S[n];
        for (unsigned i = 1; i < n; ++i) acc += P.a[i] * S[n - i];
        if (acc % n != 0)
            throw NonIntegralCoefficientError("Newton identity yields a non-integer a_" +
                                              std::to_string(n));
        P.a[n] = -acc / n;
    }
    for (unsigned i = 0; i < g; ++i) {
        BigInt scale = 1;
        for (unsigned j = 0; j < g - i; ++j) scale *= q;
        P.a[2 * g - i] = scale * P.a[i];
    }
    P.validate();
    return P;
}

/// N_n from the L-polynomial, for any n >= 1 (exact integers throughout).
inline BigInt counts_from_l_polynomial(const LPolynomial& P, unsigned n) {
    std::vector<BigInt> S(n + 1);
    for (unsigned m = 1; m <= n; ++m) {
        BigInt acc = 0;
        const unsigned top = std::min(m, 2 * P.g);
        for (unsigned i = 1; i <= top; ++i) acc += P.a[i] * S[m - i];
        if (m <= 2 * P.g) acc += BigInt(m) * P.a[m];
        S[m] = -acc;
    }
    BigInt qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= P.q;
    return qn + 1 - S[n];
}

/// B_r = (1/r) sum_{d | r} mu(r/d) N_d. The division must be exact and the
/// result nonnegative whenever the N_d really are curve counts.
inline BigInt closed_points_from_counts(const std::map<unsigned, BigInt>& N, unsigned r) {
    BigInt acc = 0;
    for (std::uint64_t d : divisors(r)) {
        auto it = N.find(unsigned(d));
        if (it == N.end()) throw std::invalid_argument("missing N_" + std::to_string(d));
        acc += BigInt(mobius(r / d)) * it->second;
    }
    if (acc % r != 0)
        throw NonIntegralResultError("sum_{d|r} mu(r/d) N_d not divisible by r=" + std::to_string(r));
    BigInt b = acc / r;
    if (b < 0) throw NegativeResultError("negative closed-point count B_" + std::to_string(r));
    return b;
}

inline BigInt closed_points(const LPolynomial& P, unsigned r) {
    std::map<unsigned, BigInt> N;
    for (std::uint64_t d : divisors(r)) N[unsigned(d)] = counts_from_l_polynomial(P, unsigned(d));
    return closed_points_from_counts(N, r);
}

inline BigInt closed_points(const CountsProfile& profile, unsigned r) {
    std::map<unsigned, BigInt> N;
    for (std::uint64_t d : divisors(r)) {
        if (d > profile.counts.size())
            throw std::invalid_argument("profile too short for B_" + std::to_string(r));
        N[unsigned(d)] = BigInt(profile.counts[d - 1]);
    }
    return closed_points_from_counts(N, r);
}

/// Full closed-point profile B_1..B_{r_max} for a curve model. Only g direct
/// enumerations are needed: the L-polynomial extends the counts, and the
/// divisor-sum identity sum_{d|r} d B_d = N_r is re-verified for every r.
inline std::map<unsigned, BigInt> closed_points_profile(const CurveModel& m, unsigned r_max,
                                                        std::uint64_t field_cap = kDefaultFieldCap,
                                                        std::uint64_t budget = kDefaultEnumBudget) {
    const unsigned g = genus(m);
    const std::uint64_t q = base_field(m)->q;
    std::vector<std::uint64_t> direct;
    for (unsigned n = 1; n <= g; ++n) direct.push_back(count_points(m, n, field_cap, budget));
    LPolynomial P = g == 0 ? LPolynomial{q, 0, {BigInt(1)}} : l_polynomial_from_counts(q, g, direct);
    std::map<unsigned, BigInt> B;
    std::map<unsigned, BigInt> N;
    for (unsigned n = 1; n <= r_max; ++n) N[n] = counts_from_l_polynomial(P, n);
    for (unsigned r = 1; r <= r_max; ++r) B[r] = closed_points_from_counts(N, r);
    for (unsigned r = 1; r <= r_max; ++r) {
        BigInt roundtrip = 0;
        for (std::uint64_t d : divisors(r)) roundtrip += BigInt(d) * B[unsigned(d)];
        if (roundtrip != N[r])
            throw InvariantViolationError("divisor-sum roundtrip fails at r=" + std::to_string(r));
    }
    return B;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_ZETA_HPP_
