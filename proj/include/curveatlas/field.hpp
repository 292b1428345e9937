#ifndef CURVEATLAS_FIELD_HPP_
#define CURVEATLAS_FIELD_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

/// Exact arithmetic in F_{p^k}, realized as F_p[t]/(m(t)) with m the
/// lexicographically smallest monic irreducible polynomial of degree k.
/// Fields are capped at 2^24 elements by default; everything in this
/// library runs over fields far smaller than that.

namespace curveatlas {

class FieldError : public std::runtime_error {
public:
    explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

class NotPrimeError : public FieldError {
public:
    explicit NotPrimeError(const std::string& msg) : FieldError(msg) {}
};

class CapExceededError : public FieldError {
public:
    explicit CapExceededError(const std::string& msg) : FieldError(msg) {}
};

class DescriptorMismatchError : public FieldError {
public:
    explicit DescriptorMismatchError(const std::string& msg) : FieldError(msg) {}
};

class DivisionByZeroError : public FieldError {
public:
    explicit DivisionByZeroError(const std::string& msg) : FieldError(msg) {}
};

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t(1) << 24;

// With q = p^k <= 2^24 the extension degree never exceeds 24 (p = 2).
inline constexpr unsigned kMaxFieldDegree = 24;

struct FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

/// Value type: dense coefficient vector over Z/pZ, low degree first.
/// The canonical form (all coefficients reduced mod p) is unique, so
/// equality is coefficient-wise.
struct FieldElement {
    const FieldDescriptor* fd = nullptr;
    std::array<std::uint32_t, kMaxFieldDegree> c{};

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.fd == b.fd && a.c == b.c;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// --- dense polynomials over the prime field F_p, used only for the
// --- modulus search (irreducibility testing) at field construction.

using PfPoly = std::vector<std::uint32_t>;  // low degree first, no trailing zeros

inline void pf_trim(PfPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PfPoly pf_mod(PfPoly a, const PfPoly& m, std::uint64_t p) {
    // m is monic
    pf_trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t j = 0; j < m.size(); ++j)
                a[shift + j] = std::uint32_t((a[shift + j] + (p - (lead * m[j]) % p)) % p);
        }
        a.pop_back();
        pf_trim(a);
    }
    return a;
}

inline PfPoly pf_mulmod(const PfPoly& a, const PfPoly& b, const PfPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> tmp(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            tmp[i + j] = (tmp[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    PfPoly r(tmp.begin(), tmp.end());
    return pf_mod(std::move(r), m, p);
}

inline PfPoly pf_powmod(PfPoly base, std::uint64_t e, const PfPoly& m, std::uint64_t p) {
    PfPoly result{1};
    base = pf_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = pf_mulmod(result, base, m, p);
        base = pf_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

inline std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t p) {
    // extended Euclid, p prime
    std::int64_t t = 0, newt = 1;
    std::int64_t r = std::int64_t(p), newr = std::int64_t(a % p);
    while (newr != 0) {
        std::int64_t qq = r / newr;
        std::int64_t tmp = t - qq * newt;
        t = newt; newt = tmp;
        tmp = r - qq * newr;
        r = newr; newr = tmp;
    }
    if (t < 0) t += std::int64_t(p);
    return std::uint64_t(t);
}

inline PfPoly pf_gcd(PfPoly a, PfPoly b, std::uint64_t p) {
    pf_trim(a);
    pf_trim(b);
    while (!b.empty()) {
        // make b monic, then reduce a mod b
        const std::uint64_t li = inv_mod_u64(b.back(), p);
        PfPoly bm(b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            bm[i] = std::uint32_t((std::uint64_t(b[i]) * li) % p);
        a = pf_mod(std::move(a), bm, p);
        std::swap(a, b);
        pf_trim(b);
    }
    return a;
}

/// Rabin's irreducibility test for a monic polynomial of degree k over F_p:
/// t^{p^k} == t mod m, and gcd(t^{p^{k/l}} - t, m) = 1 for every prime l | k.
inline bool pf_is_irreducible(const PfPoly& m, std::uint64_t p) {
    const std::size_t k = m.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    const PfPoly t{0, 1};
    // t^{p^j} by iterated exponentiation: p^j fits in uint64 for p^k <= 2^24
    auto t_pow_p_j = [&](std::size_t j) {
        PfPoly r = t;
        for (std::size_t i = 0; i < j; ++i) r = pf_powmod(std::move(r), p, m, p);
        return r;
    };
    PfPoly full = t_pow_p_j(k);
    if (full != pf_mod(t, m, p)) return false;
    for (std::uint64_t l : prime_factors_u64(k)) {
        PfPoly s = t_pow_p_j(k / l);
        // s - t
        PfPoly diff = s;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = std::uint32_t((diff[1] + p - 1) % p);
        pf_trim(diff);
        PfPoly g = pf_gcd(diff, m, p);
        if (g.size() != 1) return false;  // gcd must be a nonzero constant
    }
    return true;
}

}  // namespace detail

/// Immutable after construction; safely shareable across threads.
struct FieldDescriptor {
    std::uint64_t p;                     // characteristic, prime
    unsigned k;                          // extension degree over F_p
    std::uint64_t q;                     // p^k
    std::vector<std::uint32_t> modulus;  // monic irreducible, length k+1

    FieldElement zero() const { return FieldElement{this, {}}; }

    FieldElement one() const {
        FieldElement e{this, {}};
        if (p > 1) e.c[0] = 1;
        return e;
    }

    /// Residue class of an integer in the prime subfield.
    FieldElement from_int(std::int64_t v) const {
        FieldElement e{this, {}};
        std::int64_t r = v % std::int64_t(p);
        if (r < 0) r += std::int64_t(p);
        e.c[0] = std::uint32_t(r);
        return e;
    }

    /// Class of t (requires k >= 2).
    FieldElement gen_t() const {
        FieldElement e{this, {}};
        e.c[1] = 1;
        return e;
    }

    bool is_zero(const FieldElement& x) const {
        for (unsigned i = 0; i < k; ++i)
            if (x.c[i] != 0) return false;
        return true;
    }

    /// Element at position `index` of the lexicographic enumeration:
    /// index = sum c_i p^i, so position 0 is 0 and position 1 is 1.
    FieldElement element_at(std::uint64_t index) const {
        FieldElement e{this, {}};
        for (unsigned i = 0; i < k; ++i) {
            e.c[i] = std::uint32_t(index % p);
            index /= p;
        }
        return e;
    }

    std::uint64_t index_of(const FieldElement& x) const {
        std::uint64_t idx = 0;
        for (unsigned i = k; i-- > 0;) idx = idx * p + x.c[i];
        return idx;
    }

    void check(const FieldElement& x) const {
        if (x.fd != this) throw DescriptorMismatchError("field element belongs to a different field");
    }

    FieldElement add(const FieldElement& x, const FieldElement& y) const {
        check(x); check(y);
        FieldElement r{this, {}};
        for (unsigned i = 0; i < k; ++i) {
            std::uint64_t s = std::uint64_t(x.c[i]) + y.c[i];
            r.c[i] = std::uint32_t(s >= p ? s - p : s);
        }
        return r;
    }

    FieldElement neg(const FieldElement& x) const {
        check(x);
        FieldElement r{this, {}};
        for (unsigned i = 0; i < k; ++i) r.c[i] = x.c[i] == 0 ? 0 : std::uint32_t(p - x.c[i]);
        return r;
    }

    FieldElement sub(const FieldElement& x, const FieldElement& y) const {
        check(x); check(y);
        FieldElement r{this, {}};
        for (unsigned i = 0; i < k; ++i) {
            std::uint64_t s = std::uint64_t(x.c[i]) + p - y.c[i];
            r.c[i] = std::uint32_t(s >= p ? s - p : s);
        }
        return r;
    }

    FieldElement mul(const FieldElement& x, const FieldElement& y) const {
        check(x); check(y);
        if (k == 1) {
            FieldElement r{this, {}};
            r.c[0] = std::uint32_t((std::uint64_t(x.c[0]) * y.c[0]) % p);
            return r;
        }
        // schoolbook product then reduction by the monic modulus.
        // For k >= 2 we have p <= 2^12, so products and short sums fit in 64 bits.
        std::array<std::uint64_t, 2 * kMaxFieldDegree> tmp{};
        for (unsigned i = 0; i < k; ++i) {
            if (x.c[i] == 0) continue;
            const std::uint64_t xi = x.c[i];
            for (unsigned j = 0; j < k; ++j) tmp[i + j] += xi * y.c[j];
        }
        for (unsigned d = 2 * k - 2; d >= k; --d) {
            std::uint64_t lead = tmp[d] % p;
            if (lead != 0) {
                for (unsigned j = 0; j < k; ++j)
                    tmp[d - k + j] += lead * (p - modulus[j] % p);
            }
            tmp[d] = 0;
            if (d == k) break;
        }
        FieldElement r{this, {}};
        for (unsigned i = 0; i < k; ++i) r.c[i] = std::uint32_t(tmp[i] % p);
        return r;
    }

    FieldElement pow(FieldElement x, std::uint64_t e) const {
        check(x);
        FieldElement r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    FieldElement inv(const FieldElement& x) const {
        check(x);
        if (is_zero(x)) throw DivisionByZeroError("inverse of zero");
        return pow(x, q - 2);  // Lagrange
    }

    FieldElement div(const FieldElement& x, const FieldElement& y) const { return mul(x, inv(y)); }

    /// Absolute trace down to F_p, returned as an integer in [0, p).
    std::uint32_t abs_trace(const FieldElement& x) const {
        check(x);
        FieldElement acc = x, f = x;
        for (unsigned i = 1; i < k; ++i) {
            f = pow(f, p);
            acc = add(acc, f);
        }
        return acc.c[0];
    }

    /// First element of the enumeration generating the multiplicative group.
    FieldElement canonical_generator() const {
        const auto factors = detail::prime_factors_u64(q - 1);
        for (std::uint64_t i = 1; i < q; ++i) {
            FieldElement x = element_at(i);
            bool gen = true;
            for (std::uint64_t l : factors) {
                if (pow(x, (q - 1) / l) == one()) { gen = false; break; }
            }
            if (gen) return x;
        }
        throw FieldError("no multiplicative generator found");  // unreachable
    }
};

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return a.fd->add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a.fd->sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return a.fd->mul(a, b); }
inline FieldElement operator-(const FieldElement& a) { return a.fd->neg(a); }

inline bool is_prime_power(std::uint64_t q, std::uint64_t* p_out = nullptr,
                           unsigned* k_out = nullptr) {
    if (q < 2) return false;
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) { p = d; break; }
    }
    unsigned k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) { rest /= p; ++k; }
    if (rest != 1) return false;
    if (p_out) *p_out = p;
    if (k_out) *k_out = k;
    return true;
}

/// Returns the field F_{p^k} with the lexicographically smallest monic
/// irreducible modulus (coefficients compared low-degree-first). Descriptors
/// are cached so repeated requests share one immutable instance.
inline Field make_field(std::uint64_t p, unsigned k, std::uint64_t cap = kDefaultFieldCap) {
    if (!detail::is_prime_u64(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw FieldError("extension degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > cap / p) throw CapExceededError("p^k exceeds field cap");
        q *= p;
    }
    if (q > cap) throw CapExceededError("p^k exceeds field cap");

    static std::mutex cache_mutex;
    static std::map<std::pair<std::uint64_t, unsigned>, Field> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, k});
        if (it != cache.end()) return it->second;
    }

    // scan monic candidates in lex order; the search space is tiny at this scale
    std::vector<std::uint32_t> modulus;
    for (std::uint64_t code = 0; code < q; ++code) {
        detail::PfPoly cand(k + 1);
        std::uint64_t rest = code;
        for (unsigned i = k; i-- > 0;) {  // c_0 is the most significant digit of `code`
            cand[i] = std::uint32_t(rest % p);
            rest /= p;
        }
        cand[k] = 1;
        if (detail::pf_is_irreducible(cand, p)) {
            modulus.assign(cand.begin(), cand.end());
            break;
        }
    }
    if (modulus.empty()) throw FieldError("no irreducible modulus found");  // unreachable

    auto fd = std::make_shared<FieldDescriptor>();
    fd->p = p;
    fd->k = k;
    fd->q = q;
    fd->modulus = std::move(modulus);
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(std::make_pair(p, k), fd);
    return it->second;
}

/// Ring map F_q -> F_{q^n} fixed by sending the class of t in F_q to a root
/// of F_q's modulus inside the absolute field F_{p^{kn}}.
struct Embedding {
    Field from;
    Field to;
    FieldElement root;  // image of the class of t

    FieldElement operator()(const FieldElement& x) const {
        from->check(x);
        // evaluate the coefficient polynomial of x at `root`
        FieldElement acc = to->zero();
        for (unsigned i = from->k; i-- > 0;) {
            acc = to->mul(acc, root);
            acc = to->add(acc, to->from_int(std::int64_t(x.c[i])));
        }
        return acc;
    }
};

inline std::pair<Field, Embedding> build_extension(const Field& base, unsigned n,
                                                   std::uint64_t cap = kDefaultFieldCap) {
    Field ext = make_field(base->p, base->k * n, cap);
    // deterministic root search in enumeration order; first root wins
    FieldElement root = ext->zero();
    bool found = false;
    for (std::uint64_t i = 0; i < ext->q; ++i) {
        FieldElement x = ext->element_at(i);
        FieldElement acc = ext->zero();
        for (unsigned j = base->k + 1; j-- > 0;) {
            acc = ext->mul(acc, x);
            acc = ext->add(acc, ext->from_int(std::int64_t(base->modulus[j])));
        }
        if (ext->is_zero(acc)) { root = x; found = true; break; }
    }
    if (!found) throw FieldError("internal: modulus has no root in its own splitting field");
    return {ext, Embedding{base, ext, root}};
}

class ZeroLeadingCoefficientError : public FieldError {
public:
    explicit ZeroLeadingCoefficientError(const std::string& msg) : FieldError(msg) {}
};

namespace detail {

/// Square root in odd characteristic, or empty if x is a non-residue.
/// Exhaustive scan below 2^16 elements, Tonelli-Shanks above.
inline std::vector<FieldElement> sqrt_odd(const FieldDescriptor* F, const FieldElement& x) {
    if (F->is_zero(x)) return {F->zero()};
    if (F->q < (std::uint64_t(1) << 16)) {
        for (std::uint64_t i = 1; i < F->q; ++i) {
            FieldElement y = F->element_at(i);
            if (F->mul(y, y) == x) return {y, F->neg(y)};
        }
        return {};
    }
    // Tonelli-Shanks in F_q, q odd
    if (!(F->pow(x, (F->q - 1) / 2) == F->one())) return {};
    std::uint64_t m = F->q - 1;
    unsigned s = 0;
    while (m % 2 == 0) { m /= 2; ++s; }
    // deterministic non-residue scan
    FieldElement z = F->zero();
    for (std::uint64_t i = 1; i < F->q; ++i) {
        z = F->element_at(i);
        if (F->pow(z, (F->q - 1) / 2) == F->neg(F->one())) break;
    }
    FieldElement c = F->pow(z, m);
    FieldElement t = F->pow(x, m);
    FieldElement r = F->pow(x, (m + 1) / 2);
    unsigned e = s;
    while (!(t == F->one())) {
        FieldElement t2 = t;
        unsigned i = 0;
        while (!(t2 == F->one())) { t2 = F->mul(t2, t2); ++i; }
        FieldElement b = c;
        for (unsigned j = 0; j + i + 1 < e; ++j) b = F->mul(b, b);
        r = F->mul(r, b);
        c = F->mul(b, b);
        t = F->mul(t, c);
        e = i;
    }
    return {r, F->neg(r)};
}

}  // namespace detail

/// Exact root set of a*y^2 + b*y + c = 0 over the field of a (a != 0).
inline std::vector<FieldElement> solve_quadratic(const FieldElement& a, const FieldElement& b,
                                                 const FieldElement& c) {
    const FieldDescriptor* fd = a.fd;
    fd->check(b);
    fd->check(c);
    if (fd->is_zero(a)) throw ZeroLeadingCoefficientError("quadratic with zero leading coefficient");

    if (fd->p != 2) {
        // discriminant route
        FieldElement disc = fd->sub(fd->mul(b, b), fd->mul(fd->from_int(4), fd->mul(a, c)));
        FieldElement inv2a = fd->inv(fd->mul(fd->from_int(2), a));
        if (fd->is_zero(disc)) return {fd->mul(fd->neg(b), inv2a)};
        auto roots = detail::sqrt_odd(fd, disc);
        std::vector<FieldElement> out;
        for (const auto& s : roots) out.push_back(fd->mul(fd->add(fd->neg(b), s), inv2a));
        return out;
    }

    // characteristic 2
    if (fd->is_zero(b)) {
        // y^2 = c/a; Frobenius is bijective
        FieldElement rhs = fd->div(fd->neg(c), a);  // neg is identity here, kept for symmetry
        FieldElement r = rhs;
        for (unsigned i = 1; i < fd->k; ++i) r = fd->mul(r, r);  // rhs^{2^{k-1}}
        return {r};
    }
    // substitute y = (b/a) z:  z^2 + z = d  with d = a*c / b^2
    FieldElement d = fd->div(fd->mul(a, c), fd->mul(b, b));
    if (fd->abs_trace(d) != 0) return {};
    FieldElement z0;
    if (fd->k % 2 == 1) {
        // half-trace
        FieldElement acc = fd->zero();
        FieldElement f = d;
        for (unsigned i = 0; i <= (fd->k - 1) / 2; ++i) {
            acc = fd->add(acc, f);
            f = fd->mul(f, f);
            f = fd->mul(f, f);  // f -> f^{2^2}
        }
        z0 = acc;
    } else {
        bool found = false;
        z0 = fd->zero();
        for (std::uint64_t i = 0; i < fd->q; ++i) {
            FieldElement z = fd->element_at(i);
            if (fd->add(fd->mul(z, z), z) == d) { z0 = z; found = true; break; }
        }
        if (!found) return {};  // cannot happen when the trace vanishes
    }
    FieldElement scale = fd->div(b, a);
    FieldElement y0 = fd->mul(scale, z0);
    FieldElement y1 = fd->mul(scale, fd->add(z0, fd->one()));
    return {y0, y1};
}

/// Number of roots of a*y^2 + b*y + c without materializing them.
/// Agrees with solve_quadratic; used in the hot counting loops.
inline unsigned num_quadratic_roots(const FieldElement& a, const FieldElement& b,
                                    const FieldElement& c) {
    const FieldDescriptor* fd = a.fd;
    fd->check(b);
    fd->check(c);
    if (fd->is_zero(a)) throw ZeroLeadingCoefficientError("quadratic with zero leading coefficient");
    if (fd->p != 2) {
        FieldElement disc = fd->sub(fd->mul(b, b), fd->mul(fd->from_int(4), fd->mul(a, c)));
        if (fd->is_zero(disc)) return 1;
        return fd->pow(disc, (fd->q - 1) / 2) == fd->one() ? 2 : 0;
    }
    if (fd->is_zero(b)) return 1;
    FieldElement d = fd->div(fd->mul(a, c), fd->mul(b, b));
    return fd->abs_trace(d) == 0 ? 2 : 0;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_FIELD_HPP_
