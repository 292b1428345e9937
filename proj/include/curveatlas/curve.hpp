#ifndef CURVEATLAS_CURVE_HPP_
#define CURVEATLAS_CURVE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curveatlas/field.hpp"

/// Curve data model and validation for the two families in scope:
/// hyperelliptic models y^2 + h(x) y = f(x) and plane projective models
/// F(x,y,z) = 0.

namespace curveatlas {

class DegreeViolationError : public std::runtime_error {
public:
    explicit DegreeViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

class SingularModelError : public std::runtime_error {
public:
    explicit SingularModelError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Dense univariate polynomial over a finite field, low degree first.
struct FPoly {
    Field field;
    std::vector<FieldElement> c;  // trimmed: back() nonzero unless empty

    static FPoly make(const Field& f, std::vector<FieldElement> coeffs) {
        while (!coeffs.empty() && f->is_zero(coeffs.back())) coeffs.pop_back();
        return FPoly{f, std::move(coeffs)};
    }

    static FPoly zero(const Field& f) { return FPoly{f, {}}; }

    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }  // -1 for the zero polynomial

    FieldElement coeff(unsigned i) const {
        return i < c.size() ? c[i] : field->zero();
    }

    FieldElement eval(const FieldElement& x) const {
        const FieldDescriptor* fd = x.fd;
        FieldElement acc = fd->zero();
        for (std::size_t i = c.size(); i-- > 0;) {
            acc = fd->mul(acc, x);
            acc = fd->add(acc, c[i]);
        }
        return acc;
    }

    FPoly derivative() const {
        std::vector<FieldElement> d;
        for (std::size_t i = 1; i < c.size(); ++i)
            d.push_back(field->mul(field->from_int(std::int64_t(i)), c[i]));
        return make(field, std::move(d));
    }

    FPoly scaled(const FieldElement& s) const {
        std::vector<FieldElement> d;
        for (const auto& ci : c) d.push_back(field->mul(ci, s));
        return make(field, std::move(d));
    }

    friend FPoly operator+(const FPoly& a, const FPoly& b) {
        std::vector<FieldElement> d(std::max(a.c.size(), b.c.size()), a.field->zero());
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = a.field->add(a.coeff(unsigned(i)), b.coeff(unsigned(i)));
        return make(a.field, std::move(d));
    }

    friend FPoly operator*(const FPoly& a, const FPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.field);
        std::vector<FieldElement> d(a.c.size() + b.c.size() - 1, a.field->zero());
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                d[i + j] = a.field->add(d[i + j], a.field->mul(a.c[i], b.c[j]));
        return make(a.field, std::move(d));
    }

    /// Remainder of this by a nonzero divisor.
    FPoly rem(const FPoly& div) const {
        FPoly r = *this;
        const FieldDescriptor* fd = field.get();
        FieldElement lead_inv = fd->inv(div.c.back());
        while (r.degree() >= div.degree() && !r.is_zero()) {
            FieldElement q = fd->mul(r.c.back(), lead_inv);
            std::size_t shift = r.c.size() - div.c.size();
            for (std::size_t j = 0; j < div.c.size(); ++j)
                r.c[shift + j] = fd->sub(r.c[shift + j], fd->mul(q, div.c[j]));
            while (!r.c.empty() && fd->is_zero(r.c.back())) r.c.pop_back();
        }
        return r;
    }

    friend FPoly gcd(FPoly a, FPoly b) {
        while (!b.is_zero()) {
            FPoly r = a.rem(b);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    bool is_squarefree() const {
        if (is_zero()) return false;
        FPoly d = derivative();
        if (d.is_zero()) return false;  // p-th power territory
        return gcd(*this, d).degree() <= 0;
    }

    /// Push coefficients through a field embedding.
    FPoly mapped(const Embedding& emb) const {
        std::vector<FieldElement> d;
        for (const auto& ci : c) d.push_back(emb(ci));
        return make(emb.to, std::move(d));
    }
};

struct HyperellipticModel {
    Field base;
    FPoly f;
    FPoly h;
    unsigned g;
};

struct PlaneCurveModel {
    Field base;
    unsigned degree;
    // exponent triple (i,j,k) with i+j+k = degree, nonzero coefficient
    std::vector<std::pair<std::array<unsigned, 3>, FieldElement>> monomials;

    FieldElement eval(const FieldElement& x, const FieldElement& y, const FieldElement& z) const {
        const FieldDescriptor* fd = x.fd;
        FieldElement acc = fd->zero();
        for (const auto& [e, cf] : monomials) {
            FieldElement t = cf;
            t = fd->mul(t, fd->pow(x, e[0]));
            t = fd->mul(t, fd->pow(y, e[1]));
            t = fd->mul(t, fd->pow(z, e[2]));
            acc = fd->add(acc, t);
        }
        return acc;
    }

    /// Formal partial derivative with respect to variable 0, 1 or 2.
    PlaneCurveModel partial(int var) const {
        PlaneCurveModel d{base, degree > 0 ? degree - 1 : 0, {}};
        for (const auto& [e, cf] : monomials) {
            unsigned ev = e[std::size_t(var)];
            if (ev == 0) continue;
            FieldElement nc = base->mul(base->from_int(std::int64_t(ev)), cf);
            if (base->is_zero(nc)) continue;
            auto ne = e;
            ne[std::size_t(var)] = ev - 1;
            d.monomials.emplace_back(ne, nc);
        }
        return d;
    }

    /// Same monomials with coefficients pushed through an embedding.
    PlaneCurveModel mapped(const Embedding& emb) const {
        PlaneCurveModel m{emb.to, degree, {}};
        for (const auto& [e, cf] : monomials) m.monomials.emplace_back(e, emb(cf));
        return m;
    }
};

using CurveModel = std::variant<HyperellipticModel, PlaneCurveModel>;

struct SmoothnessStatus {
    enum class Kind { SmoothCertified, SmoothUpTo, SingularAt, AssertedBySource };
    Kind kind;
    unsigned checked_up_to = 0;          // SmoothUpTo
    unsigned singular_ext_degree = 0;    // SingularAt: extension degree m
    std::vector<std::uint64_t> singular_point;  // element indices in F_{q^m}
    std::string source_tag;              // AssertedBySource

    bool is_smooth_ok() const {
        return kind == Kind::SmoothCertified || kind == Kind::SmoothUpTo ||
               kind == Kind::AssertedBySource;
    }
};

/// Smoothness of a hyperelliptic model.
/// Odd characteristic: complete the square to y^2 = f + h^2/4 and demand a
/// squarefree right-hand side. Characteristic 2: the model is singular iff
/// some root xb of h (in an extension of degree <= deg h) satisfies
/// h'(xb) * sqrt(f(xb)) = f'(xb); h = 0 in characteristic 2 is always singular.
inline SmoothnessStatus is_smooth_hyperelliptic(const HyperellipticModel& m) {
    const Field& F = m.base;
    if (F->p != 2) {
        FieldElement quarter = F->inv(F->from_int(4));
        FPoly ftilde = m.f + (m.h * m.h).scaled(quarter);
        // leading-term cancellation in f + h^2/4 drops the degree below
        // 2g+1 and makes the point at infinity singular (the genus drops)
        if (ftilde.degree() < int(2 * m.g + 1))
            return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, 0, {}};
        if (ftilde.is_squarefree()) return SmoothnessStatus{SmoothnessStatus::Kind::SmoothCertified};
        // locate a repeated root as a witness where it lives in a small extension
        FPoly g = gcd(ftilde, ftilde.derivative());
        for (unsigned md = 1; md <= unsigned(std::max(1, g.degree())); ++md) {
            auto [E, emb] = build_extension(F, md);
            FPoly ge = g.mapped(emb);
            for (std::uint64_t i = 0; i < E->q; ++i) {
                FieldElement x = E->element_at(i);
                if (E->is_zero(ge.eval(x)))
                    return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, md, {i}};
            }
        }
        return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, 0, {}};
    }
    // characteristic 2
    if (m.h.is_zero()) return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, 1, {}};
    // infinity: in the chart u = 1/x, v = y/x^{g+1} the model becomes
    // v^2 + h~(u) v = f~(u) with h~(u) = u^{g+1} h(1/u), f~(u) = u^{2g+2} f(1/u);
    // u = 0 is a root of h~ exactly when deg h < g+1, and the usual tangency
    // test h~'(0) sqrt(f~(0)) = f~'(0) reads off the top coefficients of h, f
    if (F->is_zero(m.h.coeff(m.g + 1))) {
        FieldElement s = m.f.coeff(2 * m.g + 2);
        for (unsigned j = 1; j < F->k; ++j) s = F->mul(s, s);  // square root in char 2
        if (F->mul(m.h.coeff(m.g), s) == m.f.coeff(2 * m.g + 1))
            return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, 0, {}};
    }
    for (unsigned md = 1; md <= unsigned(std::max(0, m.h.degree())); ++md) {
        auto [E, emb] = build_extension(F, md);
        FPoly he = m.h.mapped(emb);
        FPoly fe = m.f.mapped(emb);
        FPoly hd = he.derivative();
        FPoly fdv = fe.derivative();
        for (std::uint64_t i = 0; i < E->q; ++i) {
            FieldElement x = E->element_at(i);
            if (!E->is_zero(he.eval(x))) continue;
            // unique square root of f(x) in characteristic 2
            FieldElement s = fe.eval(x);
            for (unsigned j = 1; j < E->k; ++j) s = E->mul(s, s);
            if (E->mul(hd.eval(x), s) == fdv.eval(x))
                return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, md, {i}};
        }
    }
    return SmoothnessStatus{SmoothnessStatus::Kind::SmoothCertified};
}

inline HyperellipticModel make_hyperelliptic(const Field& base, FPoly f, FPoly h, unsigned g) {
    if (g < 1) throw DegreeViolationError("genus must be positive");
    int df = f.degree();
    int dh = h.degree();
    if (df > int(2 * g + 2)) throw DegreeViolationError("deg f exceeds 2g+2");
    if (dh > int(g + 1)) throw DegreeViolationError("deg h exceeds g+1");
    int lead = std::max(2 * dh, df);
    if (lead != int(2 * g + 1) && lead != int(2 * g + 2))
        throw DegreeViolationError("max(2 deg h, deg f) must be 2g+1 or 2g+2");
    HyperellipticModel m{base, std::move(f), std::move(h), g};
    SmoothnessStatus st = is_smooth_hyperelliptic(m);
    if (!st.is_smooth_ok()) throw SingularModelError("hyperelliptic model is singular");
    return m;
}

/// g = 1 model from long Weierstrass coefficients (a1,...,a6):
/// f = x^3 + a2 x^2 + a4 x + a6, h = a1 x + a3.
inline HyperellipticModel elliptic_from_weierstrass(const Field& base, const FieldElement& a1,
                                                    const FieldElement& a2, const FieldElement& a3,
                                                    const FieldElement& a4, const FieldElement& a6) {
    FPoly f = FPoly::make(base, {a6, a4, a2, base->one()});
    FPoly h = FPoly::make(base, {a3, a1});
    return make_hyperelliptic(base, std::move(f), std::move(h), 1);
}

inline PlaneCurveModel make_plane_curve(const Field& base,
                                        std::vector<std::pair<std::array<unsigned, 3>, FieldElement>>
                                            monomials) {
    if (monomials.empty()) throw DegreeViolationError("plane curve polynomial is zero");
    unsigned d = monomials.front().first[0] + monomials.front().first[1] + monomials.front().first[2];
    for (const auto& [e, cf] : monomials) {
        if (e[0] + e[1] + e[2] != d)
            throw DegreeViolationError("plane curve polynomial is not homogeneous");
        if (base->is_zero(cf)) throw DegreeViolationError("zero coefficient in monomial list");
    }
    return PlaneCurveModel{base, d, std::move(monomials)};
}

/// Finite scan for singular points of a plane curve over F_{q^m}, m rising.
/// The singular locus of a degree-d curve is defined over an extension of
/// degree at most (d-1)^2, so a completed scan through that degree certifies
/// smoothness; an earlier budget stop yields the honest SmoothUpTo answer.
inline SmoothnessStatus is_smooth_plane(const PlaneCurveModel& m, unsigned m_max = 0,
                                        std::uint64_t budget = std::uint64_t(1) << 26,
                                        std::uint64_t field_cap = kDefaultFieldCap) {
    const unsigned full = (m.degree - 1) * (m.degree - 1);
    if (m_max == 0) m_max = full;
    unsigned reached = 0;
    for (unsigned md = 1; md <= m_max; ++md) {
        // budget: the projective scan touches q^{2m} + q^m + 1 candidates
        bool fits_cap = true;
        std::uint64_t qm = 1;
        for (unsigned i = 0; i < md * m.base->k; ++i) {
            if (qm > field_cap / m.base->p) { fits_cap = false; break; }
            qm *= m.base->p;
        }
        if (!fits_cap || qm > (std::uint64_t(1) << 32) || qm * qm / qm != qm ||
            qm * qm + qm + 1 > budget)
            return SmoothnessStatus{SmoothnessStatus::Kind::SmoothUpTo, reached};
        auto [E, emb] = build_extension(m.base, md, field_cap);
        PlaneCurveModel Fm = m.mapped(emb);
        PlaneCurveModel Fx = Fm.partial(0), Fy = Fm.partial(1), Fz = Fm.partial(2);
        auto singular_here = [&](const FieldElement& x, const FieldElement& y,
                                 const FieldElement& z) {
            return E->is_zero(Fm.eval(x, y, z)) && E->is_zero(Fx.eval(x, y, z)) &&
                   E->is_zero(Fy.eval(x, y, z)) && E->is_zero(Fz.eval(x, y, z));
        };
        const FieldElement one = E->one(), zero = E->zero();
        for (std::uint64_t i = 0; i < E->q; ++i) {
            FieldElement x = E->element_at(i);
            for (std::uint64_t j = 0; j < E->q; ++j) {
                FieldElement y = E->element_at(j);
                if (singular_here(x, y, one))
                    return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, md,
                                            {i, j, E->index_of(one)}};
            }
            if (singular_here(x, one, zero))
                return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, md,
                                        {i, E->index_of(one), 0}};
        }
        if (singular_here(one, zero, zero))
            return SmoothnessStatus{SmoothnessStatus::Kind::SingularAt, 0, md,
                                    {E->index_of(one), 0, 0}};
        reached = md;
    }
    if (reached >= full) return SmoothnessStatus{SmoothnessStatus::Kind::SmoothCertified};
    return SmoothnessStatus{SmoothnessStatus::Kind::SmoothUpTo, reached};
}

inline unsigned genus(const CurveModel& m) {
    if (std::holds_alternative<HyperellipticModel>(m)) return std::get<HyperellipticModel>(m).g;
    const auto& p = std::get<PlaneCurveModel>(m);
    return (p.degree - 1) * (p.degree - 2) / 2;
}

inline const Field& base_field(const CurveModel& m) {
    if (std::holds_alternative<HyperellipticModel>(m)) return std::get<HyperellipticModel>(m).base;
    return std::get<PlaneCurveModel>(m).base;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_CURVE_HPP_
