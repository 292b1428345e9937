#ifndef CURVEATLAS_CURVETEXT_HPP_
#define CURVEATLAS_CURVETEXT_HPP_

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curveatlas/counting.hpp"
#include "curveatlas/curve.hpp"
#include "curveatlas/parser.hpp"

/// One-line curve descriptions:
///   hyperelliptic q=<p>^<k> g=<g> f=<poly-expr> h=<poly-expr>
///   plane q=<p>^<k> F=<homogeneous-poly-expr>
/// q may also be given as a plain prime power. Poly expressions contain no
/// whitespace and may use x,y,z, integer literals and the generator symbol a.

namespace curveatlas {

class CurveTextError : public std::runtime_error {
public:
    explicit CurveTextError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CurveText {
    bool plane = false;
    std::uint64_t p = 0;
    unsigned k = 1;
    unsigned g = 0;       // hyperelliptic only
    std::string f, h, F;  // poly expression sources
};

inline CurveText split_curve_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    if (!(in >> tok)) throw CurveTextError("empty curve text");
    CurveText ct;
    if (tok == "plane") ct.plane = true;
    else if (tok != "hyperelliptic")
        throw CurveTextError("curve text must start with 'hyperelliptic' or 'plane'");
    bool have_q = false, have_g = false, have_f = false, have_h = false, have_F = false;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CurveTextError("expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (val.empty()) throw CurveTextError("empty value for '" + key + "'");
        if (key == "q") {
            auto caret = val.find('^');
            try {
                if (caret == std::string::npos) {
                    std::uint64_t q = std::stoull(val);
                    std::uint64_t p;
                    unsigned k;
                    if (!is_prime_power(q, &p, &k))
                        throw CurveTextError("q = " + val + " is not a prime power");
                    ct.p = p;
                    ct.k = k;
                } else {
                    ct.p = std::stoull(val.substr(0, caret));
                    ct.k = unsigned(std::stoul(val.substr(caret + 1)));
                }
            } catch (const std::invalid_argument&) {
                throw CurveTextError("malformed q value '" + val + "'");
            }
            have_q = true;
        } else if (key == "g") {
            ct.g = unsigned(std::stoul(val));
            have_g = true;
        } else if (key == "f") {
            ct.f = val;
            have_f = true;
        } else if (key == "h") {
            ct.h = val;
            have_h = true;
        } else if (key == "F") {
            ct.F = val;
            have_F = true;
        } else {
            throw CurveTextError("unknown key '" + key + "' in curve text");
        }
    }
    if (!have_q) throw CurveTextError("missing q=");
    if (ct.plane) {
        if (!have_F) throw CurveTextError("plane curve needs F=");
        if (have_g || have_f || have_h) throw CurveTextError("plane curve takes only q= and F=");
    } else {
        if (!have_g || !have_f || !have_h)
            throw CurveTextError("hyperelliptic curve needs g=, f= and h=");
        if (have_F) throw CurveTextError("hyperelliptic curve does not take F=");
    }
    return ct;
}

inline bool curve_text_uses_generator(const std::string& text) {
    CurveText ct = split_curve_text(text);
    auto has_a = [](const std::string& s) { return s.find('a') != std::string::npos; };
    return has_a(ct.f) || has_a(ct.h) || has_a(ct.F);
}

/// Build the model. `generator` overrides the binding of the symbol `a`
/// (default: the canonical generator). Hyperelliptic models are fully
/// validated (degrees + smoothness); plane models get homogeneity checks
/// here and smoothness policy is the caller's business.
inline CurveModel curve_from_text(const CurveText& ct,
                                  std::optional<FieldElement> generator = std::nullopt,
                                  std::uint64_t field_cap = kDefaultFieldCap) {
    Field base = make_field(ct.p, ct.k, field_cap);
    if (ct.plane) {
        SparsePoly sp = parse_poly(ct.F, base, 0b111, generator);
        unsigned d = 0;
        if (!sp.is_homogeneous(&d))
            throw InhomogeneousFormError("plane curve polynomial is not homogeneous");
        std::vector<std::pair<std::array<unsigned, 3>, FieldElement>> mono(sp.terms.begin(),
                                                                           sp.terms.end());
        return make_plane_curve(base, std::move(mono));
    }
    SparsePoly spf = parse_poly(ct.f, base, 0b001, generator);
    SparsePoly sph = parse_poly(ct.h, base, 0b001, generator);
    FPoly f = FPoly::make(base, univariate_coeffs(spf));
    FPoly h = FPoly::make(base, univariate_coeffs(sph));
    return make_hyperelliptic(base, std::move(f), std::move(h), ct.g);
}

inline CurveModel parse_curve(const std::string& text,
                              std::optional<FieldElement> generator = std::nullopt,
                              std::uint64_t field_cap = kDefaultFieldCap) {
    return curve_from_text(split_curve_text(text), generator, field_cap);
}

namespace detail {

/// Print a field element as a poly-expr factor relative to the canonical
/// generator: 0, integer literals for prime-subfield values, else a^m.
inline std::string element_to_expr(const Field& F, const FieldElement& e) {
    if (F->is_zero(e)) return "0";
    std::uint64_t idx = F->index_of(e);
    if (idx < F->p) return std::to_string(idx);
    FieldElement gen = F->canonical_generator();
    FieldElement acc = gen;
    for (std::uint64_t m = 1; m < F->q; ++m) {
        if (acc == e) return m == 1 ? "a" : "a^" + std::to_string(m);
        acc = F->mul(acc, gen);
    }
    throw std::logic_error("element outside the multiplicative group sweep");
}

inline void append_term(std::string& out, const std::string& coeff, const std::string& vars) {
    if (!out.empty()) out += "+";
    if (vars.empty()) { out += coeff; return; }
    if (coeff == "1") { out += vars; return; }
    out += coeff + vars;
}

inline std::string poly_to_expr(const Field& F, const FPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        if (F->is_zero(p.c[i])) continue;
        std::string vars =
            i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
        append_term(out, element_to_expr(F, p.c[i]), vars);
    }
    return out;
}

}  // namespace detail

/// Canonical curve text: coefficients relative to the canonical generator,
/// terms in descending degree. parse_curve(curve_to_text(m)) rebuilds an
/// identical model.
inline std::string curve_to_text(const CurveModel& m) {
    const Field& F = base_field(m);
    std::string q = std::to_string(F->p);
    if (F->k > 1) q += "^" + std::to_string(F->k);
    if (std::holds_alternative<HyperellipticModel>(m)) {
        const auto& hm = std::get<HyperellipticModel>(m);
        return "hyperelliptic q=" + q + " g=" + std::to_string(hm.g) +
               " f=" + detail::poly_to_expr(F, hm.f) + " h=" + detail::poly_to_expr(F, hm.h);
    }
    const auto& pm = std::get<PlaneCurveModel>(m);
    std::string out;
    for (auto it = pm.monomials.rbegin(); it != pm.monomials.rend(); ++it) {
        const auto& [e, cf] = *it;
        std::string vars;
        const char* names = "xyz";
        for (int v = 0; v < 3; ++v) {
            if (e[std::size_t(v)] == 0) continue;
            vars += names[v];
            if (e[std::size_t(v)] > 1) vars += "^" + std::to_string(e[std::size_t(v)]);
        }
        detail::append_term(out, detail::element_to_expr(F, cf), vars);
    }
    return "plane q=" + q + " F=" + out;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_CURVETEXT_HPP_
