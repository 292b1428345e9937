#ifndef CURVEATLAS_PARSER_HPP_
#define CURVEATLAS_PARSER_HPP_

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curveatlas/field.hpp"

/// Polynomial expression input: variables x,y,z, the generator symbol `a`,
/// integer literals, + - * ^ and parentheses. `^` binds tighter than `*`
/// binds tighter than `+`; juxtaposition ("2ax^6") multiplies.

namespace curveatlas {

class SyntaxError : public std::runtime_error {
public:
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

class UndeclaredVariableError : public std::runtime_error {
public:
    explicit UndeclaredVariableError(const std::string& msg) : std::runtime_error(msg) {}
};

class InhomogeneousFormError : public std::runtime_error {
public:
    explicit InhomogeneousFormError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PolyExpr;
using PolyExprPtr = std::shared_ptr<const PolyExpr>;

struct PolyExpr {
    enum class Kind { Var, Gen, Int, Add, Sub, Mul, Pow, Neg };
    Kind kind;
    int var = 0;                      // Var: 0=x 1=y 2=z
    long long value = 0;              // Int
    unsigned exponent = 0;            // Pow
    std::vector<PolyExprPtr> child;   // Add/Sub/Mul: 2 children; Pow/Neg: 1
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string text) : s_(std::move(text)) {}

    PolyExprPtr parse() {
        PolyExprPtr e = sum();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == 'z' ||
               c == 'a' || c == '(';
    }

    PolyExprPtr sum() {
        PolyExprPtr left = neg_term();
        for (;;) {
            skip_ws();
            if (peek_is('+')) {
                ++pos_;
                auto n = std::make_shared<PolyExpr>();
                n->kind = PolyExpr::Kind::Add;
                n->child = {left, term()};
                left = n;
            } else if (peek_is('-')) {
                ++pos_;
                auto n = std::make_shared<PolyExpr>();
                n->kind = PolyExpr::Kind::Sub;
                n->child = {left, term()};
                left = n;
            } else {
                return left;
            }
        }
    }

    PolyExprPtr neg_term() {
        if (peek_is('-')) {
            ++pos_;
            auto n = std::make_shared<PolyExpr>();
            n->kind = PolyExpr::Kind::Neg;
            n->child = {term()};
            return n;
        }
        return term();
    }

    PolyExprPtr term() {
        PolyExprPtr left = power();
        for (;;) {
            skip_ws();
            if (peek_is('*')) {
                ++pos_;
                auto n = std::make_shared<PolyExpr>();
                n->kind = PolyExpr::Kind::Mul;
                n->child = {left, power()};
                left = n;
            } else if (starts_primary()) {
                // juxtaposition, e.g. "2a" or "ax"
                auto n = std::make_shared<PolyExpr>();
                n->kind = PolyExpr::Kind::Mul;
                n->child = {left, power()};
                left = n;
            } else {
                return left;
            }
        }
    }

    PolyExprPtr power() {
        PolyExprPtr base = primary();
        skip_ws();
        if (peek_is('^')) {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            unsigned long long e = 0;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw SyntaxError("expected a nonnegative integer exponent", pos_);
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + unsigned(s_[pos_] - '0');
                if (e > 1000000) throw SyntaxError("exponent too large", start);
                ++pos_;
            }
            auto n = std::make_shared<PolyExpr>();
            n->kind = PolyExpr::Kind::Pow;
            n->exponent = unsigned(e);
            n->child = {base};
            return n;
        }
        return base;
    }

    PolyExprPtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            PolyExprPtr e = sum();
            if (!peek_is(')')) throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_] - '0');
                ++pos_;
            }
            auto n = std::make_shared<PolyExpr>();
            n->kind = PolyExpr::Kind::Int;
            n->value = v;
            return n;
        }
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            auto n = std::make_shared<PolyExpr>();
            n->kind = PolyExpr::Kind::Var;
            n->var = c == 'x' ? 0 : (c == 'y' ? 1 : 2);
            return n;
        }
        if (c == 'a') {
            ++pos_;
            auto n = std::make_shared<PolyExpr>();
            n->kind = PolyExpr::Kind::Gen;
            return n;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace detail

inline PolyExprPtr parse_poly_expr(const std::string& text) {
    return detail::ExprParser(text).parse();
}

/// Canonical printer; parse(print(e)) reproduces e structurally.
inline std::string to_string(const PolyExprPtr& e) {
    using K = PolyExpr::Kind;
    auto paren = [](const std::string& s) { return "(" + s + ")"; };
    switch (e->kind) {
        case K::Var: return e->var == 0 ? "x" : (e->var == 1 ? "y" : "z");
        case K::Gen: return "a";
        case K::Int: return std::to_string(e->value);
        case K::Neg: {
            std::string s = to_string(e->child[0]);
            if (e->child[0]->kind == K::Add || e->child[0]->kind == K::Sub) s = paren(s);
            return "-" + s;
        }
        case K::Add: return to_string(e->child[0]) + "+" + to_string(e->child[1]);
        case K::Sub: {
            std::string r = to_string(e->child[1]);
            K rk = e->child[1]->kind;
            if (rk == K::Add || rk == K::Sub || rk == K::Neg) r = paren(r);
            return to_string(e->child[0]) + "-" + r;
        }
        case K::Mul: {
            std::string l = to_string(e->child[0]);
            std::string r = to_string(e->child[1]);
            K lk = e->child[0]->kind, rk = e->child[1]->kind;
            if (lk == K::Add || lk == K::Sub || lk == K::Neg) l = paren(l);
            if (rk == K::Add || rk == K::Sub || rk == K::Neg) r = paren(r);
            return l + "*" + r;
        }
        case K::Pow: {
            std::string b = to_string(e->child[0]);
            K bk = e->child[0]->kind;
            if (bk != K::Var && bk != K::Gen && bk != K::Int) b = paren(b);
            return b + "^" + std::to_string(e->exponent);
        }
    }
    return {};
}

inline bool expr_equal(const PolyExprPtr& a, const PolyExprPtr& b) {
    if (a->kind != b->kind || a->var != b->var || a->value != b->value ||
        a->exponent != b->exponent || a->child.size() != b->child.size())
        return false;
    for (std::size_t i = 0; i < a->child.size(); ++i)
        if (!expr_equal(a->child[i], b->child[i])) return false;
    return true;
}

/// Sparse trivariate polynomial in normalized coefficient form.
struct SparsePoly {
    Field field;
    std::map<std::array<unsigned, 3>, FieldElement> terms;  // exponents of (x,y,z) -> nonzero coeff

    unsigned max_var_degree(int var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e[std::size_t(var)]);
        return d;
    }

    bool is_homogeneous(unsigned* degree_out = nullptr) const {
        std::optional<unsigned> d;
        for (const auto& [e, c] : terms) {
            unsigned t = e[0] + e[1] + e[2];
            if (!d) d = t;
            else if (*d != t) return false;
        }
        if (d && degree_out) *degree_out = *d;
        return true;
    }
};

namespace detail {

inline SparsePoly sp_mul(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r{a.field, {}};
    const FieldDescriptor* fd = a.field.get();
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            std::array<unsigned, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            FieldElement v = fd->mul(ca, cb);
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                if (!fd->is_zero(v)) r.terms.emplace(e, v);
            } else {
                it->second = fd->add(it->second, v);
                if (fd->is_zero(it->second)) r.terms.erase(it);
            }
        }
    }
    return r;
}

inline SparsePoly sp_addsub(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    SparsePoly r = a;
    const FieldDescriptor* fd = a.field.get();
    for (const auto& [e, c] : b.terms) {
        FieldElement v = subtract ? fd->neg(c) : c;
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
            if (!fd->is_zero(v)) r.terms.emplace(e, v);
        } else {
            it->second = fd->add(it->second, v);
            if (fd->is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

}  // namespace detail

/// Normalize an expression to coefficient form over `field`. `allowed_vars`
/// masks which of x,y,z may appear (bit i for var i). The symbol `a` binds to
/// `generator` when given, otherwise to the canonical generator of the field.
inline SparsePoly normalize_poly(const PolyExprPtr& e, const Field& field, unsigned allowed_vars,
                                 std::optional<FieldElement> generator = std::nullopt) {
    using K = PolyExpr::Kind;
    const FieldDescriptor* fd = field.get();
    switch (e->kind) {
        case K::Var: {
            static const char* names[3] = {"x", "y", "z"};
            if (!(allowed_vars & (1u << e->var)))
                throw UndeclaredVariableError(std::string("variable '") + names[e->var] +
                                              "' not declared for this input");
            SparsePoly r{field, {}};
            std::array<unsigned, 3> exps{0, 0, 0};
            exps[std::size_t(e->var)] = 1;
            r.terms.emplace(exps, fd->one());
            return r;
        }
        case K::Gen: {
            FieldElement g = generator ? *generator : fd->canonical_generator();
            SparsePoly r{field, {}};
            if (!fd->is_zero(g)) r.terms.emplace(std::array<unsigned, 3>{0, 0, 0}, g);
            return r;
        }
        case K::Int: {
            SparsePoly r{field, {}};
            FieldElement v = fd->from_int(e->value);
            if (!fd->is_zero(v)) r.terms.emplace(std::array<unsigned, 3>{0, 0, 0}, v);
            return r;
        }
        case K::Neg: {
            SparsePoly c = normalize_poly(e->child[0], field, allowed_vars, generator);
            SparsePoly r{field, {}};
            for (auto& [exps, v] : c.terms) r.terms.emplace(exps, fd->neg(v));
            return r;
        }
        case K::Add:
            return detail::sp_addsub(normalize_poly(e->child[0], field, allowed_vars, generator),
                                     normalize_poly(e->child[1], field, allowed_vars, generator), false);
        case K::Sub:
            return detail::sp_addsub(normalize_poly(e->child[0], field, allowed_vars, generator),
                                     normalize_poly(e->child[1], field, allowed_vars, generator), true);
        case K::Mul:
            return detail::sp_mul(normalize_poly(e->child[0], field, allowed_vars, generator),
                                  normalize_poly(e->child[1], field, allowed_vars, generator));
        case K::Pow: {
            SparsePoly base = normalize_poly(e->child[0], field, allowed_vars, generator);
            SparsePoly r{field, {}};
            r.terms.emplace(std::array<unsigned, 3>{0, 0, 0}, fd->one());
            for (unsigned i = 0; i < e->exponent; ++i) r = detail::sp_mul(r, base);
            return r;
        }
    }
    throw SyntaxError("corrupt expression", 0);
}

inline SparsePoly parse_poly(const std::string& text, const Field& field, unsigned allowed_vars,
                             std::optional<FieldElement> generator = std::nullopt) {
    return normalize_poly(parse_poly_expr(text), field, allowed_vars, generator);
}

/// Coefficient list (low degree first) of a univariate-in-x sparse polynomial.
inline std::vector<FieldElement> univariate_coeffs(const SparsePoly& p) {
    unsigned d = 0;
    for (const auto& [e, c] : p.terms) {
        if (e[1] != 0 || e[2] != 0)
            throw UndeclaredVariableError("expected a polynomial in x only");
        d = std::max(d, e[0]);
    }
    std::vector<FieldElement> out(d + 1, p.field->zero());
    for (const auto& [e, c] : p.terms) out[e[0]] = c;
    return out;
}

}  // namespace curveatlas

#endif  // CURVEATLAS_PARSER_HPP_
