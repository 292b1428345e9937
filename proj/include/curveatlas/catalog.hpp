#ifndef CURVEATLAS_CATALOG_HPP_
#define CURVEATLAS_CATALOG_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curveatlas/curvetext.hpp"

/// Witness and external-fact catalog. Line-oriented text format:
///
///   # comment
///   witness <id> source=<Table2|Sec4|Sec5|Sec6|Lemma5.1>
///     curve <curve-text>
///     claim <N1=v | N2=v | B<r>=0 | N1=N<r>>
///   fact <id> scope="<clauses>" effect=<kind> cite=<tag> statement="<text>"
///
/// Fact scope: clauses separated by ';', each a conjunction of conditions
/// `g=G`, `q=Q`, `q<=Q`, `q>=Q`; a (q,g) pair is in scope when some clause
/// matches. Effects: forbids-pointless, forbids-Br-zero (with r=R),
/// caps-N1 (with value=V), forces-existence.

namespace curveatlas {

class CatalogParseError : public std::runtime_error {
public:
    explicit CatalogParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class CatalogSchemaError : public std::runtime_error {
public:
    explicit CatalogSchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Claim {
    enum class Kind { N1Value, N2Value, BrZero, N1EqualsNr };
    Kind kind;
    unsigned r = 0;           // BrZero / N1EqualsNr
    std::uint64_t value = 0;  // N1Value / N2Value
    std::string text;

    /// Highest extension degree whose point count the claim consumes.
    unsigned max_degree() const {
        switch (kind) {
            case Kind::N1Value: return 1;
            case Kind::N2Value: return 2;
            default: return r;
        }
    }
};

inline Claim parse_claim(const std::string& text) {
    Claim c;
    c.text = text;
    auto bad = [&]() -> CatalogParseError {
        return CatalogParseError("unrecognized claim '" + text + "'");
    };
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) throw bad();
    std::string lhs = text.substr(0, eq), rhs = text.substr(eq + 1);
    try {
        if (lhs == "N1" && rhs.size() > 1 && rhs[0] == 'N') {
            c.kind = Claim::Kind::N1EqualsNr;
            c.r = unsigned(std::stoul(rhs.substr(1)));
            if (c.r < 2) throw bad();
        } else if (lhs == "N1") {
            c.kind = Claim::Kind::N1Value;
            c.value = std::stoull(rhs);
        } else if (lhs == "N2") {
            c.kind = Claim::Kind::N2Value;
            c.value = std::stoull(rhs);
        } else if (lhs.size() > 1 && lhs[0] == 'B') {
            if (rhs != "0") throw bad();
            c.kind = Claim::Kind::BrZero;
            c.r = unsigned(std::stoul(lhs.substr(1)));
            if (c.r < 1) throw bad();
        } else {
            throw bad();
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    }
    return c;
}

struct WitnessRecord {
    std::string id;
    std::string source;  // Table2 | Sec4 | Sec5 | Sec6 | Lemma5.1
    std::string curve_text;
    std::vector<Claim> claims;
};

struct ScopeClause {
    std::optional<unsigned> g_eq;
    std::optional<std::uint64_t> q_eq, q_le, q_ge;

    bool matches(std::uint64_t q, unsigned g) const {
        if (g_eq && *g_eq != g) return false;
        if (q_eq && *q_eq != q) return false;
        if (q_le && q > *q_le) return false;
        if (q_ge && q < *q_ge) return false;
        return true;
    }
};

enum class FactEffect { ForbidsPointless, ForbidsBrZero, CapsN1, ForcesExistence };

struct ExternalFact {
    std::string id;
    std::string scope_text;
    std::vector<ScopeClause> scope;
    FactEffect effect;
    unsigned r = 0;           // ForbidsBrZero
    std::uint64_t value = 0;  // CapsN1
    std::string cite;
    std::string statement;

    bool in_scope(std::uint64_t q, unsigned g) const {
        for (const auto& cl : scope)
            if (cl.matches(q, g)) return true;
        return false;
    }
};

inline std::vector<ScopeClause> parse_scope(const std::string& text) {
    std::vector<ScopeClause> out;
    std::istringstream clauses(text);
    std::string clause;
    while (std::getline(clauses, clause, ';')) {
        ScopeClause sc;
        std::istringstream conds(clause);
        std::string cond;
        bool any = false;
        while (conds >> cond) {
            any = true;
            try {
                if (cond.rfind("g=", 0) == 0) sc.g_eq = unsigned(std::stoul(cond.substr(2)));
                else if (cond.rfind("q<=", 0) == 0) sc.q_le = std::stoull(cond.substr(3));
                else if (cond.rfind("q>=", 0) == 0) sc.q_ge = std::stoull(cond.substr(3));
                else if (cond.rfind("q=", 0) == 0) sc.q_eq = std::stoull(cond.substr(2));
                else throw CatalogParseError("unrecognized scope condition '" + cond + "'");
            } catch (const std::invalid_argument&) {
                throw CatalogParseError("malformed scope condition '" + cond + "'");
            }
        }
        if (any) out.push_back(sc);
    }
    if (out.empty()) throw CatalogParseError("empty fact scope '" + text + "'");
    return out;
}

struct Catalog {
    std::vector<WitnessRecord> witnesses;
    std::vector<ExternalFact> facts;
};

namespace detail {

/// Tokenize `key=value` pairs where values may be double-quoted (quotes may
/// contain spaces, no escapes).
inline std::vector<std::pair<std::string, std::string>> parse_kv_tail(const std::string& line,
                                                                      std::size_t pos,
                                                                      int line_no) {
    std::vector<std::pair<std::string, std::string>> out;
    const std::string where = " on line " + std::to_string(line_no);
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos >= line.size()) break;
        auto eq = line.find('=', pos);
        if (eq == std::string::npos || eq == pos)
            throw CatalogParseError("expected key=value" + where);
        std::string key = line.substr(pos, eq - pos);
        std::string val;
        pos = eq + 1;
        if (pos < line.size() && line[pos] == '"') {
            auto close = line.find('"', pos + 1);
            if (close == std::string::npos)
                throw CatalogParseError("unterminated quote" + where);
            val = line.substr(pos + 1, close - pos - 1);
            pos = close + 1;
        } else {
            auto end = line.find_first_of(" \t", pos);
            if (end == std::string::npos) end = line.size();
            val = line.substr(pos, end - pos);
            pos = end;
        }
        out.emplace_back(std::move(key), std::move(val));
    }
    return out;
}

}  // namespace detail

inline Catalog parse_catalog(std::istream& in) {
    Catalog cat;
    std::string line;
    int line_no = 0;
    WitnessRecord* open = nullptr;
    auto err = [&](const std::string& msg) -> CatalogParseError {
        return CatalogParseError(msg + " on line " + std::to_string(line_no));
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        const bool indented = std::isspace(static_cast<unsigned char>(line[0]));
        if (head == "witness") {
            std::string id;
            if (!(ls >> id)) throw err("witness needs an id");
            WitnessRecord w;
            w.id = id;
            for (auto& [k, v] : detail::parse_kv_tail(line, std::size_t(ls.tellg()), line_no)) {
                if (k == "source") w.source = v;
                else throw err("unknown witness attribute '" + k + "'");
            }
            if (w.source.empty()) throw err("witness needs source=");
            cat.witnesses.push_back(std::move(w));
            open = &cat.witnesses.back();
        } else if (head == "curve") {
            if (!indented || !open) throw err("curve line outside a witness block");
            auto pos = line.find("curve");
            open->curve_text = line.substr(pos + 6);
            while (!open->curve_text.empty() && std::isspace(static_cast<unsigned char>(
                                                    open->curve_text.back())))
                open->curve_text.pop_back();
            split_curve_text(open->curve_text);  // syntax check now, fail early
        } else if (head == "claim") {
            if (!indented || !open) throw err("claim line outside a witness block");
            std::string body;
            if (!(ls >> body)) throw err("claim needs a property");
            open->claims.push_back(parse_claim(body));
        } else if (head == "fact") {
            open = nullptr;
            std::string id;
            if (!(ls >> id)) throw err("fact needs an id");
            ExternalFact f;
            f.id = id;
            std::optional<unsigned> r;
            std::optional<std::uint64_t> value;
            std::string effect;
            for (auto& [k, v] : detail::parse_kv_tail(line, std::size_t(ls.tellg()), line_no)) {
                if (k == "scope") f.scope_text = v;
                else if (k == "effect") effect = v;
                else if (k == "cite") f.cite = v;
                else if (k == "statement") f.statement = v;
                else if (k == "r") r = unsigned(std::stoul(v));
                else if (k == "value") value = std::stoull(v);
                else throw err("unknown fact attribute '" + k + "'");
            }
            if (f.scope_text.empty() || effect.empty() || f.cite.empty())
                throw err("fact needs scope=, effect= and cite=");
            f.scope = parse_scope(f.scope_text);
            if (effect == "forbids-pointless") f.effect = FactEffect::ForbidsPointless;
            else if (effect == "forbids-Br-zero") f.effect = FactEffect::ForbidsBrZero;
            else if (effect == "caps-N1") f.effect = FactEffect::CapsN1;
            else if (effect == "forces-existence") f.effect = FactEffect::ForcesExistence;
            else throw err("unknown fact effect '" + effect + "'");
            if (f.effect == FactEffect::ForbidsBrZero) {
                if (!r) throw err("forbids-Br-zero needs r=");
                f.r = *r;
            } else if (f.effect == FactEffect::CapsN1) {
                if (!value) throw err("caps-N1 needs value=");
                f.value = *value;
            } else if (r || value) {
                throw err("r=/value= only apply to forbids-Br-zero/caps-N1");
            }
            cat.facts.push_back(std::move(f));
        } else {
            throw err("unrecognized directive '" + head + "'");
        }
    }
    // schema validation: every witness has a curve and at least one claim
    for (const auto& w : cat.witnesses) {
        if (w.curve_text.empty())
            throw CatalogSchemaError("witness '" + w.id + "' has no curve line");
        if (w.claims.empty())
            throw CatalogSchemaError("witness '" + w.id + "' has no claims");
    }
    return cat;
}

inline Catalog parse_catalog(const std::string& text) {
    std::istringstream in(text);
    return parse_catalog(in);
}

inline Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogParseError("cannot open catalog file '" + path + "'");
    return parse_catalog(in);
}

/// The shipped catalog: every curve equation the source proofs and tables
/// use, plus the imported classification facts, each with its citation tag.
inline const std::string& default_catalog_text() {
    static const std::string text = R"CAT(# Witness curves: equations transcribed verbatim, claims machine-verified.

witness b2max-g1-q2 source=Table2
  curve hyperelliptic q=2 g=1 f=x^3+x^2+1 h=x
  claim N1=2
  claim N2=8

witness b2max-g1-q3 source=Table2
  curve hyperelliptic q=3 g=1 f=x^3+x^2-1 h=0
  claim N1=3
  claim N2=15

witness b2max-g1-q4 source=Table2
  curve hyperelliptic q=2^2 g=1 f=x^3+a h=x
  claim N1=4
  claim N2=24

witness b2max-g2-q3 source=Table2
  curve hyperelliptic q=3 g=2 f=2x^6+x^4+2x^3+x^2+2 h=0
  claim N1=2
  claim N2=20

witness b2max-g2-q4 source=Table2
  curve hyperelliptic q=2^2 g=2 f=x^5+x^3+x^2+x h=x^2+x
  claim N1=3
  claim N2=31

witness b2max-g2-q5 source=Table2
  curve hyperelliptic q=5 g=2 f=4x^6+x^5+x^4+x^3+x^2+x+4 h=0
  claim N1=4
  claim N2=44

witness b2max-g2-q7 source=Table2
  curve hyperelliptic q=7 g=2 f=3x^6+3x^3+3 h=0
  claim N1=6
  claim N2=76

witness b2max-g2-q8 source=Table2
  curve hyperelliptic q=2^3 g=2 f=a^2x^5+a^2x^3+ax^2+ax h=x^2+x
  claim N1=7
  claim N2=95

witness b2max-g2-q9 source=Table2
  curve hyperelliptic q=3^2 g=2 f=2ax^6+ax^5+2ax^4+ax^2+ax+a h=0
  claim N1=8
  claim N2=116

witness b2max-g2-q11 source=Table2
  curve hyperelliptic q=11 g=2 f=7x^6+5x^5+9x^4+8x^3+5x^2+6x+7 h=0
  claim N1=10
  claim N2=164

witness b2max-g3-q2 source=Table2
  curve plane q=2 F=x^4+x^2y^2+x^2yz+x^2z^2+xy^2z+xyz^2+y^4+y^2z^2+z^4
  claim N1=0
  claim N2=14

witness b4zero-g1-q2 source=Sec4
  curve hyperelliptic q=2 g=1 f=x^3 h=1
  claim B4=0

witness b2zero-g1-q3 source=Sec4
  curve hyperelliptic q=3 g=1 f=x^3+2x+1 h=0
  claim N1=N2
  claim B2=0

witness b2zero-g1-q4 source=Sec4
  curve hyperelliptic q=2^2 g=1 f=x^3 h=1
  claim B2=0

witness b3zero-g2-q2 source=Sec5
  curve hyperelliptic q=2 g=2 f=x^5+x^2 h=1
  claim N1=5
  claim N1=N3
  claim B3=0

witness b3zero-g2-q3 source=Sec5
  curve hyperelliptic q=3 g=2 f=(1+x^2)(-1+x+x^2)(-1-x+x^2) h=0
  claim N1=8
  claim N1=N3
  claim B3=0

witness b2zero-g2-q5 source=Sec5
  curve hyperelliptic q=5 g=2 f=x^5+4x h=0
  claim B2=0

witness b6zero-g3-q2 source=Sec6
  curve plane q=2 F=x^4+x^2y^2+x^2yz+x^2z^2+xy^2z+xyz^2+y^4+y^2z^2+z^4
  claim N1=0
  claim B6=0

witness b4zero-g3-q3 source=Sec6
  curve plane q=3 F=x^3z+xz^3+y^4
  claim B4=0

witness b2zero-g3-q4 source=Sec6
  curve plane q=2^2 F=x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2
  claim B2=0

witness b2zero-g3-q5 source=Sec6
  curve hyperelliptic q=5 g=3 f=x^7+x^5+3x^3+x h=0
  claim B2=0

witness b2zero-g3-q9 source=Sec6
  curve plane q=3^2 F=x^4+y^4+z^4
  claim N1=28
  claim N1=N2
  claim B2=0

# Imported classification facts, quoted with their citations; never re-derived.

fact mnh-pointless-exists-g2 scope="g=2 q<=11" effect=forces-existence cite=MNH statement="There exists a pointless genus 2 curve over F_q for every prime power q <= 11."

fact mnh-no-pointless-g2 scope="g=2 q>=13" effect=forbids-pointless cite=MNH statement="There is no pointless genus 2 curve over F_q when q > 11."

fact lario-deg4-g2-q2 scope="g=2 q=2" effect=forbids-Br-zero r=4 cite=Lario statement="Every genus 2 curve over F_2 admits at least one closed point of degree 4."

fact lario-deg2-g2-q4 scope="g=2 q=4" effect=forbids-Br-zero r=2 cite=Lario statement="Every genus 2 curve over F_4 admits at least one closed point of degree 2."

fact lario-deg3-g2-q4 scope="g=2 q=4" effect=forbids-Br-zero r=3 cite=Lario statement="Every genus 2 curve over F_4 admits at least one closed point of degree 3."

fact hlt-pointless-exists-g3 scope="g=3 q<=25; g=3 q=29; g=3 q=32" effect=forces-existence cite=HLT statement="There exists a pointless genus 3 curve over F_q exactly when q <= 25, q = 29 or q = 32."

fact hlt-no-pointless-g3 scope="g=3 q=27; g=3 q=31; g=3 q>=37" effect=forbids-pointless cite=HLT statement="There is no pointless genus 3 curve over F_q when q = 27, q = 31 or q >= 37."

fact serre-n1-cap-g3-q4 scope="g=3 q=4" effect=caps-N1 value=14 cite=Serre statement="The maximal number of rational points of a genus 3 curve over F_4 is 14."

fact v-no-ds-g3-q7 scope="g=3 q=7" effect=forbids-Br-zero r=2 cite=V statement="No genus 3 curve over F_7 is Diophantine-stable for F_49/F_7; every such curve has a closed point of degree 2."

fact lmfdb-no-b2zero-g3-q8 scope="g=3 q=8" effect=forbids-Br-zero r=2 cite=LMFDB statement="The curve database lists no genus 3 curve over F_8 with B_2 = 0."
)CAT";
    return text;
}

inline Catalog default_catalog() { return parse_catalog(default_catalog_text()); }

}  // namespace curveatlas

#endif  // CURVEATLAS_CATALOG_HPP_
