#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curveatlas/counting.hpp"
#include "curveatlas/curvetext.hpp"

using namespace curveatlas;

namespace {

FPoly poly(const Field& F, const char* text) {
    return FPoly::make(F, univariate_coeffs(parse_poly(text, F, 0b001)));
}

}  // namespace

TEST_CASE("hyperelliptic constructor accepts the catalog shapes") {
    Field F2 = make_field(2, 1);
    CHECK_NOTHROW(make_hyperelliptic(F2, poly(F2, "x^3+x^2+1"), poly(F2, "x"), 1));
    CHECK_NOTHROW(make_hyperelliptic(F2, poly(F2, "x^5+x^2"), poly(F2, "1"), 2));
    Field F5 = make_field(5, 1);
    CHECK_NOTHROW(make_hyperelliptic(F5, poly(F5, "x^7+x^5+3x^3+x"), poly(F5, "0"), 3));
}

TEST_CASE("degree constraints are enforced") {
    Field F5 = make_field(5, 1);
    // deg f > 2g+2
    CHECK_THROWS_AS(make_hyperelliptic(F5, poly(F5, "x^5+x"), poly(F5, "0"), 1),
                    DegreeViolationError);
    // max(2 deg h, deg f) too small for the genus
    CHECK_THROWS_AS(make_hyperelliptic(F5, poly(F5, "x^2+x"), poly(F5, "0"), 1),
                    DegreeViolationError);
    // deg h > g+1
    CHECK_THROWS_AS(make_hyperelliptic(F5, poly(F5, "x^3+x"), poly(F5, "x^3"), 1),
                    DegreeViolationError);
    CHECK_THROWS_AS(make_hyperelliptic(F5, poly(F5, "x^3+x"), poly(F5, "0"), 0),
                    DegreeViolationError);
}

TEST_CASE("singular models are rejected with a reproducible witness") {
    Field F5 = make_field(5, 1);
    // f = x(x^2-1)^2 has repeated roots
    CHECK_THROWS_AS(make_hyperelliptic(F5, poly(F5, "x(x^2-1)^2"), poly(F5, "0"), 2),
                    SingularModelError);
    {
        HyperellipticModel m{F5, poly(F5, "x(x^2-1)^2"), poly(F5, "0"), 2};
        SmoothnessStatus st = is_smooth_hyperelliptic(m);
        REQUIRE(st.kind == SmoothnessStatus::Kind::SingularAt);
        // the witness re-evaluates to a repeated root of the completed square
        REQUIRE(st.singular_ext_degree >= 1);
        auto [E, emb] = build_extension(F5, st.singular_ext_degree);
        FPoly fe = m.f.mapped(emb);
        FieldElement x = E->element_at(st.singular_point.at(0));
        CHECK(E->is_zero(fe.eval(x)));
        CHECK(E->is_zero(fe.derivative().eval(x)));
    }
    Field F3 = make_field(3, 1);
    CHECK(is_smooth_hyperelliptic({F3, poly(F3, "x^3+2x+1"), poly(F3, "0"), 1}).is_smooth_ok());
}

TEST_CASE("characteristic-2 smoothness rules") {
    Field F2 = make_field(2, 1);
    // h = 0 is inseparable, always singular
    CHECK(is_smooth_hyperelliptic({F2, poly(F2, "x^3"), poly(F2, "0"), 1}).kind ==
          SmoothnessStatus::Kind::SingularAt);
    // constant h has no roots; the finite chart is automatically smooth
    CHECK(is_smooth_hyperelliptic({F2, poly(F2, "x^5+x^2"), poly(F2, "1"), 2}).is_smooth_ok());
    // tangency at a root of h: y^2 + xy = x^3 + x^2 is singular at x = 0
    // (h'(0) sqrt(f(0)) = 0 = f'(0))
    CHECK(is_smooth_hyperelliptic({F2, poly(F2, "x^3+x^2"), poly(F2, "x"), 1}).kind ==
          SmoothnessStatus::Kind::SingularAt);
    CHECK(is_smooth_hyperelliptic({F2, poly(F2, "x^3+x^2+1"), poly(F2, "x"), 1}).is_smooth_ok());
    // even-degree f with a vanishing 2g+1 coefficient and small h is singular
    // at infinity: y^2 + y = x^6 + x^4 has a genus drop
    CHECK(is_smooth_hyperelliptic({F2, poly(F2, "x^6+x^4"), poly(F2, "1"), 2}).kind ==
          SmoothnessStatus::Kind::SingularAt);
    CHECK(is_smooth_hyperelliptic({F2, poly(F2, "x^6+x^5"), poly(F2, "1"), 2}).is_smooth_ok());
}

TEST_CASE("odd-characteristic leading-term cancellation is singular at infinity") {
    Field F5 = make_field(5, 1);
    // f + h^2/4 collapses to degree <= 2g: take h = 2x^2, f = -x^4 + x^3 + x
    FPoly f = poly(F5, "-x^4+x^2+x");
    FPoly h = poly(F5, "2x^2");
    CHECK(is_smooth_hyperelliptic({F5, f, h, 1}).kind == SmoothnessStatus::Kind::SingularAt);
}

TEST_CASE("plane curve constructor checks homogeneity") {
    Field F2 = make_field(2, 1);
    CHECK_THROWS_AS((void)parse_curve("plane q=2 F=x^4+y^4+z"), InhomogeneousFormError);
    CurveModel quartic = parse_curve("plane q=2 F=x^4+x^2y^2+x^2yz+x^2z^2+xy^2z+xyz^2+y^4+y^2z^2+z^4");
    CHECK(genus(quartic) == 3);
    CHECK(std::get<PlaneCurveModel>(quartic).degree == 4);
}

TEST_CASE("plane smoothness scan gives the honest three-state answer") {
    // x^4+y^4+z^4 = (x+y+z)^4 over F_2: every point on the line is singular
    CurveModel sing = parse_curve("plane q=2 F=x^4+y^4+z^4");
    SmoothnessStatus st = is_smooth_plane(std::get<PlaneCurveModel>(sing));
    REQUIRE(st.kind == SmoothnessStatus::Kind::SingularAt);
    {
        // the witness re-evaluates to simultaneous vanishing
        const auto& m = std::get<PlaneCurveModel>(sing);
        auto [E, emb] = build_extension(m.base, st.singular_ext_degree);
        PlaneCurveModel me = m.mapped(emb);
        FieldElement x = E->element_at(st.singular_point.at(0));
        FieldElement y = E->element_at(st.singular_point.at(1));
        FieldElement z = E->element_at(st.singular_point.at(2));
        CHECK(E->is_zero(me.eval(x, y, z)));
        CHECK(E->is_zero(me.partial(0).eval(x, y, z)));
        CHECK(E->is_zero(me.partial(1).eval(x, y, z)));
        CHECK(E->is_zero(me.partial(2).eval(x, y, z)));
    }

    // the genus-3 quartic over F_2 certifies fully: singular loci of quartics
    // live in extension degree <= 9 and F_{2^9} scans fit the budget
    CurveModel smooth = parse_curve("plane q=2 F=x^4+x^2y^2+x^2yz+x^2z^2+xy^2z+xyz^2+y^4+y^2z^2+z^4");
    SmoothnessStatus cert = is_smooth_plane(std::get<PlaneCurveModel>(smooth), 9);
    CHECK(cert.kind == SmoothnessStatus::Kind::SmoothCertified);

    // over F_9 the Fermat quartic's full scan exceeds the budget: the answer
    // must be an honest partial certificate, never "certified"
    CurveModel fermat = parse_curve("plane q=9 F=x^4+y^4+z^4");
    SmoothnessStatus part =
        is_smooth_plane(std::get<PlaneCurveModel>(fermat), 0, std::uint64_t(1) << 20);
    REQUIRE(part.kind == SmoothnessStatus::Kind::SmoothUpTo);
    CHECK(part.checked_up_to >= 2);
}

TEST_CASE("smoothness re-validation is idempotent") {
    Field F2 = make_field(2, 1);
    HyperellipticModel m = make_hyperelliptic(F2, poly(F2, "x^3+x^2+1"), poly(F2, "x"), 1);
    SmoothnessStatus a = is_smooth_hyperelliptic(m);
    SmoothnessStatus b = is_smooth_hyperelliptic(m);
    CHECK(a.kind == b.kind);
    CHECK(a.checked_up_to == b.checked_up_to);
    CurveModel quartic = parse_curve("plane q=2 F=x^4+x^2y^2+x^2yz+x^2z^2+xy^2z+xyz^2+y^4+y^2z^2+z^4");
    SmoothnessStatus c = is_smooth_plane(std::get<PlaneCurveModel>(quartic), 3);
    SmoothnessStatus d = is_smooth_plane(std::get<PlaneCurveModel>(quartic), 3);
    CHECK(c.kind == d.kind);
    CHECK(c.checked_up_to == d.checked_up_to);
}

TEST_CASE("completed square preserves point counts in odd characteristic") {
    Field F3 = make_field(3, 1);
    Field F5 = make_field(5, 1);
    struct Case { Field F; const char* f; const char* h; unsigned g; };
    for (const Case& c : {Case{F3, "x^3+x^2-1", "x", 1}, Case{F5, "x^5+4x+1", "x^2+1", 2},
                          Case{F3, "2x^6+x^4+2x^3+x^2+2", "x", 2}}) {
        HyperellipticModel orig = make_hyperelliptic(c.F, poly(c.F, c.f), poly(c.F, c.h), c.g);
        FieldElement quarter = c.F->inv(c.F->from_int(4));
        FPoly ft = orig.f + (orig.h * orig.h).scaled(quarter);
        HyperellipticModel squared = make_hyperelliptic(c.F, ft, poly(c.F, "0"), c.g);
        for (unsigned n = 1; n <= 4; ++n)
            CHECK(count_points(CurveModel{orig}, n) == count_points(CurveModel{squared}, n));
    }
}

TEST_CASE("elliptic convenience constructor and genus accessors") {
    Field F2 = make_field(2, 1);
    HyperellipticModel e = elliptic_from_weierstrass(F2, F2->one(), F2->one(), F2->zero(),
                                                     F2->zero(), F2->one());
    // (a1,a2,a3,a4,a6) = (1,1,0,0,1): y^2 + xy = x^3 + x^2 + 1
    CHECK(e.g == 1);
    CHECK(count_points(CurveModel{e}, 1) == 2);
    CHECK(count_points(CurveModel{e}, 2) == 8);
    Field F5 = make_field(5, 1);
    CurveModel g3 = parse_curve("hyperelliptic q=5 g=3 f=x^7+x^5+3x^3+x h=0");
    CHECK(genus(g3) == 3);
    CHECK(base_field(g3)->q == 5);
}
