#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curveatlas/bounds.hpp"
#include "curveatlas/search.hpp"

using namespace curveatlas;

namespace {

bool same_model(const HyperellipticModel& a, const HyperellipticModel& b) {
    return a.f.c == b.f.c && a.h.c == b.h.c && a.g == b.g;
}

}  // namespace

TEST_CASE("B_3 = 0 genus-2 curves over F_2 are rediscovered") {
    SearchSpec spec;
    spec.base = make_field(2, 1);
    spec.g = 2;
    spec.predicate = SearchSpec::Predicate::BrZero;
    spec.r = 3;
    SearchResult res = scan(spec);
    CHECK(res.tuples_considered == (1u << 11));  // 2^7 f-codes times 2^4 h-codes
    CHECK(res.models_valid > 0);
    REQUIRE_FALSE(res.hits.empty());
    bool found_catalog_curve = false;
    for (const auto& h : res.hits) {
        CHECK(h.b_value == 0);
        REQUIRE(h.profile.counts.size() >= 3);
        if (h.profile.counts[0] == 5 && h.profile.counts[2] == 5) found_catalog_curve = true;
    }
    // the N_1 = N_3 = 5 curve family behind the rho(2,2) certificate is in there
    CHECK(found_catalog_curve);
}

TEST_CASE("scan order is deterministic and thread-count independent") {
    SearchSpec spec;
    spec.base = make_field(2, 1);
    spec.g = 2;
    spec.predicate = SearchSpec::Predicate::BrZero;
    spec.r = 3;
    SearchResult a = scan(spec);
    SearchResult b = scan(spec);
    spec.threads = 3;
    SearchResult c = scan(spec);
    REQUIRE(a.hits.size() == b.hits.size());
    REQUIRE(a.hits.size() == c.hits.size());
    for (std::size_t i = 0; i < a.hits.size(); ++i) {
        CHECK(same_model(a.hits[i].model, b.hits[i].model));
        CHECK(same_model(a.hits[i].model, c.hits[i].model));
    }
    CHECK(a.tuples_considered == c.tuples_considered);
    CHECK(a.models_valid == c.models_valid);
}

TEST_CASE("maximal B_2 over F_2 at genus 1 attains the certified bound") {
    SearchSpec spec;
    spec.base = make_field(2, 1);
    spec.g = 1;
    spec.predicate = SearchSpec::Predicate::MaximizeB2;
    SearchResult res = scan(spec);
    CHECK(res.max_b2 == 3);
    REQUIRE_FALSE(res.hits.empty());
    for (const auto& h : res.hits) CHECK(h.b_value == 3);
    // the scan maximum never exceeds the applicable certified upper bound
    BigInt cap = *find_bound(b2_upper_bounds(2, 1), "b2_hp").integer_part;
    CHECK(res.max_b2 <= cap);
    CHECK(res.max_b2 == cap);  // and here it is attained
}

TEST_CASE("pointless searches respect the Weil obstruction") {
    // genus 1 over F_3: N_1 >= q+1-2 sqrt(q) > 0, so no hits can exist
    SearchSpec g1;
    g1.base = make_field(3, 1);
    g1.g = 1;
    g1.predicate = SearchSpec::Predicate::Pointless;
    SearchResult none = scan(g1);
    CHECK(none.tuples_considered == 243);  // 3^5 f-codes, h = 0 only in odd characteristic
    CHECK(none.hits.empty());

    // genus 2 over F_2: pointless curves exist and every hit re-checks to N_1 = 0
    SearchSpec g2;
    g2.base = make_field(2, 1);
    g2.g = 2;
    g2.predicate = SearchSpec::Predicate::Pointless;
    SearchResult some = scan(g2);
    REQUIRE_FALSE(some.hits.empty());
    for (const auto& h : some.hits) {
        CHECK(h.profile.counts[0] == 0);
        CHECK(h.b_value == 0);
        CHECK(count_points(CurveModel{h.model}, 1) == 0);
    }
}

TEST_CASE("no pointless genus-2 hyperelliptic curve over F_13") {
    SearchSpec spec;
    spec.base = make_field(13, 1);
    spec.g = 2;
    spec.predicate = SearchSpec::Predicate::Pointless;
    SearchResult res = scan(spec);
    CHECK(res.tuples_considered == 62748517ull);  // 13^7
    CHECK(res.hits.empty());
}

TEST_CASE("budgets refuse oversized families") {
    SearchSpec spec;
    spec.base = make_field(13, 1);
    spec.g = 3;  // 13^9 tuples
    spec.predicate = SearchSpec::Predicate::Pointless;
    CHECK_THROWS_AS((void)scan(spec), BudgetExceededError);
    SearchSpec tiny;
    tiny.base = make_field(2, 1);
    tiny.g = 1;
    tiny.budget = 16;
    CHECK_THROWS_AS((void)scan(tiny), BudgetExceededError);
}
