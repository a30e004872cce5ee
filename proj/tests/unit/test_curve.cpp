#include <doctest.h>

#include <cmath>

#include "densdeg/curve.hpp"
#include "densdeg/facts.hpp"
#include "densdeg/numtheory.hpp"
#include "support.hpp"

using namespace densdeg;
using testsupport::brute_count;
using testsupport::uniform;

namespace {

HyperellipticCurve random_genus2() {
    while (true) {
        std::vector<mpq_class> c;
        for (int i = 0; i < 7; ++i) c.push_back(uniform(-5, 5));
        if (c[6] == 0) c[6] = 1;
        HyperellipticCurve h{Poly(c)};
        if (h.is_nonsingular()) return h;
    }
}

}  // namespace

TEST_CASE("point counts match brute force") {
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        HyperellipticCurve c = random_genus2();
        for (uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
            if (!good_odd_prime(c, p)) continue;
            CHECK(count_points_mod_p(c, p) == (uint64_t)brute_count(c, p));
            ++checked;
        }
    }
    CHECK(checked > 100);
    // long Weierstrass model with h != 0
    HyperellipticCurve x11(Poly({0, 0, -1, 1}), Poly({1}));
    for (uint64_t p : {3, 5, 7, 13})
        CHECK(count_points_mod_p(x11, p) == (uint64_t)brute_count(x11, p));
}

TEST_CASE("Weil interval contains every count") {
    for (int t = 0; t < 30; ++t) {
        HyperellipticCurve c = random_genus2();
        for (uint64_t p : {5, 7, 11, 13, 29, 31}) {
            if (!good_odd_prime(c, p)) continue;
            auto [lo, hi] = weil_interval(2, p);
            long n = (long)count_points_mod_p(c, p);
            CHECK(lo <= n);
            CHECK(n <= hi);
            // the interval is the floor/ceiling of p + 1 -+ 4 sqrt(p)
            CHECK(hi == (long)std::floor(p + 1 + 4 * std::sqrt((double)p)));
        }
    }
}

TEST_CASE("elliptic invariants") {
    EllipticCurve e(0, -1, 1, 0, 0);  // y^2 + y = x^3 - x^2
    CHECK(e.discriminant() == -11);
    CHECK(e.j_invariant() == mpq_class(-4096, 11));
    CHECK(ap(e, 17) == -2);
    EllipticCurve e1728(0, 0, 0, 484, 0);
    CHECK(e1728.j_invariant() == 1728);
    // same curve after x -> x + 1
    EllipticCurve moved(0, 3, 0, 487, 485);
    CHECK(isomorphic_over_q(e1728, moved));
    CHECK_FALSE(isomorphic_over_q(e1728, EllipticCurve(0, 0, 0, -92, 0)));
    auto back = EllipticCurve::from_hyperelliptic(e.as_hyperelliptic());
    REQUIRE(back);
    CHECK(isomorphic_over_q(*back, e));
}

TEST_CASE("Jacobian of the quartic is 14.a5") {
    EllipticCurve j = quartic_jacobian(Poly({1, 2, -5, 2, 1}));
    EllipticCurve e14(1, 0, 1, -1, 0);
    CHECK(isomorphic_over_q(j, e14));
}

TEST_CASE("real points, mod-3 classes and rational roots") {
    HyperellipticCurve c(Poly({-1, 0, -1, 0, -1, 0, -1}));
    CHECK(real_points_empty(c));
    CHECK(mod3_condition(c.completed(), -1));
    HyperellipticCurve d(Poly({-2, 0, -2, 0, -2, 0, -2}));
    CHECK(mod3_condition(d.completed(), 1));
    CHECK_FALSE(real_points_empty(HyperellipticCurve(Poly({3, 0, -3, 0, 0, 0, 3}))));
    auto roots = rational_roots(Poly({-6, 11, -6, 1}));
    CHECK(roots.size() == 3);
    CHECK(rational_roots(Poly({1, 0, 1})).empty());
}

TEST_CASE("quadratic points over Q(i)") {
    HyperellipticCurve c(Poly({-1, 0, -1, 0, -1, 0, -1}));
    QuadElem i{0, 1}, zero{0, 0};
    CHECK(on_curve_quadratic(c, i, zero, -1));
    CHECK_FALSE(on_curve_quadratic(c, QuadElem{1, 1}, zero, -1));
}

TEST_CASE("rational point search and derived facts") {
    HyperellipticCurve c(Poly({2, 3, 1, 1, 0, -1}), Poly({1, 0, 0, 1}));
    CHECK(c.genus() == 2);
    auto pts = search_rational_points(c, 10);
    CHECK_FALSE(pts.empty());
    CurveInput in{"249.a.6723.1", c, {}};
    derive_facts(in);
    CHECK(in.facts.has_k_point.yes());
    CHECK(*in.facts.index.value == 1);
    CHECK(in.facts.has_degree3_point.yes());
    CHECK(in.facts.has_rational_weierstrass.yes());

    CurveInput thin{"", HyperellipticCurve(Poly({-1, 0, -1, 0, -1, 0, -1})), {}};
    derive_facts(thin);
    CHECK(*thin.facts.index.value == 2);
    CHECK(thin.facts.has_degree3_point.no());
}

TEST_CASE("contradictory facts are rejected") {
    CurveInput c = CurveInput::from_json({{"genus", 2}, {"facts", {{"has_k_point", "yes"}, {"index", 2}}}});
    CHECK_THROWS_AS(derive_facts(c), FactError);
    CHECK_THROWS_AS(CurveInput::from_json({{"genus", 2}, {"facts", {{"rank", 1}}}}), FactError);
    CurveInput m = CurveInput::from_json({{"model", {{"f", {-1, 0, -1, 0, -1, 0, -1}}}},
                                          {"facts", {{"has_k_point", "yes"}}}});
    CHECK_THROWS_AS(derive_facts(m), FactError);
}
