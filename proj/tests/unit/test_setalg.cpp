#include <doctest.h>

#include "densdeg/setalg.hpp"
#include "oracles.hpp"

using namespace densdeg;
using namespace oracles;

TEST_CASE("random expressions agree with brute-force semantics") {
    for (int i = 0; i < 500; ++i) {
        json e = random_expr(4);
        Bits want = oracle(e);
        DegreeSet raw = DegreeSet::from_json(e), simp = build(e);
        INFO(e.dump());
        CHECK(bits_of(raw) == want);
        CHECK(bits_of(simp) == want);
        for (uint64_t d = 1; d <= W; d += 7) CHECK(simp.contains(d) == want[d]);
        // round trip through JSON keeps the semantics
        CHECK(bits_of(DegreeSet::from_json(simp.to_json())) == want);
        // saturation is idempotent
        DegreeSet s = DegreeSet::saturate(simp);
        CHECK(equals_on_window(s, DegreeSet::raw(DegreeSet::Kind::Saturate, s), W));
    }
}

TEST_CASE("tails with different steps keep both in a union") {
    DegreeSet u = DegreeSet::unite(DegreeSet::multiples(2), DegreeSet::naturals_from(2));
    CHECK(u.contains(3));
    CHECK(u.contains(2));
    CHECK_FALSE(u.contains(1));
    DegreeSet v = DegreeSet::unite(DegreeSet::tail(3, 10), DegreeSet::tail(6, 12));
    CHECK(v.kind() == DegreeSet::Kind::Tail);
    CHECK(v.contains(12));
    CHECK_FALSE(v.contains(9));
}

TEST_CASE("window helpers") {
    DegreeSet a = DegreeSet::difference(DegreeSet::naturals_from(2), DegreeSet::finite({2, 3, 5}));
    CHECK(window_difference(DegreeSet::naturals_from(2), a, 10) == std::vector<uint64_t>{2, 3, 5});
    CHECK(subset_on_window(a, DegreeSet::naturals(), 50));
    CHECK_FALSE(subset_on_window(DegreeSet::naturals(), a, 50));
    CHECK(primes_up_to(20) == std::vector<uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(DegreeSet::from_json(json{{"kind", "finite"}, {"members", {3, 2}}}), SetError);
    CHECK_THROWS_AS(DegreeSet::from_json(json{{"kind", "tail"}, {"m", 0}, {"start", 1}}), SetError);
    CHECK_THROWS_AS(DegreeSet::from_json(json{{"kind", "bogus"}}), SetError);
    CHECK_THROWS_AS(DegreeSet::scale(DegreeSet::naturals(), 0), SetError);
}

TEST_CASE("describe is readable") {
    CHECK(DegreeSet::naturals_from(2).describe() == "ℕ≥2");
    CHECK(DegreeSet::multiples(2).describe() == "2ℕ");
    CHECK(DegreeSet::finite({}).describe() == "∅");
}
