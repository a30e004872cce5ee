#include <doctest.h>

#include "densdeg/batch.hpp"
#include "densdeg/facts.hpp"
#include "support.hpp"

using namespace densdeg;
using json = nlohmann::json;

TEST_CASE("every fixture case passes") {
    auto outcomes = run_fixture_cases(testsupport::fixtures());
    CHECK(outcomes.size() == testsupport::fixtures()["cases"].size());
    for (auto& o : outcomes) {
        INFO(o.name << ": " << o.detail);
        CHECK(o.ok);
    }
}

TEST_CASE("asserted facts carry an anchor") {
    for (auto& [label, c] : testsupport::fixtures()["curves"].items()) {
        if (!c.contains("facts")) continue;
        for (auto& [k, v] : c["facts"].items()) {
            INFO(label << "." << k);
            CHECK(v.is_object());
            CHECK(v.contains("anchor"));
        }
    }
}

TEST_CASE("fixture point counts respect the Weil bound") {
    int checked = 0;
    for (auto& [label, j] : testsupport::fixtures()["curves"].items()) {
        CurveInput c = fixture_curve(testsupport::fixtures(), label);
        derive_facts(c);
        int g = c.facts.genus;
        for (auto& [p, n] : c.facts.points_mod_p) {
            auto [lo, hi] = weil_interval(g, p);
            INFO(label << " asserted at " << p);
            CHECK(lo <= n);
            CHECK(n <= hi);
            ++checked;
        }
        if (!c.model) continue;
        for (uint64_t p : primes_up_to(50)) {
            if (!good_odd_prime(*c.model, p)) continue;
            long n = (long)count_points_mod_p(*c.model, p);
            auto [lo, hi] = weil_interval(g, p);
            INFO(label << " at " << p << ": " << n);
            CHECK(lo <= n);
            CHECK(n <= hi);
            CHECK(n == testsupport::brute_count(*c.model, p));
            ++checked;
        }
    }
    CHECK(checked > 100);
}
