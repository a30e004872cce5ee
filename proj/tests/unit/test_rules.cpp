#include <doctest.h>

#include <chrono>
#include <regex>

#include "densdeg/batch.hpp"
#include "densdeg/numtheory.hpp"
#include "densdeg/rules.hpp"
#include "support.hpp"

using namespace densdeg;
using json = nlohmann::json;
using testsupport::uniform;

namespace {

constexpr uint64_t W = 200;

CurveInput facts_curve(int genus, json facts, std::string label = "") {
    return CurveInput::from_json({{"genus", genus}, {"facts", std::move(facts)}, {"label", label}});
}

CurveInput fx(const std::string& label) { return fixture_curve(testsupport::fixtures(), label); }

DegreeSet from_except(uint64_t n, std::vector<uint64_t> out) {
    return DegreeSet::difference(DegreeSet::naturals_from(n), DegreeSet::finite(std::move(out)));
}

bool fired(const BoundResult& r, const std::string& id) {
    for (auto& t : r.trace)
        if (t.rule == id && t.status != "skipped" && t.status != "note") return true;
    return false;
}

// rational c is a square of a rational
bool rational_square(const mpq_class& c) {
    if (c < 0) return false;
    mpz_class n = c.get_num(), d = c.get_den();
    return isqrt(n) * isqrt(n) == n && isqrt(d) * isqrt(d) == d;
}

}  // namespace

TEST_CASE("closed-form bounds") {
    CHECK(N_pointed(2, 2, 1, 1) == 10);
    CHECK(N_pointed(2, 2, 1, 2) == 14);
    CHECK(N_pointed(2, 2, 2, 2) == 18);
    CHECK(N_index1(3, 2, 2, 2) == 24);
    CHECK(N_index1(3, 2, 2, 1) == 18);
    CHECK_THROWS_AS(N_index1(2, 2, 2, 2), RuleError);
    CHECK(N_general(2, 2, 2) == 50);
    CHECK(N_general(2, 2, 13) == 512);
    CHECK(N_general(1, 1, 1) == 10);
    CHECK(eff_index_bound(2, 2, 1) == 25);
    CHECK(eff_index_bound(1, 1, 1) == 9);
}

TEST_CASE("fiber product genus") {
    CHECK(fiber_product_genus(2, 2, 1, 1, 1) == std::pair<long, long>{5, 4});
    CHECK(fiber_product_genus(3, 2, 2, 1, 0).first == 9);
    CHECK(fiber_product_genus(2, 2, 2, 2, 0).first == 9);
    CHECK_THROWS_AS(fiber_product_genus(2, 2, 0, 0, 5), RuleError);
}

TEST_CASE("Castelnuovo-Severi membership") {
    CHECK(cs_membership(6, 1, 2, 3) == 7);
    CHECK_FALSE(cs_membership(4, 1, 2, 3));
    CHECK(cs_membership(9, 2, 2, 3) == 13);
    CHECK_FALSE(cs_membership(9, 2, 2, 3, false));
}

TEST_CASE("single curves of genus one and two") {
    auto delta = [](int g, json f) {
        CurveInput c = facts_curve(g, f);
        derive_facts(c);
        return delta_curve(c.facts);
    };
    BoundResult dense = delta(1, {{"has_k_point", "yes"}, {"positive_rank", "yes"}});
    CHECK(dense.exact);
    CHECK(equals_on_window(dense.lower, DegreeSet::naturals(), W));
    BoundResult finite = delta(1, {{"has_k_point", "yes"}, {"positive_rank", "no"}});
    CHECK(equals_on_window(finite.lower, DegreeSet::naturals_from(2), W));
    BoundResult g2c = delta(2, {{"index", 1}, {"has_degree3_point", "yes"}});
    CHECK(equals_on_window(g2c.lower, DegreeSet::naturals_from(2), W));
    BoundResult g2n = delta(2, {{"has_k_point", "yes"}, {"has_degree3_point", "no"}});
    CHECK(equals_on_window(g2n.lower, from_except(2, {3}), W));
    CHECK(g2n.exact);
    BoundResult g2i = delta(2, {{"index", 2}});
    CHECK(equals_on_window(g2i.upper, DegreeSet::multiples(2), W));
    CHECK_THROWS_AS(delta(2, json::object()), NeedsFact);
}

TEST_CASE("tabulated genus-2 pair bounds") {
    struct Cell {
        const char *c, *d;
        std::vector<uint64_t> out;
    };
    std::vector<uint64_t> small = {2, 3, 5, 7, 11}, seventeen = {2, 3, 5, 7, 11, 13, 17};
    std::vector<Cell> cells = {{"cell.A", "cell.A", small},
                               {"cell.A", "cell.B", {2, 3, 5, 7, 9, 11}},
                               {"cell.B", "cell.A", {2, 3, 5, 7, 9, 11}},
                               {"cell.B", "cell.B", {2, 3, 5, 6, 7, 9, 11}},
                               {"cell.A", "cell.P", seventeen},
                               {"cell.P", "cell.A", seventeen},
                               {"cell.B", "cell.P", {2, 3, 5, 7, 9, 11, 13, 17}},
                               {"cell.P", "cell.B", {2, 3, 5, 7, 9, 11, 13, 17}},
                               {"cell.P", "cell.P", primes_up_to(67)}};
    for (auto& cell : cells) {
        INFO(cell.c << " x " << cell.d);
        auto t0 = std::chrono::steady_clock::now();
        BoundResult r = delta_product(fx(cell.c), fx(cell.d), {});
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CHECK(secs < 1.0);
        DegreeSet want = from_except(2, cell.out);
        CHECK(equals_on_window(r.lower, want, W));
        CHECK(fired(r, "gg.table"));
        // no other rule beats the table on these fact-only inputs
        for (auto& t : r.trace)
            if (t.contribution && (t.status == "lower" || t.status == "exact"))
                CHECK(subset_on_window(*t.contribution, want, W));
    }
}

TEST_CASE("random fact configurations: lower within upper, refinements monotone") {
    static const char* tri[] = {"unknown", "yes", "no"};
    auto random_facts = []() {
        json f = json::object();
        f["has_k_point"] = tri[uniform(0, 2)];
        f["has_degree3_point"] = tri[uniform(0, 2)];
        f["has_rational_weierstrass"] = tri[uniform(0, 2)];
        f["jacobian_rank_zero"] = tri[uniform(0, 2)];
        long idx = uniform(0, 2);
        if (idx) f["index"] = idx;
        return f;
    };
    auto run = [](const json& a, const json& b, bool same) -> std::optional<BoundResult> {
        EngineOptions opt;
        opt.strict = false;
        ProductFacts pf;
        if (same) pf.same_curve.value = Tri::Yes;
        try {
            return delta_product(facts_curve(2, a, "C"), facts_curve(2, b, "D"), pf, opt);
        } catch (FactError&) {
            return std::nullopt;
        }
    };
    int compared = 0;
    for (int t = 0; t < 1000; ++t) {
        json a = random_facts(), b = random_facts();
        auto r = run(a, b, false);
        if (!r) continue;
        CHECK(subset_on_window(r->lower, r->upper, W));
        // refine one unknown fact of C
        std::vector<std::string> unknown;
        for (auto& [k, v] : a.items())
            if (v == "unknown") unknown.push_back(k);
        if (unknown.empty()) continue;
        json a2 = a;
        a2[unknown[uniform(0, (long)unknown.size() - 1)]] = tri[uniform(1, 2)];
        auto r2 = run(a2, b, false);
        if (!r2) continue;
        INFO(a.dump() << " -> " << a2.dump() << " with " << b.dump());
        CHECK(subset_on_window(r->lower, r2->lower, W));
        CHECK(subset_on_window(r2->upper, r->upper, W));
        ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("curve lower bounds are saturated") {
    for (int g = 1; g <= 2; ++g)
        for (const char* k : {"yes", "no"})
            for (const char* c : {"yes", "no"}) {
                json f = {{"has_k_point", k}};
                if (g == 1) f["positive_rank"] = c;
                else f["has_degree3_point"] = c;
                if (std::string(k) == "no") f["index"] = g == 1 ? 2 : 1;
                CurveInput in = facts_curve(g, f);
                try {
                    derive_facts(in);
                } catch (FactError&) {
                    continue;
                }
                BoundResult r = delta_curve(in.facts);
                CHECK(equals_on_window(r.lower, DegreeSet::saturate(r.lower), W));
            }
}

TEST_CASE("assumption tags are reported") {
    BoundResult plain = delta_product(fx("3872.f4"), fx("16928.c1"), {});
    bool skipped = false;
    for (auto& t : plain.trace)
        if (t.rule == "ee.parity") {
            CHECK(t.status == "skipped");
            CHECK(t.assumptions == std::vector<std::string>{"ParityConjecture"});
            skipped = true;
        }
    CHECK(skipped);
    CHECK(plain.assumptions.empty());
    EngineOptions opt;
    opt.assume = {"ParityConjecture"};
    BoundResult cond = delta_product(fx("3872.f4"), fx("16928.c1"), {}, opt);
    CHECK(fired(cond, "ee.parity"));
    CHECK(cond.assumptions.count("ParityConjecture"));
    CHECK(cond.to_json()["trace"].size() == cond.trace.size());
}

TEST_CASE("quadratic certificate and its mutations") {
    auto C = *fx("thin2.C").model, D = *fx("thin2.D").model;
    json cert = {{"field", -1},
                 {"rank_zero", {{"C", true}, {"D", true}}},
                 {"witness", {{"C", {{"x", {0, 1}}, {"y", {0, 0}}}}, {"D", {{"x", {0, 1}}, {"y", {0, 0}}}}}}};
    CHECK(nondensity_quadratic_certificate(C, D, cert).verified);

    json m = cert;
    m["field"] = -2;
    CHECK_FALSE(nondensity_quadratic_certificate(C, D, m).verified);
    m = cert;
    m["witness"]["D"]["x"] = {1, 1};
    CHECK_FALSE(nondensity_quadratic_certificate(C, D, m).verified);
    m = cert;
    m["rank_zero"]["D"] = false;
    auto rep = nondensity_quadratic_certificate(C, D, m);
    CHECK_FALSE(rep.verified);
    CHECK(rep.reason == "check 'rank_zero_asserted' failed");
    // a curve with real points breaks the real-points check
    CHECK_FALSE(nondensity_quadratic_certificate(*fx("obstr2.C").model, D, cert).verified);
    m = cert;
    m.erase("rank_zero");
    CHECK_THROWS_AS(nondensity_quadratic_certificate(C, D, m), NeedsFact);
}

TEST_CASE("cubic certificate and its mutations") {
    auto C = *fx("thin3.C").model, D = *fx("thin3.D").model;
    json cert = {{"cubic_factor_C", {-1, -6, 0, 1}}, {"cubic_section_D", {1, 1, 0, 1}}, {"unique_degree3_maps", true}};
    auto rep = nondensity_cubic_certificate(C, D, cert);
    CHECK(rep.verified);
    INFO(rep.to_json().dump());

    json m = cert;
    m["cubic_factor_C"] = {1, -6, 0, 1};
    CHECK_FALSE(nondensity_cubic_certificate(C, D, m).verified);
    m = cert;
    m["cubic_section_D"] = {1, 2, 0, 1};
    CHECK_FALSE(nondensity_cubic_certificate(C, D, m).verified);
    m = cert;
    m["unique_degree3_maps"] = false;
    CHECK_FALSE(nondensity_cubic_certificate(C, D, m).verified);
    m = cert;
    m.erase("unique_degree3_maps");
    CHECK_THROWS_AS(nondensity_cubic_certificate(C, D, m), NeedsFact);
}

TEST_CASE("cubic fiber discriminants match the reference polynomials") {
    auto C = *fx("thin3.C").model, D = *fx("thin3.D").model;
    Poly dc = discriminant_t(cubic_fiber_C(C, Poly({-1, -6, 0, 1})));
    Poly dd = discriminant_t(cubic_fiber_D(D, Poly({1, 1, 0, 1})));
    Poly pc({756, 0, 3348, 0, 5265, 0, 3510, 0, 837});
    Poly pd({0, 0, -108, 432, -280, -432, -108});
    INFO(dc.to_string("t"));
    INFO(dd.to_string("t"));
    // equal up to a rational square
    CHECK(dc * pc.lc() == pc * dc.lc());
    CHECK(rational_square(dc.lc() / pc.lc()));
    CHECK(dd * pd.lc() == pd * dd.lc());
    CHECK(rational_square(dd.lc() / pd.lc()));
}

TEST_CASE("rule roster") {
    std::set<std::string> ids;
    std::regex numbered(R"((theorem|lemma|proposition|corollary|section|remark|table|eq\.)\s*\d)",
                        std::regex::icase);
    for (auto& r : rule_roster()) {
        CHECK(ids.insert(r.id).second);
        CHECK_FALSE(r.anchor.empty());
        CHECK_FALSE(std::regex_search(r.anchor, numbered));
        for (auto& a : r.assumptions) CHECK(known_assumptions().count(a));
    }
    CHECK(ids.size() >= 50);
    CHECK_THROWS(rule_info("no.such.rule"));
}

TEST_CASE("Jacobians, bielliptic and abelian surfaces") {
    auto jac = [](json f) {
        CurveInput c = facts_curve(2, f);
        derive_facts(c);
        return delta_jacobian_genus2(c.facts);
    };
    BoundResult zero = jac({{"jacobian_rank_zero", "yes"}, {"index", 1}});
    CHECK(equals_on_window(zero.lower, DegreeSet::naturals_from(2), W));
    CHECK_FALSE(zero.upper.contains(1));
    BoundResult simple = jac({{"jacobian_rank_zero", "no"}, {"jacobian_simple", "yes"}});
    CHECK(simple.exact);
    CHECK(simple.lower.contains(1));
    CHECK_THROWS_AS(jac({{"index", 1}}), NeedsFact);

    BiellipticFacts bf;
    bf.rank_growth_on_halving_fields = Tri::No;
    BoundResult b = delta_bielliptic(fx("65.a1"), fx("14.a5"), bf);
    CHECK_FALSE(b.upper.contains(1));
    CHECK(b.lower.contains(3));

    AbelianInput a;
    a.kind = "product";
    a.curves = {fx("65.a1"), fx("14.a5")};
    CHECK_THROWS_AS(delta_abelian_transfer(a), NeedsFact);
    a.isogenous = Tri::Yes;
    BoundResult t = delta_abelian_transfer(a);
    CHECK(fired(t, "abelian.isogeny_transfer"));
    CHECK(equals_on_window(t.lower, delta_product(a.curves[0], a.curves[1], {}).lower, W));
}

TEST_CASE("potential density") {
    BoundResult p = potential_product(fx("249.a.6723.1"), fx("256.a.512.1"), {});
    CHECK(equals_on_window(p.lower, from_except(2, {2, 3, 5}), W));
    BoundResult low = potential_product(fx("65.a1"), fx("249.a.6723.1"), {});
    CHECK(low.exact);
    CHECK(equals_on_window(low.lower, DegreeSet::naturals_from(2), W));
}

TEST_CASE("strict and lenient modes") {
    CurveInput bare = facts_curve(2, json::object(), "bare");
    CHECK_THROWS_AS(delta_product(bare, fx("cell.A"), {}), NeedsFact);
    EngineOptions lenient;
    lenient.strict = false;
    BoundResult r = delta_product(bare, fx("cell.A"), {}, lenient);
    bool skip = false;
    for (auto& t : r.trace) skip = skip || t.status == "skipped";
    CHECK(skip);
    CHECK(subset_on_window(r.lower, r.upper, W));
}

TEST_CASE("request evaluation by label") {
    EngineOptions opt;
    BoundResult r = evaluate_request("product", {{"C", "65.a1"}, {"D", "14.a5"}}, opt, testsupport::fixtures()["curves"]);
    CHECK(r.exact);
    CHECK_THROWS_AS(evaluate_request("nonsense", json::object(), opt), SchemaError);
    CHECK(equals_on_window(parse_set_spec({{"step", 2}, {"from", 4}, {"with", {2}}}),
                           DegreeSet::unite(DegreeSet::tail(2, 4), DegreeSet::finite({2})), W));
}
