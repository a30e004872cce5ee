#include <doctest.h>

#include "densdeg/local.hpp"
#include "oracles.hpp"

using namespace densdeg;
using oracles::q3_oracle;
using testsupport::uniform;

TEST_CASE("Q_3 solver agrees with a brute-force oracle mod 3^6") {
    LocalField q3{3, 1, 1, 0};
    int decided = 0, none = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<long> c(7);
        for (auto& x : c) x = uniform(-9, 9);
        // bias toward obstructed curves: half the time make F = 3 * (unit
        // non-square pattern) + noise divisible by 9
        if (t % 2) {
            for (auto& x : c) x = 9 * uniform(-2, 2);
            c[0] = 3 * (uniform(0, 1) ? 1 : -1);
            c[6] = 3 * (uniform(0, 1) ? 1 : -1);
        }
        if (c[6] == 0) c[6] = 1;
        std::vector<mpq_class> q(c.begin(), c.end());
        HyperellipticCurve curve{Poly(q)};
        if (!curve.is_nonsingular()) continue;
        int want = q3_oracle(c);
        LocalResult r = has_point_local(curve, q3);
        INFO(Poly(q).to_string());
        if (want == 1) CHECK(r.verdict == Verdict::HasPoint);
        if (want == 0) CHECK(r.verdict == Verdict::NoPoint);
        decided += want != -1;
        none += want == 0;
        if (r.verdict == Verdict::HasPoint) {
            REQUIRE(r.witness);
            CHECK(verify_witness(curve, q3, r.precision, *r.witness));
        }
    }
    CHECK(decided > 50);
    CHECK(none > 5);
}

TEST_CASE("witnesses over extensions verify") {
    HyperellipticCurve c(Poly({-1, 0, -1, 0, -1, 0, -1}));
    for (const LocalField& k : tame_fields(3, 2)) {
        LocalResult r = has_point_local(c, k);
        INFO(k.describe());
        if (r.verdict == Verdict::HasPoint) {
            REQUIRE(r.witness);
            CHECK(verify_witness(c, k, r.precision, *r.witness));
        }
    }
    CHECK(tame_fields(3, 2).size() >= 3);
    CHECK(has_wild_extension(3, 3));
    CHECK_FALSE(has_wild_extension(3, 2));
}

TEST_CASE("obstructed pairs have no common quadratic points over Q_3") {
    auto& fx = testsupport::fixtures();
    auto model = [&](const std::string& l) { return *fixture_curve(fx, l).model; };
    CHECK(quadratic_obstruction(model("obstr2.C"), model("obstr2.D"), 3).holds == Tri::Yes);
    CHECK(quadratic_obstruction(model("obstr3.C"), model("obstr3.D"), 3).holds == Tri::Yes);
    CHECK(surface_qp_empty_mod3(model("thin2.C").completed(), model("thin2.D").completed()));
    CHECK_THROWS_AS(surface_qp_empty_mod3(model("obstr2.C").completed(), model("obstr2.D").completed()), LocalError);
}

TEST_CASE("odd-degree points excluded on 3(x^6 - x^2 + 1)") {
    HyperellipticCurve c(Poly({3, 0, -3, 0, 0, 0, 3}));
    DivisibilityResult r = degree_divisibility(c, 3, 4);
    CHECK(r.local.at(1) == DegreeStatus::Impossible);
    CHECK(r.local.at(2) == DegreeStatus::Possible);
    CHECK(r.global.at(1) == DegreeStatus::Impossible);
    // wild cubic extensions of Q_3 are out of reach, so 3 stays open
    CHECK(r.local.at(3) == DegreeStatus::Unknown);
    CHECK(verify_certificate(r.certificate).ok);
}

TEST_CASE("globalize partitions degrees") {
    std::map<int, DegreeStatus> local = {{1, DegreeStatus::Impossible},
                                         {2, DegreeStatus::Possible},
                                         {3, DegreeStatus::Impossible}};
    auto g = globalize(local, 5);
    CHECK(g.at(1) == DegreeStatus::Impossible);
    CHECK(g.at(2) != DegreeStatus::Impossible);
    CHECK(g.at(3) == DegreeStatus::Impossible);
    CHECK(g.at(4) != DegreeStatus::Impossible);
}

TEST_CASE("tampered certificates fail verification") {
    HyperellipticCurve c(Poly({3, 0, -3, 0, 0, 0, 3}));
    auto r = degree_divisibility(c, 3, 2);
    nlohmann::json cert = r.certificate;
    CHECK(verify_certificate(cert, true).ok);
    std::string s = cert.dump();
    auto pos = s.find("\"impossible\"");
    REQUIRE(pos != std::string::npos);
    s.replace(pos, 12, "\"possible\"");
    CHECK_FALSE(verify_certificate(nlohmann::json::parse(s)).ok);
}
