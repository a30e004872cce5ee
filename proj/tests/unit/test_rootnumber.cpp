#include <doctest.h>

#include "densdeg/rootnumber.hpp"
#include "support.hpp"

using namespace densdeg;

TEST_CASE("reduction types") {
    EllipticCurve e11(0, -1, 1, 0, 0);
    CHECK(reduction_type(e11, 11).type == ReductionKind::SplitMultiplicative);
    CHECK(reduction_type(e11, 5).type == ReductionKind::Good);
    CHECK(bad_primes(e11) == std::vector<uint64_t>{11});
    // 14.a: nonsplit at 2, split at 7
    EllipticCurve e14(1, 0, 1, -1, 0);
    CHECK(bad_primes(e14) == std::vector<uint64_t>{2, 7});
    CHECK(reduction_type(e14, 2).type == ReductionKind::NonsplitMultiplicative);
    CHECK(reduction_type(e14, 7).type == ReductionKind::SplitMultiplicative);
    EllipticCurve add(0, 0, 0, 484, 0);
    CHECK(reduction_type(add, 2).type == ReductionKind::Additive);
    // x^3 + x + 1 scaled by u = 2
    EllipticCurve big(0, 0, 0, 16, 64);
    EllipticCurve small(0, 0, 0, 1, 1);
    CHECK(isomorphic_over_q(minimal_model_at(big, 2), small));
}

TEST_CASE("global root numbers of semistable curves") {
    // rank 0 curves of conductor 11 and 14 have root number +1; 37.a has -1
    CHECK(root_number_semistable(EllipticCurve(0, -1, 1, 0, 0)) == 1);
    CHECK(root_number_semistable(EllipticCurve(1, 0, 1, -1, 0)) == 1);
    CHECK(root_number_semistable(EllipticCurve(0, 0, 1, -1, 0)) == -1);
    CHECK_THROWS_AS(root_number_semistable(EllipticCurve(0, 0, 0, 484, 0)), NotSemistable);
}

TEST_CASE("parity twist for the j = 1728 pair") {
    auto& fx = testsupport::fixtures();
    auto e = [&](const std::string& l) { return *EllipticCurve::from_hyperelliptic(*fixture_curve(fx, l).model); };
    ParityTwist t = find_parity_twist(e("3872.f4"), e("16928.c1"));
    CHECK(t.d == -7);
    CHECK(t.root_number_e1 == -1);
    CHECK(t.root_number_e2 == -1);
    CHECK(splitting_quadratic_root_number(e("3872.f4"), -7) == -1);
    CHECK(splitting_quadratic_root_number(e("16928.c1"), -7) == -1);
    for (uint64_t p : t.primes) CHECK(splits_in(t.d, p));
    CHECK(splits_in(-7, 2));
    CHECK_FALSE(splits_in(-7, 3));
}

TEST_CASE("nonprincipal prime check at 17") {
    EllipticCurve e11(0, -1, 1, 0, 0);
    long a17 = 17 + 1 - testsupport::brute_count(e11.as_hyperelliptic(), 17);
    CHECK(a17 == -2);
    CHECK(ap_minimal(e11, 17) == a17);
    CHECK(nonpp_prime_check(e11, 17));
    CHECK_FALSE(nonpp_prime_check(e11, 13));
}

TEST_CASE("Frobenius traces match brute force on minimal models") {
    for (auto e : {EllipticCurve(0, -1, 1, 0, 0), EllipticCurve(1, 0, 1, -1, 0), EllipticCurve(0, 0, 1, -1, 0)}) {
        for (uint64_t p : {3, 5, 11, 13, 17, 19, 23, 29}) {
            if (reduction_type(e, p).type != ReductionKind::Good) continue;
            CHECK(ap_minimal(e, p) == (long)(p + 1) - testsupport::brute_count(e.as_hyperelliptic(), p));
        }
    }
}
