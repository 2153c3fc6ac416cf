#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nrs/oracle.hpp"
#include "test_util.hpp"

using namespace nrs;
using namespace nrs::testutil;

TEST_CASE("Fox-Neuwirth complex structure") {
    for (int j = 1; j <= 8; ++j) {
        FNComplex fn = FNComplex::build(j);  // asserts d^2 = 0 and cell counts
        std::size_t total = 0;
        for (const auto& cs : fn.cells) total += cs.size();
        CHECK(total == (std::size_t(1) << (j - 1)));
    }
    CHECK_THROWS_AS(FNComplex::build(9), InvalidInput);
    CHECK_THROWS_AS(FNComplex::build(0), InvalidInput);
}

TEST_CASE("Fox-Neuwirth homology worked examples") {
    CHECK(fox_neuwirth_betti(1, 1).dims == std::vector<std::int64_t>{1, 0});
    CHECK(fox_neuwirth_betti(2, 2).dims == std::vector<std::int64_t>{1, 1, 0});
    CHECK(fox_neuwirth_betti(3, 2).dims == std::vector<std::int64_t>{1, 1, 0});
}

TEST_CASE("planted root fuzz flips membership and lands in the right stratum") {
    struct Cell { int m, n; };
    for (Cell c : {Cell{1, 2}, Cell{2, 1}, Cell{1, 3}, Cell{2, 2}}) {
        const int d = 2 * c.n + 2;
        SampleReport rep = planted_root_fuzz(d, c.m, c.n, 300, 42);
        CAPTURE(c.m);
        CAPTURE(c.n);
        REQUIRE(rep.all_assertions_passed);
        CHECK(rep.trials == 300);
        // Both plant shapes occur.
        bool saw_real = false, saw_pair = false;
        for (const auto& [ij, count] : rep.stratum_histogram) {
            if (ij.first >= 1) saw_real = true;
            if (ij.second >= 1) saw_pair = true;
            CHECK(count > 0);
        }
        CHECK(saw_real);
        CHECK(saw_pair);
    }
    CHECK_THROWS_AS(planted_root_fuzz(1, 1, 2, 10, 1), InvalidInput);
}

TEST_CASE("unplanted draws are members at rate ~1 and exceptions certify") {
    MemberRateReport rep = member_rate_experiment(4, 2, 2, 4000, 7);
    CHECK(rep.uncertified_nonmembers == 0);
    CHECK(rep.members + rep.genuine_nonmembers == rep.trials);
    CHECK(rep.members >= rep.trials - rep.trials / 100);  // >= 99%
}

TEST_CASE("certify_nonmember") {
    // Planted (z-1)^2 in both slots.
    Poly<Rational> plant = pow(rpoly({-1, 1}), 2);
    System sys = make_system(SpaceId{Family::PolyR, 3, 2, 2},
                             {plant * rpoly({5, 1}), plant * rpoly({7, 1})});
    CHECK(certify_nonmember(sys));
    // A member has no certificate.
    System good = make_system(SpaceId{Family::PolyR, 1, 2, 1}, {rpoly({0, 1}), rpoly({-1, 1})});
    CHECK_FALSE(certify_nonmember(good));
}

TEST_CASE("random_member reports its rejections") {
    std::mt19937_64 rng(3);
    int rejections = -1;
    System sys = random_member(SpaceId{Family::PolyR, 3, 2, 1}, rng, &rejections);
    CHECK(is_member(sys));
    CHECK(rejections >= 0);
}

TEST_CASE("segment discriminant root counting") {
    // z^2+1 -> z^2-1 crosses the discriminant exactly once (at t = 1/2).
    CHECK(segment_discriminant_roots(rpoly({1, 0, 1}), rpoly({-1, 0, 1})) == 1);
    // Two nearby all-real configurations: no crossing.
    Poly<Rational> f0 = rpoly({-1, 1}) * rpoly({1, 1});
    Poly<Rational> f1 = rpoly({-2, 1}) * rpoly({2, 1});
    CHECK(segment_discriminant_roots(f0, f1) == 0);
    CHECK_THROWS_AS(segment_discriminant_roots(rpoly({0, 1}), rpoly({1, 0, 1})), InvalidInput);
}

TEST_CASE("pi0 experiment at small degrees") {
    for (int d : {1, 2, 3, 5}) {
        Pi0Report rep = pi0_experiment_12(d, 500, 11, 20);
        CAPTURE(d);
        REQUIRE(rep.all_labels_seen);
        REQUIRE(rep.label_mismatches == 0);
        REQUIRE(rep.label_violations == 0);
        CHECK(static_cast<int>(rep.histogram.size()) == d / 2 + 1);
        int total = 0;
        for (int c : rep.histogram) total += c;
        CHECK(total == rep.trials);
        CHECK(rep.paths_checked > 0);
    }
}

TEST_CASE("pi0 histograms never leave the label range") {
    Pi0Report rep = pi0_experiment_12(6, 2000, 13, 10);
    CHECK(static_cast<int>(rep.histogram.size()) == 4);
    CHECK(rep.label_mismatches == 0);
}
