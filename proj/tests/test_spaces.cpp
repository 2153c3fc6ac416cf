#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "nrs/spaces.hpp"
#include "test_util.hpp"

using namespace nrs;
using namespace nrs::testutil;

namespace {

System sys_of(Family fam, int d, int m, int n, std::vector<Poly<Rational>> polys) {
    return make_system(SpaceId{fam, d, m, n}, std::move(polys));
}

}  // namespace

TEST_CASE("jet tuples") {
    // m=1, n=2, f=z^3 -> (z^3, z^3+3z^2)
    auto jets = jet_tuple(rpoly({0, 0, 0, 1}), 2);
    REQUIRE(jets.size() == 2);
    CHECK(jets[0] == rpoly({0, 0, 0, 1}));
    CHECK(jets[1] == rpoly({0, 0, 3, 1}));
    // n=1 leaves f unchanged.
    CHECK(jet_tuple(rpoly({-1, 0, 1}), 1) == std::vector<Poly<Rational>>{rpoly({-1, 0, 1})});
}

TEST_CASE("jet_family over a 2-slot system") {
    // m=2, n=2, f=(z^2, z^2+1) -> (z^2, z^2+2z, z^2+1, z^2+2z+1)
    System sys = sys_of(Family::PolyR, 2, 2, 2, {rpoly({0, 0, 1}), rpoly({1, 0, 1})});
    auto jets = jet_family(sys);
    REQUIRE(jets.size() == 4);
    CHECK(jets[0] == rpoly({0, 0, 1}));
    CHECK(jets[1] == rpoly({0, 2, 1}));
    CHECK(jets[2] == rpoly({1, 0, 1}));
    CHECK(jets[3] == rpoly({1, 2, 1}));
}

TEST_CASE("jet_embedding") {
    // n=3, f=z^3 -> (z^3, z^3+3z^2, z^3+6z)
    System sys = jet_embedding(rpoly({0, 0, 0, 1}), 3);
    CHECK(sys.space.m == 3);
    CHECK(sys.space.n == 1);
    CHECK(sys.real_polys[1] == rpoly({0, 0, 3, 1}));
    CHECK(sys.real_polys[2] == rpoly({0, 6, 0, 1}));
    // n=2, f=z^4-1 -> (z^4-1, z^4+4z^3-1)
    System s2 = jet_embedding(rpoly({-1, 0, 0, 0, 1}), 2);
    CHECK(s2.real_polys[1] == rpoly({-1, 0, 0, 4, 1}));
    // n=2, f=z^2: output has the common root 0, mirroring non-membership.
    System s3 = jet_embedding(rpoly({0, 0, 1}), 2);
    CHECK_FALSE(is_member(s3));
}

TEST_CASE("membership worked examples") {
    // (m,n,d)=(1,2,2), f=z^2: double root at 0.
    CHECK_FALSE(is_member(sys_of(Family::PolyR, 2, 1, 2, {rpoly({0, 0, 1})})));
    // (m,n,d)=(2,1,2), f=(z^2+1, z^2+1): common roots +-i.
    {
        std::vector<Poly<Rational>> polys{rpoly({1, 0, 1}), rpoly({1, 0, 1})};
        System c = make_system(SpaceId{Family::PolyC, 2, 2, 1}, polys);
        CHECK_FALSE(is_member(c));
        System q = make_system(SpaceId{Family::QR, 2, 2, 1}, polys);
        CHECK(is_member(q));
    }
    // (m,n,d)=(1,2,4), f=(z^2+1)^2: nonconstant gcd but no real root.
    {
        Poly<Rational> f = rpoly({1, 0, 1}) * rpoly({1, 0, 1});
        CHECK_FALSE(is_member(sys_of(Family::PolyR, 4, 1, 2, {f})));
        CHECK(is_member(sys_of(Family::QR, 4, 1, 2, {f})));
    }
}

TEST_CASE("d < n makes membership universal") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);  // 2..4
        const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        const int m = 1 + static_cast<int>(rng() % 2);
        std::vector<Poly<Rational>> polys;
        for (int k = 0; k < m; ++k) polys.push_back(random_monic(d, rng));
        CAPTURE(trial);
        REQUIRE(is_member(sys_of(Family::PolyR, d, m, n, polys)));
        REQUIRE(is_member(sys_of(Family::QR, d, m, n, polys)));
        REQUIRE(is_member(make_system(SpaceId{Family::PolyC, d, m, n}, polys)));
    }
}

TEST_CASE("d = n: non-membership exactly at f_1 = ... = f_m = (z - a)^n") {
    // Exhaustive over coefficients in {-1, 0, 1}.
    const long vals[] = {-1, 0, 1};
    auto all_polys = [&](int d) {
        std::vector<Poly<Rational>> out;
        std::vector<long> c(static_cast<std::size_t>(d) + 1, 0);
        c[static_cast<std::size_t>(d)] = 1;
        std::function<void(int)> rec = [&](int idx) {
            if (idx == d) {
                out.push_back(rpoly(std::vector<long>(c.begin(), c.end())));
                return;
            }
            for (long v : vals) {
                c[static_cast<std::size_t>(idx)] = v;
                rec(idx + 1);
            }
        };
        rec(0);
        return out;
    };
    auto is_nth_power_of_linear = [&](const Poly<Rational>& f, int n) {
        Poly<Rational> sf = squarefree_part(f);
        return sf.degree() == 1 && pow(sf, n) == f;
    };

    for (const auto& f : all_polys(2)) {
        bool member = is_member(sys_of(Family::PolyR, 2, 1, 2, {f}));
        CHECK(member == !is_nth_power_of_linear(f, 2));
    }
    for (const auto& f : all_polys(1))
        for (const auto& g : all_polys(1)) {
            bool member = is_member(sys_of(Family::PolyR, 1, 2, 1, {f, g}));
            CHECK(member == (f != g));
        }
    for (const auto& f : all_polys(3)) {
        bool member = is_member(sys_of(Family::PolyR, 3, 1, 3, {f}));
        CHECK(member == !is_nth_power_of_linear(f, 3));
    }
}

TEST_CASE("jet embedding equivalence exhaustively and at random") {
    const long vals[] = {-1, 0, 1};
    for (long a : vals)
        for (long b : vals) {
            Poly<Rational> f = rpoly({b, a, 1});
            CHECK(is_member(sys_of(Family::PolyR, 2, 1, 2, {f})) ==
                  is_member(jet_embedding(f, 2)));
        }
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int d = n + static_cast<int>(rng() % 4);
        Poly<Rational> f = random_monic(d, rng, 4);
        CAPTURE(trial);
        REQUIRE(is_member(sys_of(Family::PolyR, d, 1, n, {f})) ==
                is_member(jet_embedding(f, n)));
    }
}

TEST_CASE("stratum signatures") {
    // (m,n)=(1,2), f=(z-1)^2 (z^2+4)^2, d = 6 -> (1, 1).
    Poly<Rational> f = pow(rpoly({-1, 1}), 2) * pow(rpoly({4, 0, 1}), 2);
    auto sig = stratum_signature(sys_of(Family::PolyR, 6, 1, 2, {f}));
    REQUIRE(sig.has_value());
    CHECK(sig->i == 1);
    CHECK(sig->j == 1);
    CHECK(sig->k() == 2);
    // Root budget invariant n(k + j) <= d.
    CHECK(2 * (sig->k() + sig->j) <= 6);

    // (m,n)=(1,2), f=(z-1)^2 (z-2)^2 -> (2, 0).
    Poly<Rational> g = pow(rpoly({-1, 1}), 2) * pow(rpoly({-2, 1}), 2);
    auto sig2 = stratum_signature(sys_of(Family::PolyR, 4, 1, 2, {g}));
    REQUIRE(sig2.has_value());
    CHECK(*sig2 == StratumSignature{2, 0});

    // Members have no stratum.
    CHECK_FALSE(stratum_signature(sys_of(Family::PolyR, 2, 1, 2, {rpoly({-1, 0, 1})})).has_value());
}

TEST_CASE("(z^2+1, z^2+1) with n=1 sits in stratum (0,1)") {
    std::vector<Poly<Rational>> polys{rpoly({1, 0, 1}), rpoly({1, 0, 1})};
    auto sig = stratum_signature(make_system(SpaceId{Family::QR, 2, 2, 1}, polys));
    REQUIRE(sig.has_value());
    CHECK(*sig == StratumSignature{0, 1});
}

TEST_CASE("conjugation equivariance of Poly_C membership") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> dist(-3, 3);
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 4);
        const int m = 1 + static_cast<int>(rng() % 2);
        const int n = (m == 1) ? 2 : 1 + static_cast<int>(rng() % 2);
        std::vector<Poly<GaussRational>> polys, cpolys;
        bool all_real = true;
        for (int k = 0; k < m; ++k) {
            std::vector<GaussRational> c(static_cast<std::size_t>(d) + 1);
            for (int i = 0; i < d; ++i)
                c[static_cast<std::size_t>(i)] = GaussRational(Rational(dist(rng)), Rational(dist(rng)));
            c[static_cast<std::size_t>(d)] = GaussRational(Rational(1));
            Poly<GaussRational> p(std::move(c));
            polys.push_back(p);
            cpolys.push_back(conj(p));
            for (const auto& x : p.coeffs()) all_real = all_real && x.is_real();
        }
        SpaceId id{Family::PolyC, d, m, n};
        System sys = make_system_gauss(id, polys);
        System csys = make_system_gauss(id, cpolys);
        CAPTURE(trial);
        REQUIRE(is_member(sys) == is_member(csys));
        REQUIRE(has_real_coefficients(sys) == all_real);
    }
}

TEST_CASE("H+ membership definition") {
    // d even: members need every slot free of real roots.
    Poly<Rational> quad = rpoly({1, 0, 1});  // z^2 + 1
    CHECK(is_member(sys_of(Family::PolyRHplus, 2, 1, 2, {quad})));
    CHECK_FALSE(is_member(sys_of(Family::PolyRHplus, 2, 1, 2, {rpoly({-1, 0, 1})})));
    // d odd: slot k must factor as (z - k) h_k with h_k real-root-free.
    Poly<Rational> f1 = rpoly({-1, 1}) * quad;              // (z-1)(z^2+1)
    Poly<Rational> f2 = rpoly({-2, 1}) * rpoly({2, 0, 1});  // (z-2)(z^2+2)
    CHECK(is_member(sys_of(Family::PolyRHplus, 3, 2, 1, {f1, f2})));
    // Wrong anchor: (z-2) in slot 1.
    Poly<Rational> wrong = rpoly({-2, 1}) * quad;
    CHECK_FALSE(is_member(sys_of(Family::PolyRHplus, 3, 2, 1, {wrong, f2})));
}

TEST_CASE("degenerate per-slot degrees") {
    System sys = make_system(SpaceId{Family::PolyR, 2, 2, 1},
                             {rpoly({1, 0, 1}), rpoly({-1, 1})}, {2, 1});
    CHECK(is_member(sys));
    // Planted common root z=1 across mixed degrees.
    System bad = make_system(SpaceId{Family::PolyR, 3, 2, 1},
                             {rpoly({-1, 0, 0, 1}), rpoly({-1, 1})}, {3, 1});
    CHECK_FALSE(is_member(bad));
}

TEST_CASE("system validation") {
    CHECK_THROWS_AS(make_system(SpaceId{Family::PolyR, 1, 1, 1}, {rpoly({0, 1})}), InvalidInput);
    CHECK_THROWS_AS(make_system(SpaceId{Family::PolyR, 2, 1, 2}, {rpoly({0, 1})}), InvalidInput);
    CHECK_THROWS_AS(make_system(SpaceId{Family::PolyR, 1, 2, 1}, {rpoly({0, 1})}), InvalidInput);
    // Non-monic.
    CHECK_THROWS_AS(make_system(SpaceId{Family::PolyR, 1, 1, 2}, {rpoly({0, 2})}), InvalidInput);
}

TEST_CASE("gcd characterization soundness under planted n-fold factors") {
    std::mt19937_64 rng(1357);
    std::uniform_int_distribution<long> dist(-9, 9);
    struct Cell { int d, m, n; };
    for (Cell cell : {Cell{4, 1, 2}, Cell{3, 2, 1}, Cell{6, 2, 2}, Cell{5, 1, 3}}) {
        for (int trial = 0; trial < 1000; ++trial) {
            Rational alpha = make_rational(dist(rng), 1 + static_cast<long>(rng() % 3));
            Poly<Rational> plant = pow(rpoly({0, 1}) - Poly<Rational>(alpha), cell.n);
            std::vector<Poly<Rational>> polys;
            for (int k = 0; k < cell.m; ++k) {
                const int hdeg = cell.d - cell.n;
                Poly<Rational> h = hdeg == 0 ? Poly<Rational>::one() : random_monic(hdeg, rng);
                polys.push_back(plant * h);
            }
            System sys = make_system(SpaceId{Family::PolyR, cell.d, cell.m, cell.n}, polys);
            CAPTURE(trial);
            REQUIRE_FALSE(is_member(sys));
            auto sig = stratum_signature(sys);
            REQUIRE(sig.has_value());
            REQUIRE(sig->i >= 1);
        }
    }
}
