#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <random>

#include "nrs/polyarith.hpp"
#include "test_util.hpp"

using namespace nrs;
using namespace nrs::testutil;

TEST_CASE("rational parsing and formatting") {
    CHECK(to_string(rational_from_string("6/4")) == "3/2");
    CHECK(to_string(rational_from_string("-12/4")) == "-3");
    CHECK(rational_from_string("7") == Rational(7));
    CHECK_THROWS_AS(rational_from_string("1/0"), InvalidInput);
    CHECK_THROWS_AS(rational_from_string("x"), InvalidInput);
    CHECK(rational_from_double(0.5) == Q(1, 2));
}

TEST_CASE("poly basics") {
    Poly<Rational> f = rpoly({-1, 0, 1});  // z^2 - 1
    CHECK(f.degree() == 2);
    CHECK(f.is_monic());
    CHECK(f.derivative() == rpoly({0, 2}));
    CHECK(f.eval<Rational>(Q(3)) == Q(8));

    auto [quo, rem] = divmod(rpoly({-1, 0, 0, 1}), rpoly({-1, 1}));  // z^3-1 by z-1
    CHECK(quo == rpoly({1, 1, 1}));
    CHECK(rem.is_zero());

    CHECK(poly_from_roots<Rational>({Q(1), Q(2), Q(3)}) == rpoly({-6, 11, -6, 1}));
}

TEST_CASE("gcd_subresultant worked examples") {
    // (z^2-1, z^3-z) -> z^2-1
    CHECK(gcd_subresultant(rpoly({-1, 0, 1}), rpoly({0, -1, 0, 1})) == rpoly({-1, 0, 1}));
    // (z^2+1, z^2-1) -> 1
    CHECK(gcd_subresultant(rpoly({1, 0, 1}), rpoly({-1, 0, 1})) == Poly<Rational>::one());
    // (z^4-2z^2+1, z^3-z) = ((z^2-1)^2, z(z-1)(z+1)) -> z^2-1
    CHECK(gcd_subresultant(rpoly({1, 0, -2, 0, 1}), rpoly({0, -1, 0, 1})) == rpoly({-1, 0, 1}));
    CHECK_THROWS_AS(gcd_subresultant(Poly<Rational>::zero(), Poly<Rational>::zero()), InvalidInput);
}

TEST_CASE("gcd over Gaussian rationals") {
    // z^2 + 1 = (z-i)(z+i); shares (z-i) with z-i.
    Poly<GaussRational> f = gpoly({{1, 0}, {0, 0}, {1, 0}});
    Poly<GaussRational> g = gpoly({{0, -1}, {1, 0}});
    CHECK(gcd_subresultant(f, g) == g.monic());
    // Coprime pair.
    Poly<GaussRational> h = gpoly({{0, 1}, {1, 0}});  // z + i
    Poly<GaussRational> k = gpoly({{1, 1}, {1, 0}});  // z + 1 + i
    CHECK(gcd_subresultant(h, k).degree() == 0);
}

TEST_CASE("gcd properties: planted factors, symmetry, scaling") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        Poly<Rational> f = random_monic(deg(rng), rng);
        Poly<Rational> g = random_monic(deg(rng), rng);
        Poly<Rational> h = random_monic(deg(rng), rng);
        Poly<Rational> gh = gcd_subresultant(f * h, g * h);
        CAPTURE(trial);
        REQUIRE(divides(gh, f * h));
        REQUIRE(divides(gh, g * h));
        REQUIRE(divides(squarefree_part(h), gh));
        REQUIRE(divides(h, gh));
        // Symmetry and scale invariance (monic output makes them exact).
        REQUIRE(gcd_subresultant(g * h, f * h) == gh);
        REQUIRE(gcd_subresultant(Q(3, 7) * (f * h), Q(-2) * (g * h)) == gh);
    }
}

TEST_CASE("squarefree_part") {
    // (z-1)^2 (z+2) -> (z-1)(z+2)
    Poly<Rational> f = rpoly({-1, 1}) * rpoly({-1, 1}) * rpoly({2, 1});
    CHECK(squarefree_part(f) == rpoly({-1, 1}) * rpoly({2, 1}));
    CHECK(squarefree_part(rpoly({1, 0, 1})) == rpoly({1, 0, 1}));
    Poly<Rational> g = rpoly({4, 0, 1}) * rpoly({4, 0, 1});  // (z^2+4)^2
    CHECK(squarefree_part(g) == rpoly({4, 0, 1}));
    CHECK_THROWS_AS(squarefree_part(Poly<Rational>::zero()), InvalidInput);
}

TEST_CASE("sturm_count worked examples") {
    CHECK(sturm_count(rpoly({0, -1, 0, 1}), Interval{Q(-2), Q(2)}) == 3);  // z^3 - z
    CHECK(sturm_count(rpoly({1, 0, 1})) == 0);                             // z^2 + 1
    CHECK(sturm_count(rpoly({1, -3, 0, 1})) == 3);  // z^3 - 3z + 1, discriminant 81 > 0
    CHECK(sturm_count(rpoly({-2, 0, 1})) == 2);     // z^2 - 2: irrational roots
    CHECK(sturm_count(rpoly({-2, 0, 1}), Interval{Q(0), Q(2)}) == 1);
    CHECK_THROWS_AS(sturm_count(Poly<Rational>::zero()), InvalidInput);
    // Non-squarefree input is a contract violation, not a miscount.
    CHECK_THROWS_AS(sturm_count(rpoly({-1, 1}) * rpoly({-1, 1})), ContractViolation);
}

TEST_CASE("roots_numeric worked examples") {
    auto r1 = roots_numeric(rpoly({1, 0, 1}), 1e-10);
    REQUIRE(r1.size() == 2);
    std::sort(r1.begin(), r1.end(), [](auto a, auto b) { return a.imag() < b.imag(); });
    CHECK(std::abs(r1[0] - std::complex<double>(0, -1)) < 1e-10);
    CHECK(std::abs(r1[1] - std::complex<double>(0, 1)) < 1e-10);

    auto r2 = roots_numeric(rpoly({-6, 11, -6, 1}), 1e-10);
    std::sort(r2.begin(), r2.end(), [](auto a, auto b) { return a.real() < b.real(); });
    CHECK(std::abs(r2[0] - 1.0) < 1e-9);
    CHECK(std::abs(r2[1] - 2.0) < 1e-9);
    CHECK(std::abs(r2[2] - 3.0) < 1e-9);
}

TEST_CASE("roots_numeric residual oracle on random +-1 polynomials") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> c(11);
        for (int i = 0; i < 10; ++i) c[static_cast<std::size_t>(i)] = coin(rng) ? 1 : -1;
        c[10] = 1;
        Poly<Rational> f(std::move(c));
        auto roots = roots_numeric(f, 1e-8);
        REQUIRE(roots.size() == 10);
        auto cd = to_complex_coeffs(f);
        for (const auto& r : roots) {
            std::complex<double> acc = 0;
            for (auto it = cd.rbegin(); it != cd.rend(); ++it) acc = acc * r + *it;
            CHECK(std::abs(acc) / std::pow(1.0 + std::abs(r), 10) <= 1e-8);
        }
    }
}

TEST_CASE("sturm count + conjugate pairs account for the full degree") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(2, 9);
    int done = 0;
    for (int trial = 0; done < 1000 && trial < 4000; ++trial) {
        Poly<Rational> f = random_monic(deg(rng), rng);
        if (gcd_subresultant(f, f.derivative()).degree() != 0) continue;  // keep squarefree
        ++done;
        const int reals = sturm_count(f);
        auto roots = roots_numeric(f, 1e-8);
        int complex_count = 0;
        for (const auto& r : roots)
            if (std::abs(r.imag()) > 1e-6) ++complex_count;
        CAPTURE(trial);
        REQUIRE(complex_count % 2 == 0);
        REQUIRE(reals + complex_count == f.degree());
    }
    CHECK(done == 1000);
}

TEST_CASE("conjugating coefficients conjugates the numeric roots") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<GaussRational> c(6);
        for (int i = 0; i < 5; ++i)
            c[static_cast<std::size_t>(i)] = GaussRational(Rational(dist(rng)), Rational(dist(rng)));
        c[5] = GaussRational(Rational(1));
        Poly<GaussRational> f(std::move(c));
        auto roots = roots_numeric(f, 1e-8);
        auto conj_roots = roots_numeric(conj(f), 1e-8);
        for (auto& r : conj_roots) r = std::conj(r);
        // Multisets must match within tolerance.
        std::vector<bool> used(roots.size(), false);
        for (const auto& r : roots) {
            double best = 1e9;
            std::size_t arg = 0;
            for (std::size_t i = 0; i < conj_roots.size(); ++i) {
                if (used[i]) continue;
                if (std::abs(conj_roots[i] - r) < best) {
                    best = std::abs(conj_roots[i] - r);
                    arg = i;
                }
            }
            used[arg] = true;
            REQUIRE(best < 1e-6);
        }
    }
}

TEST_CASE("roots_numeric handles multiple roots by clustering") {
    // (z-1)^3 (z+2)
    Poly<Rational> f = pow(rpoly({-1, 1}), 3) * rpoly({2, 1});
    auto roots = roots_numeric(f, 1e-6);
    int near_one = 0;
    for (const auto& r : roots)
        if (std::abs(r - 1.0) < 1e-3) ++near_one;
    CHECK(near_one == 3);
}
