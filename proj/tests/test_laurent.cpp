#include <catch2/catch_amalgamated.hpp>

#include "clusterbox/laurent.hpp"
#include "test_support.hpp"

using namespace clusterbox;
using testsup::poly;

TEST_CASE("basic ring operations", "[laurent]") {
    const auto x1 = LaurentPolynomial::variable(2, 1);
    const auto x2 = LaurentPolynomial::variable(2, 2);

    REQUIRE(add(x1, -x1).is_zero());
    REQUIRE(mul(x1 + x2, x1 - x2) == poly(2, {{{2, 0}, "1"}, {{0, 2}, "-1"}}));
    REQUIRE(mul(poly(2, {{{-1, 0}, "1"}}), x1) == LaurentPolynomial::constant(2, 1));
}

TEST_CASE("variable-count mismatch is rejected", "[laurent]") {
    REQUIRE_THROWS_AS(add(LaurentPolynomial::variable(2, 1), LaurentPolynomial::variable(3, 1)),
                      std::invalid_argument);
}

TEST_CASE("exact division", "[laurent]") {
    const auto x1 = LaurentPolynomial::variable(2, 1);
    const auto x2 = LaurentPolynomial::variable(2, 2);

    REQUIRE(exact_div(mul(x1 + x2, x1 - x2), x1 - x2) == x1 + x2);
    REQUIRE(exact_div(LaurentPolynomial::constant(2, 1) + x2, x1) ==
            poly(2, {{{-1, 1}, "1"}, {{-1, 0}, "1"}}));
    REQUIRE_THROWS_AS(exact_div(LaurentPolynomial::constant(2, 1) + x1, LaurentPolynomial::constant(2, 1) + x2),
                      InexactDivisionError);
    REQUIRE_THROWS_AS(exact_div(x1, LaurentPolynomial::zero(2)), std::invalid_argument);
    REQUIRE(exact_div(LaurentPolynomial::zero(2), x1).is_zero());
    // coefficient divisibility matters for monomial divisors
    REQUIRE(exact_div(poly(1, {{{1}, "6"}}), poly(1, {{{0}, "3"}})) == poly(1, {{{1}, "2"}}));
    REQUIRE_THROWS_AS(exact_div(poly(1, {{{1}, "3"}}), poly(1, {{{0}, "2"}})), InexactDivisionError);
}

TEST_CASE("exponent bounding box", "[laurent]") {
    const auto f = poly(2, {{{-1, 0}, "1"}, {{-1, 1}, "1"}});
    REQUIRE(f.min_exponents() == ExponentVector{-1, 0});
    REQUIRE(f.max_exponents() == ExponentVector{-1, 1});

    const auto g = LaurentPolynomial::variable(2, 1);
    REQUIRE(g.min_exponents() == ExponentVector{1, 0});
    REQUIRE(g.max_exponents() == ExponentVector{1, 0});

    const auto one = LaurentPolynomial::constant(2, 1);
    REQUIRE(one.min_exponents() == ExponentVector{0, 0});
    REQUIRE(one.max_exponents() == ExponentVector{0, 0});

    REQUIRE_THROWS_AS(LaurentPolynomial::zero(2).min_exponents(), std::domain_error);
}

TEST_CASE("evaluation at ones", "[laurent]") {
    REQUIRE((LaurentPolynomial::variable(2, 1) + LaurentPolynomial::variable(2, 2)).evaluate_at_ones() == 2);
    REQUIRE(poly(2, {{{-1, 0}, "1"}, {{-1, 1}, "1"}}).evaluate_at_ones() == 2);
    REQUIRE(LaurentPolynomial::zero(2).evaluate_at_ones() == 0);
}

TEST_CASE("canonical printing", "[laurent]") {
    REQUIRE(poly(2, {{{-1, 0}, "1"}, {{-1, 1}, "1"}}).to_string() == "x1^-1*x2 + x1^-1");
    REQUIRE(LaurentPolynomial::zero(2).to_string() == "0");
    REQUIRE(poly(2, {{{0, 0}, "-3"}, {{2, 1}, "5"}}).to_string() == "5*x1^2*x2 - 3");
}

TEST_CASE("ring axioms on random polynomials", "[laurent]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto f = testsup::random_poly(rng, n, 5, 3);
        const auto g = testsup::random_poly(rng, n, 5, 3);
        const auto h = testsup::random_poly(rng, n, 5, 3);
        REQUIRE(mul(f, g) == mul(g, f));
        REQUIRE(mul(mul(f, g), h) == mul(f, mul(g, h)));
        REQUIRE(mul(f, add(g, h)) == add(mul(f, g), mul(f, h)));
    }
}

TEST_CASE("division round-trips products", "[laurent]") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto f = testsup::random_poly(rng, n, 6, 3);
        const auto g = testsup::random_nonzero_poly(rng, n, 6, 3);
        const auto prod = mul(f, g);
        REQUIRE(exact_div(prod, g) == f);
        if (!f.is_zero()) REQUIRE(mul(exact_div(prod, f), f) == prod);
    }
}

TEST_CASE("highest and lowest powers are additive under products", "[laurent]") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const bool nonneg = trial % 2 == 0;
        const auto f = testsup::random_nonzero_poly(rng, n, 6, 3, nonneg);
        const auto g = testsup::random_nonzero_poly(rng, n, 6, 3, nonneg);
        const auto prod = mul(f, g);
        REQUIRE_FALSE(prod.is_zero());
        ExponentVector hi(static_cast<size_t>(n)), lo(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            hi[static_cast<size_t>(i)] = f.max_exponents()[static_cast<size_t>(i)] + g.max_exponents()[static_cast<size_t>(i)];
            lo[static_cast<size_t>(i)] = f.min_exponents()[static_cast<size_t>(i)] + g.min_exponents()[static_cast<size_t>(i)];
        }
        REQUIRE(prod.max_exponents() == hi);
        REQUIRE(prod.min_exponents() == lo);
    }
}

TEST_CASE("highest powers of an exact quotient", "[laurent]") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto p = testsup::random_nonzero_poly(rng, n, 6, 3);
        const auto g = testsup::random_nonzero_poly(rng, n, 6, 3);
        const auto f = mul(p, g);
        for (int i = 0; i < n; ++i) {
            REQUIRE(p.max_exponents()[static_cast<size_t>(i)] ==
                    f.max_exponents()[static_cast<size_t>(i)] - g.max_exponents()[static_cast<size_t>(i)]);
        }
    }
}

TEST_CASE("the two multiplication routes agree", "[laurent]") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto f = testsup::random_nonzero_poly(rng, n, 8, 4);
        const auto g = testsup::random_nonzero_poly(rng, n, 8, 4);
        const auto naive = laurent_detail::mul_naive(f, g);
        const auto packed = laurent_detail::mul_kronecker(f, g);
        REQUIRE(packed.has_value());
        REQUIRE(*packed == naive);
    }
}

TEST_CASE("the two division routes agree on exact quotients", "[laurent]") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto q = testsup::random_nonzero_poly(rng, n, 6, 3);
        auto g = testsup::random_nonzero_poly(rng, n, 6, 3);
        while (g.term_count() < 2) g = testsup::random_nonzero_poly(rng, n, 6, 3);
        const auto f = mul(q, g);
        const auto by_long_division = laurent_detail::exact_div_long(f, g);
        REQUIRE(by_long_division == q);
        const auto by_kronecker = laurent_detail::exact_div_kronecker(f, g);
        REQUIRE(by_kronecker.has_value());
        REQUIRE(*by_kronecker == q);
    }
}

TEST_CASE("powers by repeated squaring", "[laurent]") {
    std::mt19937_64 rng(41);
    const auto f = testsup::random_nonzero_poly(rng, 2, 4, 2);
    REQUIRE(pow(f, 0) == LaurentPolynomial::constant(2, 1));
    REQUIRE(pow(f, 1) == f);
    REQUIRE(pow(f, 3) == mul(f, mul(f, f)));
}

TEST_CASE("non-divisible input is rejected on the packed route too", "[laurent]") {
    // wide exponent boxes push the dispatch past the long-division threshold
    std::mt19937_64 rng(53);
    const auto q = testsup::random_nonzero_poly(rng, 2, 40, 60, true);
    auto g = testsup::random_nonzero_poly(rng, 2, 40, 60, true);
    while (g.term_count() < 2) g = testsup::random_nonzero_poly(rng, 2, 40, 60, true);
    const auto f = add(mul(q, g), LaurentPolynomial::constant(2, 1));
    REQUIRE_THROWS_AS(exact_div(f, g), InexactDivisionError);
    REQUIRE(exact_div(mul(q, g), g) == q);
}

TEST_CASE("big coefficients survive the packed routes", "[laurent]") {
    // coefficients far beyond 64 bits
    const auto big = poly(2, {{{0, 0}, "123456789012345678901234567890"}, {{1, 1}, "-987654321098765432109876543210"}});
    const auto g = poly(2, {{{0, 1}, "3"}, {{2, 0}, "7"}, {{1, 1}, "-11"}});
    const auto prod = mul(big, g);
    const auto packed = laurent_detail::mul_kronecker(big, g);
    REQUIRE(packed.has_value());
    REQUIRE(*packed == prod);
    REQUIRE(exact_div(prod, g) == big);
}
