#include "reconv/series.hpp"

#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

using reconv::Rational;
using reconv::TruncatedSeries;

namespace {

// Independent O(D^2) convolution oracle, kept separate from the series
// implementation on purpose.
std::vector<Rational> naive_convolution(const std::vector<Rational>& a,
                                        const std::vector<Rational>& b, std::size_t bound) {
    std::vector<Rational> out(bound + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i + j <= bound) {
                out[i + j] += a[i] * b[j];
            }
        }
    }
    return out;
}

TruncatedSeries make(std::size_t bound, std::vector<int> ints) {
    std::vector<Rational> coeffs;
    coeffs.reserve(ints.size());
    for (const int v : ints) {
        coeffs.emplace_back(v);
    }
    return TruncatedSeries(bound, std::move(coeffs));
}

TruncatedSeries random_series(testgen::Rng& rng, std::size_t bound) {
    return TruncatedSeries(bound, testgen::random_rationals(rng, bound + 1, -5, 5, 3));
}

}  // namespace

TEST_CASE("addition") {
    CHECK((make(1, {1, 1}) + make(1, {1, -1})) == make(1, {2, 0}));
    const TruncatedSeries zero(3);
    const TruncatedSeries s = make(3, {1, 2, 3, 4});
    CHECK(zero + s == s);
    CHECK((make(1, {1, 2}) + make(1, {3, 4})) == make(1, {4, 6}));
}

TEST_CASE("mismatched degree bounds are usage errors") {
    CHECK_THROWS_AS(make(1, {1}) + make(2, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make(1, {1}) * make(2, {1}), std::invalid_argument);
    CHECK_THROWS_AS(make(1, {1}) - make(2, {1}), std::invalid_argument);
}

TEST_CASE("multiplication truncates exactly") {
    // (1 - x) * (1 + x + ... + x^D) telescopes to 1 after truncation.
    const std::size_t bound = 9;
    const TruncatedSeries geometric(bound, std::vector<Rational>(bound + 1, Rational(1)));
    const TruncatedSeries one_minus_x = make(bound, {1, -1});
    const TruncatedSeries product = one_minus_x * geometric;
    CHECK(product.coeff(0) == Rational(1));
    for (std::size_t i = 1; i <= bound; ++i) {
        CHECK(product.coeff(i) == Rational(0));
    }

    const TruncatedSeries s = make(4, {7, 0, -2, 1, 5});
    const TruncatedSeries one = make(4, {1});
    CHECK(one * s == s);

    // (1 - x - x^2) * (0 + x + x^2 + 2x^3), truncated at 4 and at 5.
    const TruncatedSeries product4 = make(4, {1, -1, -1}) * make(4, {0, 1, 1, 2});
    CHECK(product4 == make(4, {0, 1, 0, 0, -3}));
    const TruncatedSeries product5 = make(5, {1, -1, -1}) * make(5, {0, 1, 1, 2});
    CHECK(product5 == make(5, {0, 1, 0, 0, -3, -2}));
}

TEST_CASE("coefficient access") {
    const TruncatedSeries product = make(4, {1, -1, -1}) * make(4, {0, 1, 1, 2});
    CHECK(product.coeff(4) == Rational(-3));
    CHECK(product.coeff(0) == Rational(0));
    const TruncatedSeries zero(6);
    for (std::size_t i = 0; i <= 6; ++i) {
        CHECK(zero.coeff(i) == Rational(0));
    }
    CHECK_THROWS_AS(zero.coeff(7), std::invalid_argument);
}

TEST_CASE("ring laws hold exactly under truncation") {
    testgen::Rng rng(20240812);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t bound = 1 + static_cast<std::size_t>(rng() % 6);
        const TruncatedSeries a = random_series(rng, bound);
        const TruncatedSeries b = random_series(rng, bound);
        const TruncatedSeries c = random_series(rng, bound);
        REQUIRE(a + b == b + a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("multiplication agrees with the naive convolution oracle") {
    testgen::Rng rng(20240813);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t bound = 1 + static_cast<std::size_t>(rng() % 8);
        const TruncatedSeries a = random_series(rng, bound);
        const TruncatedSeries b = random_series(rng, bound);
        const TruncatedSeries product = a * b;
        const std::vector<Rational> expected = naive_convolution(a.coeffs(), b.coeffs(), bound);
        REQUIRE(product.coeffs() == expected);
        for (const Rational& coeff : product.coeffs()) {
            REQUIRE(coeff.denominator() > 0);
            REQUIRE(boost::multiprecision::gcd(coeff.numerator(), coeff.denominator()) == 1);
        }
    }
}

TEST_CASE("construction pads and validates") {
    const TruncatedSeries s(3, {Rational(1)});
    CHECK(s.coeff(0) == Rational(1));
    CHECK(s.coeff(3) == Rational(0));
    CHECK_THROWS_AS(TruncatedSeries(1, {Rational(1), Rational(2), Rational(3)}),
                    std::invalid_argument);
}
