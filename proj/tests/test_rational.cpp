#include "reconv/rational.hpp"

#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <random>

using reconv::BigInt;
using reconv::Rational;

namespace {

bool is_canonical(const Rational& value) {
    if (value.denominator() <= 0) {
        return false;
    }
    if (value.numerator() == 0) {
        return value.denominator() == 1;
    }
    return boost::multiprecision::gcd(value.numerator(), value.denominator()) == 1;
}

}  // namespace

TEST_CASE("construction reduces to canonical form") {
    CHECK(Rational(BigInt(4), BigInt(6)) == Rational(BigInt(2), BigInt(3)));
    CHECK(Rational(BigInt(1), BigInt(-2)).denominator() == 2);
    CHECK(Rational(BigInt(1), BigInt(-2)).numerator() == -1);
    CHECK(Rational(BigInt(-3), BigInt(-9)) == Rational(BigInt(1), BigInt(3)));
    CHECK(Rational(BigInt(0), BigInt(17)).denominator() == 1);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with boost cpp_rational") {
    using Oracle = boost::multiprecision::cpp_rational;
    testgen::Rng rng(20240811);
    for (int i = 0; i < 500; ++i) {
        const Rational a = testgen::random_rational(rng, -40, 40, 24);
        const Rational b = testgen::random_rational(rng, -40, 40, 24);
        const Oracle oa(a.numerator(), a.denominator());
        const Oracle ob(b.numerator(), b.denominator());

        const auto same = [](const Rational& mine, const Oracle& ref) {
            return BigInt(numerator(ref)) == mine.numerator() &&
                   BigInt(denominator(ref)) == mine.denominator();
        };
        REQUIRE(same(a + b, Oracle(oa + ob)));
        REQUIRE(same(a - b, Oracle(oa - ob)));
        REQUIRE(same(a * b, Oracle(oa * ob)));
        if (!b.is_zero()) {
            REQUIRE(same(a / b, Oracle(oa / ob)));
        }
        REQUIRE(is_canonical(a + b));
        REQUIRE(is_canonical(a * b));
        REQUIRE((a < b) == (oa < ob));
        REQUIRE((a == b) == (oa == ob));
    }
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
}

TEST_CASE("parse and to_string round-trip") {
    CHECK(Rational::parse("3").to_string() == "3");
    CHECK(Rational::parse("-3/2").to_string() == "-3/2");
    CHECK(Rational::parse("4/6").to_string() == "2/3");
    CHECK(Rational::parse("0/5").to_string() == "0");
    CHECK(Rational::parse("-0").to_string() == "0");
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1 /2"), std::invalid_argument);

    testgen::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Rational value = testgen::random_rational(rng, -100, 100, 60);
        CHECK(Rational::parse(value.to_string()) == value);
    }
}

TEST_CASE("bit lengths") {
    BigInt big = 1;
    big <<= 127;  // 2^127 has 128 bits
    CHECK(Rational::bit_length(big) == 128);
    CHECK(Rational::bit_length(BigInt(0)) == 0);
    CHECK(Rational::bit_length(BigInt(-8)) == 4);
    CHECK(Rational(BigInt(1), big).max_bit_length() == 128);
    CHECK(Rational(0).max_bit_length() == 1);  // denominator 1
}

TEST_CASE("pow with nonnegative exponents") {
    const Rational half(BigInt(1), BigInt(2));
    CHECK(reconv::pow(half, 0) == Rational(1));
    CHECK(reconv::pow(half, 1) == half);
    CHECK(reconv::pow(half, 10) == Rational(BigInt(1), BigInt(1024)));
    CHECK(reconv::pow(Rational(-2), 3) == Rational(-8));
}
