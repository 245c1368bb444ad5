#include "reconv/oracle.hpp"

#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

using reconv::ConditionVFamily;
using reconv::LinearRecurrence;
using reconv::Method;
using reconv::OracleConfig;
using reconv::OracleOutcome;
using reconv::PolynomialRecurrence;
using reconv::Rational;

namespace {

PolynomialRecurrence square_rule(Rational initial, Rational scale = Rational(1)) {
    PolynomialRecurrence rec;
    rec.order = 1;
    rec.degree_bound = 2;
    rec.initials = {std::move(initial)};
    rec.terms[{2}] = std::move(scale);
    return rec;
}

LinearRecurrence fibonacci() {
    LinearRecurrence rec;
    rec.order = 2;
    rec.coeffs = {Rational(1), Rational(1)};
    rec.initials = {Rational(0), Rational(1)};
    return rec;
}

bool same_outcome(const OracleOutcome& a, const OracleOutcome& b) {
    if (const auto* ca = a.converged()) {
        const auto* cb = b.converged();
        return cb && ca->m == cb->m && ca->prefix == cb->prefix;
    }
    if (const auto* na = a.not_within_bound()) {
        const auto* nb = b.not_within_bound();
        return nb && na->steps == nb->steps;
    }
    const auto* ba = a.blowup();
    const auto* bb = b.blowup();
    return ba && bb && ba->step == bb->step && ba->bits == bb->bits;
}

}  // namespace

TEST_CASE("simulate certifies the squared orbit at M = 1") {
    const auto outcome = reconv::simulate(square_rule(Rational(-1)), Rational(1));
    REQUIRE(outcome.is_converged());
    CHECK(outcome.converged()->m == 1);
    REQUIRE(outcome.converged()->prefix.size() >= 2);
    CHECK(outcome.converged()->prefix[0] == Rational(-1));
    CHECK(outcome.converged()->prefix[1] == Rational(1));
}

TEST_CASE("a single hit is not a run: fibonacci never certifies 5") {
    OracleConfig config;
    config.max_steps = 100;
    const auto outcome = reconv::simulate(fibonacci(), Rational(5), config);
    REQUIRE(outcome.is_not_within_bound());
    CHECK(outcome.not_within_bound()->steps == 100);
    // 5 does occur once in the orbit.
    const auto orbit = reconv::iterate(fibonacci(), 10);
    CHECK(std::count(orbit.begin(), orbit.end(), Rational(5)) == 1);
}

TEST_CASE("doubly exponential growth trips the bit cap") {
    OracleConfig config;
    config.max_bits = 64;
    const auto outcome = reconv::simulate(square_rule(Rational(1), Rational(2)), Rational(0), config);
    REQUIRE(outcome.is_blowup());
    // r_i = 2^(2^i - 1): r_6 = 2^63 is exactly 64 bits, r_7 = 2^127 is 128.
    CHECK(outcome.blowup()->step == 7);
    CHECK(outcome.blowup()->bits == 128);
}

TEST_CASE("decide_combined pipeline") {
    ConditionVFamily squares;
    squares.a2 = Rational(1);
    squares.initials = {Rational(1), Rational(1), Rational(1)};
    const auto fixed_point_gate = reconv::decide_combined(squares.to_recurrence(), Rational(2));
    CHECK(fixed_point_gate.verdict.is_does_not_converge());
    CHECK(fixed_point_gate.verdict.method == Method::fixed_point);
    REQUIRE(fixed_point_gate.breakdown.clauses.size() == 1);
    CHECK(fixed_point_gate.breakdown.clauses[0].value == Rational(2));

    const auto via_oracle = reconv::decide_combined(square_rule(Rational(-1)), Rational(1));
    CHECK(via_oracle.verdict.is_converges());
    CHECK(via_oracle.verdict.method == Method::oracle);
    CHECK(via_oracle.verdict.m() == 1);

    const auto linear = reconv::decide_combined(fibonacci(), Rational(0));
    CHECK(linear.verdict.is_does_not_converge());
    CHECK(linear.verdict.method == Method::theorem1);

    // An inconclusive simulation surfaces as Unknown with bound info.
    // (The polynomial pipeline has no theorem for K = 0 with a zero
    // constant term, so the fibonacci embedding stays undecided.)
    OracleConfig small;
    small.max_steps = 10;
    const auto unknown =
        reconv::decide_combined(reconv::as_polynomial(fibonacci()), Rational(0), small);
    CHECK(unknown.verdict.is_unknown());
    CHECK(unknown.verdict.unknown()->steps_used == 10);
    CHECK(!unknown.verdict.unknown()->bits_cap_hit);
}

TEST_CASE("identical inputs give bit-identical outcomes") {
    testgen::Rng rng(20240823);
    for (int i = 0; i < 50; ++i) {
        const ConditionVFamily family = testgen::random_family(rng);
        const Rational target = testgen::random_rational(rng, -2, 2, 2);
        const OracleConfig config{80, 600};
        const auto first = reconv::simulate(family.to_recurrence(), target, config);
        const auto second = reconv::simulate(family.to_recurrence(), target, config);
        REQUIRE(same_outcome(first, second));
    }
}

TEST_CASE("a certificate really is a proof: the run continues forever") {
    testgen::Rng rng(20240824);
    int certified = 0;
    for (int i = 0; i < 300; ++i) {
        const Rational target = testgen::random_rational(rng, -2, 2, 2);
        ConditionVFamily family = testgen::random_family(rng);
        if (i % 3 == 0) {
            // Seed plenty of converging instances: constant orbits need a
            // fixed point, which d = K - a2 K^2 - a3 K^2 arranges.
            const Rational k2 = target * target;
            family.constant = target - family.a2 * k2 - family.a3 * k2;
            family.initials = {target, target, target};
        }
        const auto rec = family.to_recurrence();
        const auto outcome = reconv::simulate(rec, target, {60, 512});
        if (!outcome.is_converged()) {
            continue;
        }
        ++certified;
        // M is minimal: the previous term differs from the target.
        const auto& certificate = *outcome.converged();
        if (certificate.m > 0) {
            REQUIRE(certificate.prefix[certificate.m - 1] != target);
        }
        // Re-simulate 60 more steps past the detected run.
        const auto extended = reconv::iterate(rec, certificate.prefix.size() - 1 + 60);
        for (std::size_t idx = certificate.m; idx < extended.size(); ++idx) {
            REQUIRE(extended[idx] == target);
        }
    }
    REQUIRE(certified >= 90);
}

TEST_CASE("linear certificates always have M = 0") {
    testgen::Rng rng(20240825);
    int certified = 0;
    for (int i = 0; i < 200; ++i) {
        const Rational target = testgen::random_rational(rng, -3, 3, 2);
        const LinearRecurrence rec = (i % 2 == 0) ? testgen::converging_linear(rng, target)
                                                  : testgen::random_linear(rng);
        const auto outcome = reconv::simulate(rec, target, {120, 1024});
        if (outcome.is_converged()) {
            ++certified;
            REQUIRE(outcome.converged()->m == 0);
        }
    }
    REQUIRE(certified >= 80);

    // Polynomial recurrences are different: backward steps are not unique.
    const auto squared = reconv::simulate(square_rule(Rational(-1)), Rational(1));
    REQUIRE(squared.is_converged());
    CHECK(squared.converged()->m == 1);
}

TEST_CASE("enlarging the bounds never loses a certificate") {
    testgen::Rng rng(20240826);
    for (int i = 0; i < 120; ++i) {
        ConditionVFamily family = testgen::random_family(rng);
        const Rational target = testgen::random_rational(rng, -2, 2, 2);
        if (i % 4 == 0) {
            family.initials = {target, target, target};
            const Rational k2 = target * target;
            family.constant = target - family.a2 * k2 - family.a3 * k2;
        }
        const auto rec = family.to_recurrence();
        const OracleConfig tight{40, 256};
        const OracleConfig loose{80, 512};
        const auto first = reconv::simulate(rec, target, tight);
        if (!first.is_converged()) {
            continue;
        }
        const auto second = reconv::simulate(rec, target, loose);
        REQUIRE(second.is_converged());
        REQUIRE(second.converged()->m == first.converged()->m);
    }
}

TEST_CASE("degenerate oracle configs are rejected") {
    CHECK_THROWS_AS(reconv::simulate(square_rule(Rational(1)), Rational(1), {0, 64}),
                    std::invalid_argument);
    CHECK_THROWS_AS(reconv::simulate(square_rule(Rational(1)), Rational(1), {10, 0}),
                    std::invalid_argument);
}

TEST_CASE("initial values already form a detectable run") {
    LinearRecurrence constant;
    constant.order = 3;
    constant.coeffs = {Rational(0), Rational(0), Rational(1)};
    constant.initials = {Rational(4), Rational(4), Rational(4)};
    const auto outcome = reconv::simulate(constant, Rational(4));
    REQUIRE(outcome.is_converged());
    CHECK(outcome.converged()->m == 0);
    CHECK(outcome.converged()->prefix.size() == 3);
}
