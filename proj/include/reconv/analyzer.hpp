#pragma once

/* Closed-form convergence deciders.
 *
 * "Converges to K" always means eventual exact equality: r_i = K for all
 * i >= M, not asymptotic approach. For linear recurrences the four
 * theorem deciders are complete; their conditions force equality from
 * index 0 (a_L != 0 makes the backward step unique), so a positive
 * verdict carries M = 0.
 *
 * For polynomial recurrences only fragments exist: the K = 0 constant
 * gate, the fixed-point residual, and for one specific order-3 quadratic
 * family the condition V decider together with the alternating sum phi.
 * condition_v is implemented exactly as stated, with no correction; the
 * cross-validation harness (xval) is the mechanism for judging it.
 */

#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace reconv {

struct Clause {
    std::string name;
    Rational value;  // exact residual; the clause asserts value == 0
    bool satisfied = false;
};

struct ConditionBreakdown {
    std::vector<Clause> clauses;
    bool overall = false;
};

struct Decision {
    Verdict verdict;
    ConditionBreakdown breakdown;
};

namespace analyzer_detail {

inline Clause residual_clause(std::string name, Rational value) {
    Clause clause;
    clause.name = std::move(name);
    clause.satisfied = value.is_zero();
    clause.value = std::move(value);
    return clause;
}

}  // namespace analyzer_detail

// Dispatch on (d = 0?, K = 0?):
//   d = 0, K = 0  -> all c_i = 0                          (theorem-1)
//   d = 0, K != 0 -> all c_i = K and sum(a) = 1           (theorem-2)
//   d != 0, K = 0 -> never converges                      (theorem-3)
//   d != 0, K != 0 -> all c_i = K and sum(a) = 1 - d/K    (theorem-4)
inline Decision decide_linear(const LinearRecurrence& rec, const Rational& target) {
    ensure_valid(rec);
    using analyzer_detail::residual_clause;

    const bool homogeneous = rec.homogeneous();
    const bool zero_target = target.is_zero();

    Decision decision;
    ConditionBreakdown& breakdown = decision.breakdown;

    if (!homogeneous && zero_target) {
        // A run of L targets would be followed by d != 0.
        breakdown.clauses.push_back(residual_clause("d == 0", rec.constant));
        breakdown.overall = false;
        decision.verdict = Verdict{DoesNotConverge{"nonzero constant term forbids convergence to 0"},
                                   Method::theorem3};
        return decision;
    }

    bool all = true;
    for (std::size_t i = 0; i < rec.order; ++i) {
        Clause clause = residual_clause("c[" + std::to_string(i) + "] == K", rec.initials[i] - target);
        all = all && clause.satisfied;
        breakdown.clauses.push_back(std::move(clause));
    }

    Method method = Method::theorem1;
    if (!zero_target || !homogeneous) {
        Rational coeff_sum;
        for (const auto& a : rec.coeffs) {
            coeff_sum += a;
        }
        if (homogeneous) {
            method = Method::theorem2;
            breakdown.clauses.push_back(residual_clause("sum(a) == 1", coeff_sum - Rational(1)));
        } else {
            method = Method::theorem4;
            const Rational required = Rational(1) - rec.constant / target;
            breakdown.clauses.push_back(residual_clause("sum(a) == 1 - d/K", coeff_sum - required));
        }
        all = all && breakdown.clauses.back().satisfied;
    }

    breakdown.overall = all;
    if (all) {
        decision.verdict = Verdict{Converges{0}, method};
    } else {
        decision.verdict = Verdict{DoesNotConverge{"closed-form condition fails"}, method};
    }
    return decision;
}

// step(K, ..., K) - K: zero exactly when the constant-K window is a fixed
// point, a necessary condition for eventual constancy at K.
inline Rational fixed_point_residual(const PolynomialRecurrence& rec, const Rational& target) {
    ensure_valid(rec);
    const std::vector<Rational> window(rec.order, target);
    return step_polynomial(rec, window) - target;
}

// K = 0 gate: with a nonzero constant term a run of L zeros would be
// followed by that constant. With a zero constant term no closed form is
// available and the answer is deferred to the oracle.
inline Verdict decide_poly_zero(const PolynomialRecurrence& rec) {
    ensure_valid(rec);
    if (!rec.constant_term().is_zero()) {
        return Verdict{DoesNotConverge{"nonzero constant term forbids convergence to 0"},
                       Method::theorem3};
    }
    return Verdict{Unknown{0, false}, Method::theorem3};
}

// The order-3 family r_i = a1 (r_{i-1} - r_{i-3}) + a2 r_{i-2}^2
//                        + a3 r_{i-3} r_{i-1} + d,
// the one polynomial recurrence with a full closed-form condition
// (condition V). All five structural terms are stored even when a
// parameter is zero, so every instance is a valid order-3 recurrence.
struct ConditionVFamily {
    Rational a1;
    Rational a2;
    Rational a3;
    Rational constant;  // d, may be zero
    std::array<Rational, 3> initials{};

    PolynomialRecurrence to_recurrence() const {
        PolynomialRecurrence rec;
        rec.order = 3;
        rec.degree_bound = 2;
        rec.initials.assign(initials.begin(), initials.end());
        rec.terms[{1, 0, 0}] = a1;
        rec.terms[{0, 0, 1}] = -a1;
        rec.terms[{0, 2, 0}] = a2;
        rec.terms[{1, 0, 1}] = a3;
        rec.terms[{0, 0, 0}] = constant;
        return rec;
    }

    // Recognizes recurrences whose nonzero structure fits the family.
    static std::optional<ConditionVFamily> from_recurrence(const PolynomialRecurrence& rec) {
        if (rec.order != 3 || rec.initials.size() != 3 || rec.degree_bound > 2) {
            return std::nullopt;
        }
        ConditionVFamily family;
        family.initials = {rec.initials[0], rec.initials[1], rec.initials[2]};
        Rational neg_a1;
        for (const auto& [exponents, coeff] : rec.terms) {
            if (exponents == ExponentVec{1, 0, 0}) {
                family.a1 = coeff;
            } else if (exponents == ExponentVec{0, 0, 1}) {
                neg_a1 = coeff;
            } else if (exponents == ExponentVec{0, 2, 0}) {
                family.a2 = coeff;
            } else if (exponents == ExponentVec{1, 0, 1}) {
                family.a3 = coeff;
            } else if (exponents == ExponentVec{0, 0, 0}) {
                family.constant = coeff;
            } else if (!coeff.is_zero()) {
                return std::nullopt;
            }
        }
        if (neg_a1 != -family.a1) {
            return std::nullopt;
        }
        return family;
    }
};

// Condition V, evaluated verbatim for the family above:
//   (K - a2 K^2 - a3 K^2 - d = 0)
//   AND (c0 - 3d + c1 - a1 c0 + c2 - a1 c1 - a2 c0^2
//        + 2 a1 K - 2 a2 K^2 - a3 K^2 = 0)
//   AND ((2 K^2 a3 + d = 0) OR (2 K^2 a3 - d = 0))
inline ConditionBreakdown condition_v(const Rational& a1, const Rational& a2, const Rational& a3,
                                      const Rational& d, const Rational& c0, const Rational& c1,
                                      const Rational& c2, const Rational& target) {
    using analyzer_detail::residual_clause;
    const Rational& k = target;
    const Rational k2 = k * k;

    ConditionBreakdown breakdown;
    breakdown.clauses.push_back(
        residual_clause("K - a2*K^2 - a3*K^2 - d", k - a2 * k2 - a3 * k2 - d));
    breakdown.clauses.push_back(residual_clause(
        "c0 - 3d + c1 - a1*c0 + c2 - a1*c1 - a2*c0^2 + 2*a1*K - 2*a2*K^2 - a3*K^2",
        c0 - Rational(3) * d + c1 - a1 * c0 + c2 - a1 * c1 - a2 * c0 * c0 + Rational(2) * a1 * k -
            Rational(2) * a2 * k2 - a3 * k2));
    breakdown.clauses.push_back(residual_clause("2*K^2*a3 + d", Rational(2) * k2 * a3 + d));
    breakdown.clauses.push_back(residual_clause("2*K^2*a3 - d", Rational(2) * k2 * a3 - d));

    breakdown.overall = breakdown.clauses[0].satisfied && breakdown.clauses[1].satisfied &&
                        (breakdown.clauses[2].satisfied || breakdown.clauses[3].satisfied);
    return breakdown;
}

inline ConditionBreakdown condition_v(const ConditionVFamily& family, const Rational& target) {
    return condition_v(family.a1, family.a2, family.a3, family.constant, family.initials[0],
                       family.initials[1], family.initials[2], target);
}

// Alternating prefix sums used by the x = -1 analysis of the family:
//   phi = sum_{i<M} (-1)^i r_i - a2 sum_{i<M} (-1)^i r_i^2
//       + a3 sum_{i<M} (-1)^i r_i r_{i+2} - d sum_{i<M} (-1)^i.
// Empty sums (M = 0) are zero; the r_i r_{i+2} products need the prefix
// to extend two terms past r_{M-1}.
inline Rational phi(std::span<const Rational> prefix, std::size_t m, const Rational& a2,
                    const Rational& a3, const Rational& d) {
    if (m == 0) {
        return Rational();
    }
    if (prefix.size() < m + 2) {
        throw std::invalid_argument("phi: prefix too short, need r_0..r_{M+1}");
    }
    Rational plain;
    Rational squares;
    Rational skip_products;
    Rational signs;
    for (std::size_t i = 0; i < m; ++i) {
        const bool negative = (i % 2) != 0;
        const Rational sign(negative ? -1 : 1);
        plain += sign * prefix[i];
        squares += sign * prefix[i] * prefix[i];
        skip_products += sign * prefix[i] * prefix[i + 2];
        signs += sign;
    }
    return plain - a2 * squares + a3 * skip_products - d * signs;
}

}  // namespace reconv
