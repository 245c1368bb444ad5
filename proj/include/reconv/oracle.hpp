#pragma once

/* Brute-force exact simulation: the ground truth every closed-form
 * condition is checked against.
 *
 * Converged is a proof, not an observation: it requires L consecutive
 * terms equal to K *and* a zero fixed-point residual, because a run of
 * K's continues forever exactly when constant-K is a forward fixed
 * point. NotWithinBound is deliberately weaker than "does not converge"
 * (simulation cannot prove a negative); Blowup caps rational bit growth
 * so memory stays predictable.
 */

#include "reconv/analyzer.hpp"
#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace reconv {

struct OracleConfig {
    std::size_t max_steps = 1000;
    std::size_t max_bits = 4096;  // cap on numerator/denominator bit length
};

struct Converged {
    std::size_t m = 0;  // minimum index with every later simulated term equal to K
    std::vector<Rational> prefix;
};

struct NotWithinBound {
    std::size_t steps = 0;
};

struct Blowup {
    std::size_t step = 0;  // trajectory index of the offending term
    std::size_t bits = 0;
};

struct OracleOutcome {
    std::variant<Converged, NotWithinBound, Blowup> result;

    bool is_converged() const { return std::holds_alternative<Converged>(result); }
    bool is_not_within_bound() const { return std::holds_alternative<NotWithinBound>(result); }
    bool is_blowup() const { return std::holds_alternative<Blowup>(result); }

    const Converged* converged() const { return std::get_if<Converged>(&result); }
    const NotWithinBound* not_within_bound() const { return std::get_if<NotWithinBound>(&result); }
    const Blowup* blowup() const { return std::get_if<Blowup>(&result); }
};

namespace oracle_detail {

// Smallest index m such that trajectory[m..] is all equal to target.
inline std::size_t scan_back_min_index(const std::vector<Rational>& trajectory,
                                       const Rational& target) {
    std::size_t m = trajectory.size();
    while (m > 0 && trajectory[m - 1] == target) {
        --m;
    }
    return m;
}

inline bool tail_run_of(const std::vector<Rational>& trajectory, const Rational& target,
                        std::size_t run_length) {
    if (trajectory.size() < run_length) {
        return false;
    }
    for (std::size_t i = trajectory.size() - run_length; i < trajectory.size(); ++i) {
        if (trajectory[i] != target) {
            return false;
        }
    }
    return true;
}

}  // namespace oracle_detail

inline OracleOutcome simulate(const PolynomialRecurrence& rec, const Rational& target,
                              const OracleConfig& config = {}) {
    ensure_valid(rec);
    if (config.max_steps == 0 || config.max_bits == 0) {
        throw std::invalid_argument("OracleConfig: max_steps and max_bits must be positive");
    }
    const std::size_t order = rec.order;
    const bool fixed_point = fixed_point_residual(rec, target).is_zero();

    std::vector<Rational> trajectory;
    trajectory.reserve(order + config.max_steps);

    std::optional<Blowup> blowup;
    const auto absorb = [&](Rational term) {
        const std::size_t bits = term.max_bit_length();
        if (bits > config.max_bits) {
            blowup = Blowup{trajectory.size(), bits};
            return false;
        }
        trajectory.push_back(std::move(term));
        return true;
    };
    const auto detected_run = [&] {
        return fixed_point && oracle_detail::tail_run_of(trajectory, target, order);
    };

    for (const auto& initial : rec.initials) {
        if (!absorb(initial)) {
            return OracleOutcome{*blowup};
        }
    }
    if (detected_run()) {
        const std::size_t m = oracle_detail::scan_back_min_index(trajectory, target);
        return OracleOutcome{Converged{m, std::move(trajectory)}};
    }

    std::vector<Rational> window(order);
    for (std::size_t step = 0; step < config.max_steps; ++step) {
        for (std::size_t k = 0; k < order; ++k) {
            window[k] = trajectory[trajectory.size() - 1 - k];
        }
        if (!absorb(step_polynomial(rec, window))) {
            return OracleOutcome{*blowup};
        }
        if (detected_run()) {
            const std::size_t m = oracle_detail::scan_back_min_index(trajectory, target);
            return OracleOutcome{Converged{m, std::move(trajectory)}};
        }
    }
    return OracleOutcome{NotWithinBound{config.max_steps}};
}

inline OracleOutcome simulate(const LinearRecurrence& rec, const Rational& target,
                              const OracleConfig& config = {}) {
    return simulate(as_polynomial(rec), target, config);
}

// Linear recurrences are decided by the theorems alone.
inline Decision decide_combined(const LinearRecurrence& rec, const Rational& target,
                                const OracleConfig& = {}) {
    return decide_linear(rec, target);
}

// Polynomial pipeline: K = 0 constant gate, then the fixed-point gate,
// then exact simulation. Only the oracle can return Converges here.
inline Decision decide_combined(const PolynomialRecurrence& rec, const Rational& target,
                                const OracleConfig& config = {}) {
    ensure_valid(rec);
    using analyzer_detail::residual_clause;

    Decision decision;
    if (target.is_zero()) {
        Verdict gate = decide_poly_zero(rec);
        if (gate.is_does_not_converge()) {
            decision.verdict = std::move(gate);
            decision.breakdown.clauses.push_back(
                residual_clause("constant term == 0", rec.constant_term()));
            decision.breakdown.overall = false;
            return decision;
        }
    }

    Rational residual = fixed_point_residual(rec, target);
    if (!residual.is_zero()) {
        decision.breakdown.clauses.push_back(
            residual_clause("step(K,...,K) - K == 0", std::move(residual)));
        decision.breakdown.overall = false;
        decision.verdict =
            Verdict{DoesNotConverge{"target is not a fixed point of the rule"}, Method::fixed_point};
        return decision;
    }

    const OracleOutcome outcome = simulate(rec, target, config);
    if (const auto* converged = outcome.converged()) {
        decision.verdict = Verdict{Converges{converged->m}, Method::oracle};
        decision.breakdown.overall = true;
    } else if (const auto* bound = outcome.not_within_bound()) {
        decision.verdict = Verdict{Unknown{bound->steps, false}, Method::oracle};
    } else {
        const auto* blowup = outcome.blowup();
        decision.verdict = Verdict{Unknown{blowup->step, true}, Method::oracle};
    }
    return decision;
}

}  // namespace reconv
