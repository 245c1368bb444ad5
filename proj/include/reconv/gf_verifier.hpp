#pragma once

/* Coefficient-cancellation checks on truncated series.
 *
 * For a trajectory p_0..p_N of a linear recurrence, the product
 * R(x) = A(x) P(x) - B(x) with
 *   A(x) = 1 - a_1 x - ... - a_L x^L,
 *   B(x) = d (x^L + ... + x^N),
 *   P(x) = p_0 + p_1 x + ... + p_N x^N
 * has an exact three-part coefficient structure: a head at x^0..x^{L-1},
 * an all-zero middle at x^L..x^N (each middle coefficient is one
 * recurrence instance), and a truncation tail at x^{N+1}..x^{N+L}.
 * The report compares the series-arithmetic route against the directly
 * summed closed forms for head and tail, and flags any middle violation.
 * Everything is exact; no tolerance exists anywhere in this module.
 *
 * check_family_identity does the same for the order-3 quadratic family,
 * with R = A1 P1 + A2 P2 + A3 P3 + A4 P4:
 *   A1 = 1 - a1 x + a1 x^3        P1 = sum r_i x^i            (0..N)
 *   A2 = -a2 x^2                  P2 = sum r_i^2 x^i          (0..N)
 *   A3 = -a3 x^3                  P3 = sum r_i r_{i+2} x^i    (0..N-2)
 *   A4 = -d                       P4 = sum x^i                (0..N)
 * and middle range x^3..x^N.
 */

#include "reconv/analyzer.hpp"
#include "reconv/oracle.hpp"
#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"
#include "reconv/series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace reconv {

struct CoefficientCheck {
    std::size_t index = 0;
    Rational expected;
    Rational actual;

    bool matches() const { return expected == actual; }
};

struct CancellationReport {
    std::size_t degree = 0;  // N
    std::vector<CoefficientCheck> head;
    bool middle_all_zero = false;
    std::optional<std::size_t> first_violation;
    std::vector<CoefficientCheck> tail;
    // K-substituted tail forms, present when the trajectory is eventually
    // constant at the target early enough (M <= N - L) and the target is
    // a fixed point.
    std::optional<std::vector<CoefficientCheck>> tail_at_target;

    bool ok() const {
        for (const auto& check : head) {
            if (!check.matches()) {
                return false;
            }
        }
        if (!middle_all_zero) {
            return false;
        }
        for (const auto& check : tail) {
            if (!check.matches()) {
                return false;
            }
        }
        if (tail_at_target) {
            for (const auto& check : *tail_at_target) {
                if (!check.matches()) {
                    return false;
                }
            }
        }
        return true;
    }
};

inline TruncatedSeries build_A(const LinearRecurrence& rec, std::size_t degree_bound) {
    ensure_valid(rec);
    if (degree_bound < rec.order) {
        throw std::invalid_argument("build_A: degree bound below recurrence order");
    }
    std::vector<Rational> coeffs(rec.order + 1);
    coeffs[0] = Rational(1);
    for (std::size_t k = 1; k <= rec.order; ++k) {
        coeffs[k] = -rec.coeffs[k - 1];
    }
    return TruncatedSeries(degree_bound, std::move(coeffs));
}

inline TruncatedSeries build_B(const LinearRecurrence& rec, std::size_t n,
                               std::size_t degree_bound) {
    ensure_valid(rec);
    if (n < rec.order) {
        throw std::invalid_argument("build_B: N must be at least the order");
    }
    if (degree_bound < n) {
        throw std::invalid_argument("build_B: degree bound below N");
    }
    std::vector<Rational> coeffs(n + 1);
    for (std::size_t i = rec.order; i <= n; ++i) {
        coeffs[i] = rec.constant;
    }
    return TruncatedSeries(degree_bound, std::move(coeffs));
}

namespace gf_detail {

inline void fill_middle(CancellationReport& report, const TruncatedSeries& r, std::size_t from,
                        std::size_t to) {
    report.middle_all_zero = true;
    for (std::size_t i = from; i <= to; ++i) {
        if (!r.coeff(i).is_zero()) {
            report.middle_all_zero = false;
            report.first_violation = i;
            return;
        }
    }
}

// Trailing-run start: smallest m with traj[m..] all equal to target.
inline std::size_t run_start(std::span<const Rational> trajectory, const Rational& target) {
    std::size_t m = trajectory.size();
    while (m > 0 && trajectory[m - 1] == target) {
        --m;
    }
    return m;
}

}  // namespace gf_detail

inline CancellationReport check_linear_trajectory(const LinearRecurrence& rec,
                                                  std::span<const Rational> trajectory,
                                                  const Rational& target) {
    ensure_valid(rec);
    const std::size_t order = rec.order;
    if (trajectory.size() < order + 1) {
        throw std::invalid_argument("check_linear_trajectory: trajectory shorter than order + 1");
    }
    const std::size_t n = trajectory.size() - 1;
    const std::size_t bound = n + order;

    const TruncatedSeries a = build_A(rec, bound);
    const TruncatedSeries p(bound, std::vector<Rational>(trajectory.begin(), trajectory.end()));
    const TruncatedSeries b = build_B(rec, n, bound);
    const TruncatedSeries r = a * p - b;

    CancellationReport report;
    report.degree = n;

    // Head x^i, i < L: p_i - sum_{k<=i} a_k p_{i-k}.
    for (std::size_t i = 0; i < order; ++i) {
        Rational expected = trajectory[i];
        for (std::size_t k = 1; k <= i; ++k) {
            expected -= rec.coeffs[k - 1] * trajectory[i - k];
        }
        report.head.push_back({i, std::move(expected), r.coeff(i)});
    }

    gf_detail::fill_middle(report, r, order, n);

    // Tail x^{N+j}: -(a_j p_N + a_{j+1} p_{N-1} + ... + a_L p_{N+j-L}).
    for (std::size_t j = 1; j <= order; ++j) {
        Rational expected;
        for (std::size_t k = j; k <= order; ++k) {
            expected -= rec.coeffs[k - 1] * trajectory[n + j - k];
        }
        report.tail.push_back({n + j, std::move(expected), r.coeff(n + j)});
    }

    const std::size_t m = gf_detail::run_start(trajectory, target);
    const bool fixed_point = step_linear(rec, std::vector<Rational>(order, target)) == target;
    if (fixed_point && n >= order && m <= n - order) {
        std::vector<CoefficientCheck> constant_tail;
        for (std::size_t j = 1; j <= order; ++j) {
            Rational coeff_sum;
            for (std::size_t k = j; k <= order; ++k) {
                coeff_sum -= rec.coeffs[k - 1];
            }
            constant_tail.push_back({n + j, target * coeff_sum, r.coeff(n + j)});
        }
        report.tail_at_target = std::move(constant_tail);
    }
    return report;
}

inline CancellationReport check_linear_identity(const LinearRecurrence& rec, const Rational& target,
                                                std::size_t n) {
    if (n < rec.order) {
        throw std::invalid_argument("check_linear_identity: N must be at least the order");
    }
    return check_linear_trajectory(rec, iterate(rec, n), target);
}

inline CancellationReport check_family_trajectory(const ConditionVFamily& family,
                                                  std::span<const Rational> trajectory,
                                                  const Rational& target) {
    if (trajectory.size() < 4) {
        throw std::invalid_argument("check_family_trajectory: need at least r_0..r_3");
    }
    const std::size_t n = trajectory.size() - 1;
    const std::size_t bound = n + 3;
    const Rational& a1 = family.a1;
    const Rational& a2 = family.a2;
    const Rational& a3 = family.a3;
    const Rational& d = family.constant;

    const TruncatedSeries comp_a1(bound, {Rational(1), -a1, Rational(0), a1});
    const TruncatedSeries comp_a2(bound, {Rational(0), Rational(0), -a2});
    const TruncatedSeries comp_a3(bound, {Rational(0), Rational(0), Rational(0), -a3});
    const TruncatedSeries comp_a4(bound, {-d});

    std::vector<Rational> p1(trajectory.begin(), trajectory.end());
    std::vector<Rational> p2;
    p2.reserve(n + 1);
    for (const auto& term : trajectory) {
        p2.push_back(term * term);
    }
    std::vector<Rational> p3;
    p3.reserve(n - 1);
    for (std::size_t i = 0; i + 2 <= n; ++i) {
        p3.push_back(trajectory[i] * trajectory[i + 2]);
    }
    std::vector<Rational> p4(n + 1, Rational(1));

    const TruncatedSeries series_p1(bound, std::move(p1));
    const TruncatedSeries series_p2(bound, std::move(p2));
    const TruncatedSeries series_p3(bound, std::move(p3));
    const TruncatedSeries series_p4(bound, std::move(p4));

    const TruncatedSeries r = comp_a1 * series_p1 + comp_a2 * series_p2 + comp_a3 * series_p3 +
                              comp_a4 * series_p4;

    CancellationReport report;
    report.degree = n;

    const Rational& r0 = trajectory[0];
    const Rational& r1 = trajectory[1];
    const Rational& r2 = trajectory[2];
    report.head.push_back({0, r0 - d, r.coeff(0)});
    report.head.push_back({1, r1 - a1 * r0 - d, r.coeff(1)});
    report.head.push_back({2, r2 - a1 * r1 - a2 * r0 * r0 - d, r.coeff(2)});

    gf_detail::fill_middle(report, r, 3, n);

    const Rational& rn = trajectory[n];
    const Rational& rn1 = trajectory[n - 1];
    const Rational& rn2 = trajectory[n - 2];
    report.tail.push_back({n + 1, -a1 * rn + a1 * rn2 - a2 * rn1 * rn1 - a3 * rn2 * rn, r.coeff(n + 1)});
    report.tail.push_back({n + 2, a1 * rn1 - a2 * rn * rn, r.coeff(n + 2)});
    report.tail.push_back({n + 3, a1 * rn, r.coeff(n + 3)});

    const std::size_t m = gf_detail::run_start(trajectory, target);
    const Rational k2 = target * target;
    const bool fixed_point = (a2 * k2 + a3 * k2 + d - target).is_zero();
    if (fixed_point && n >= 3 && m <= n - 3) {
        std::vector<CoefficientCheck> constant_tail;
        constant_tail.push_back({n + 1, -a2 * k2 - a3 * k2, r.coeff(n + 1)});
        constant_tail.push_back({n + 2, a1 * target - a2 * k2, r.coeff(n + 2)});
        constant_tail.push_back({n + 3, a1 * target, r.coeff(n + 3)});
        report.tail_at_target = std::move(constant_tail);
    }
    return report;
}

inline CancellationReport check_family_identity(const ConditionVFamily& family,
                                                const Rational& target, std::size_t n) {
    if (n < 3) {
        throw std::invalid_argument("check_family_identity: N must be at least 3");
    }
    return check_family_trajectory(family, iterate(family.to_recurrence(), n), target);
}

}  // namespace reconv
