#pragma once

/* Cross-validation sweeps: grid the closed-form conditions against the
 * simulation oracle and keep auditable mismatch records.
 *
 * A mismatch needs a definitive oracle outcome. Converged is definitive
 * in both directions; NotWithinBound and Blowup are inconclusive and are
 * tallied, never counted as disagreements. For the condition-V sweep the
 * only other definitive negative is a nonzero fixed-point residual, and
 * clause 1 of V already excludes it whenever V holds.
 *
 * Grid points are independent work items; results are merged by instance
 * index, so parallel and serial sweeps produce identical reports.
 */

#include "reconv/analyzer.hpp"
#include "reconv/oracle.hpp"
#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace reconv {

constexpr std::size_t kDefaultGridCap = 100000;

struct GridAxis {
    std::string name;
    std::vector<Rational> values;
};

// Cartesian product of named axes; the last axis varies fastest.
struct GridSpec {
    std::vector<GridAxis> axes;
    std::size_t cap = kDefaultGridCap;

    std::size_t size() const {
        if (axes.empty()) {
            return 0;
        }
        std::size_t product = 1;
        for (const auto& axis : axes) {
            if (axis.values.empty()) {
                return 0;
            }
            if (product > cap / axis.values.size()) {
                return cap + 1;  // saturate; only compared against cap
            }
            product *= axis.values.size();
        }
        return product;
    }

    std::vector<Rational> point(std::size_t index) const {
        std::vector<Rational> values(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            const auto& axis_values = axes[k].values;
            values[k] = axis_values[index % axis_values.size()];
            index /= axis_values.size();
        }
        return values;
    }
};

struct SweepCounts {
    std::size_t condition_yes_oracle_converged = 0;
    std::size_t condition_yes_oracle_other = 0;
    std::size_t condition_no_oracle_converged = 0;
    std::size_t condition_no_oracle_other = 0;

    std::size_t total() const {
        return condition_yes_oracle_converged + condition_yes_oracle_other +
               condition_no_oracle_converged + condition_no_oracle_other;
    }
};

struct LinearInstance {
    LinearRecurrence recurrence;
    Rational target;
};

struct LinearSweepRow {
    std::size_t index = 0;
    LinearInstance instance;
    Decision decision;
    OracleOutcome outcome;
    bool mismatch = false;
};

struct LinearSweepReport {
    std::size_t total = 0;
    SweepCounts counts;
    std::vector<LinearSweepRow> rows;           // every evaluated instance
    std::vector<LinearSweepRow> mismatches;     // definitive disagreements only
};

// Grid over linear recurrences: every a_k ranges over coeff_values and
// every c_i over init_values, for each order in orders. Candidates with
// a_L = 0 are not valid recurrences and are skipped.
struct LinearGridSpec {
    std::vector<std::size_t> orders;
    std::vector<Rational> coeff_values;
    std::vector<Rational> init_values;
    std::vector<Rational> target_values;
    std::vector<Rational> constant_values;
    std::size_t cap = kDefaultGridCap;
};

struct VInstance {
    ConditionVFamily family;
    Rational target;
};

struct VSweepRow {
    std::size_t index = 0;
    VInstance instance;
    ConditionBreakdown condition;
    OracleOutcome outcome;
    bool mismatch = false;
};

struct VSweepReport {
    std::size_t total = 0;
    SweepCounts counts;
    std::size_t inconclusive_not_within_bound = 0;
    std::size_t inconclusive_blowup = 0;
    std::vector<VSweepRow> rows;
    std::vector<VSweepRow> mismatches;
};

// Grid over the condition-V family, one axis per parameter.
struct VGridSpec {
    std::vector<Rational> a1_values;
    std::vector<Rational> a2_values;
    std::vector<Rational> a3_values;
    std::vector<Rational> constant_values;
    std::vector<Rational> c0_values;
    std::vector<Rational> c1_values;
    std::vector<Rational> c2_values;
    std::vector<Rational> target_values;
    std::size_t cap = kDefaultGridCap;

    GridSpec to_grid() const {
        GridSpec grid;
        grid.cap = cap;
        grid.axes = {{"a1", a1_values}, {"a2", a2_values}, {"a3", a3_values},
                     {"d", constant_values}, {"c0", c0_values}, {"c1", c1_values},
                     {"c2", c2_values}, {"K", target_values}};
        return grid;
    }
};

namespace xval_detail {

inline void run_indexed(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) {
            work(i);
        }
        return;
    }
    const std::size_t worker_count = std::min<std::size_t>(threads, count);
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += worker_count) {
                work(i);
            }
        });
    }
    for (auto& worker : workers) {
        worker.join();
    }
}

struct LinearBlock {
    std::size_t order = 0;
    std::size_t size = 0;
};

inline std::size_t checked_pow(std::size_t base, std::size_t exponent, std::size_t limit) {
    std::size_t value = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && value > limit / base) {
            return limit + 1;
        }
        value *= base;
    }
    return value;
}

inline std::vector<LinearBlock> linear_blocks(const LinearGridSpec& spec, std::size_t& raw_total) {
    std::vector<LinearBlock> blocks;
    raw_total = 0;
    const std::size_t limit = spec.cap;
    for (const std::size_t order : spec.orders) {
        if (order == 0) {
            throw std::invalid_argument("linear grid: order must be positive");
        }
        std::size_t block = checked_pow(spec.coeff_values.size(), order, limit);
        const std::size_t inits = checked_pow(spec.init_values.size(), order, limit);
        if (block > limit / (inits == 0 ? 1 : inits)) {
            block = limit + 1;
        } else {
            block *= inits;
        }
        for (const std::size_t factor : {spec.target_values.size(), spec.constant_values.size()}) {
            if (factor == 0) {
                block = 0;
                break;
            }
            if (block > limit / factor) {
                block = limit + 1;
                break;
            }
            block *= factor;
        }
        blocks.push_back({order, block});
        raw_total += block;
        if (raw_total > limit) {
            raw_total = limit + 1;
            return blocks;
        }
    }
    return blocks;
}

// Decode a within-block index into an instance; axes are ordered
// a_1..a_L, c_0..c_{L-1}, K, d with the last varying fastest.
inline LinearInstance decode_linear(const LinearGridSpec& spec, std::size_t order,
                                    std::size_t local) {
    LinearInstance instance;
    instance.recurrence.order = order;
    instance.recurrence.coeffs.resize(order);
    instance.recurrence.initials.resize(order);

    const std::size_t constant_count = spec.constant_values.size();
    instance.recurrence.constant = spec.constant_values[local % constant_count];
    local /= constant_count;

    const std::size_t target_count = spec.target_values.size();
    instance.target = spec.target_values[local % target_count];
    local /= target_count;

    const std::size_t init_count = spec.init_values.size();
    for (std::size_t i = order; i-- > 0;) {
        instance.recurrence.initials[i] = spec.init_values[local % init_count];
        local /= init_count;
    }
    const std::size_t coeff_count = spec.coeff_values.size();
    for (std::size_t k = order; k-- > 0;) {
        instance.recurrence.coeffs[k] = spec.coeff_values[local % coeff_count];
        local /= coeff_count;
    }
    return instance;
}

}  // namespace xval_detail

inline LinearSweepReport sweep_linear(const LinearGridSpec& spec, const OracleConfig& config = {},
                                      unsigned threads = 1) {
    std::size_t raw_total = 0;
    const auto blocks = xval_detail::linear_blocks(spec, raw_total);
    if (raw_total > spec.cap) {
        throw std::invalid_argument("grid too large: instance cap " + std::to_string(spec.cap) +
                                    " exceeded");
    }

    std::vector<std::optional<LinearSweepRow>> results(raw_total);
    xval_detail::run_indexed(raw_total, threads, [&](std::size_t index) {
        std::size_t remaining = index;
        for (const auto& block : blocks) {
            if (remaining >= block.size) {
                remaining -= block.size;
                continue;
            }
            LinearInstance instance = xval_detail::decode_linear(spec, block.order, remaining);
            if (instance.recurrence.coeffs.back().is_zero()) {
                return;  // a_L = 0 is not a recurrence of this order
            }
            LinearSweepRow row;
            row.instance = std::move(instance);
            row.decision = decide_linear(row.instance.recurrence, row.instance.target);
            row.outcome = simulate(row.instance.recurrence, row.instance.target, config);
            const bool converged = row.outcome.is_converged();
            const bool condition_yes = row.decision.verdict.is_converges();
            row.mismatch = condition_yes != converged;
            results[index] = std::move(row);
            return;
        }
    });

    LinearSweepReport report;
    for (auto& slot : results) {
        if (!slot) {
            continue;
        }
        LinearSweepRow row = std::move(*slot);
        row.index = report.rows.size();
        const bool converged = row.outcome.is_converged();
        const bool condition_yes = row.decision.verdict.is_converges();
        if (condition_yes && converged) {
            ++report.counts.condition_yes_oracle_converged;
        } else if (condition_yes) {
            ++report.counts.condition_yes_oracle_other;
        } else if (converged) {
            ++report.counts.condition_no_oracle_converged;
        } else {
            ++report.counts.condition_no_oracle_other;
        }
        if (row.mismatch) {
            report.mismatches.push_back(row);
        }
        report.rows.push_back(std::move(row));
    }
    report.total = report.rows.size();
    return report;
}

inline VSweepReport sweep_condition_v(const VGridSpec& spec, const OracleConfig& config = {},
                                      unsigned threads = 1) {
    const GridSpec grid = spec.to_grid();
    const std::size_t total = grid.size();
    if (total > grid.cap) {
        throw std::invalid_argument("grid too large: instance cap " + std::to_string(grid.cap) +
                                    " exceeded");
    }

    std::vector<std::optional<VSweepRow>> results(total);
    xval_detail::run_indexed(total, threads, [&](std::size_t index) {
        const std::vector<Rational> point = grid.point(index);
        VSweepRow row;
        row.instance.family.a1 = point[0];
        row.instance.family.a2 = point[1];
        row.instance.family.a3 = point[2];
        row.instance.family.constant = point[3];
        row.instance.family.initials = {point[4], point[5], point[6]};
        row.instance.target = point[7];

        row.condition = condition_v(row.instance.family, row.instance.target);
        const PolynomialRecurrence rec = row.instance.family.to_recurrence();
        row.outcome = simulate(rec, row.instance.target, config);

        const bool converged = row.outcome.is_converged();
        if (converged) {
            row.mismatch = !row.condition.overall;
        } else if (row.condition.overall) {
            // The one definitive negative: the target is not even a fixed
            // point. Clause 1 of V rules this out, so it cannot fire; it is
            // checked anyway so the harness never trusts V's structure.
            row.mismatch = !fixed_point_residual(rec, row.instance.target).is_zero();
        }
        results[index] = std::move(row);
    });

    VSweepReport report;
    for (auto& slot : results) {
        VSweepRow row = std::move(*slot);
        row.index = report.rows.size();
        const bool converged = row.outcome.is_converged();
        if (row.condition.overall && converged) {
            ++report.counts.condition_yes_oracle_converged;
        } else if (row.condition.overall) {
            ++report.counts.condition_yes_oracle_other;
        } else if (converged) {
            ++report.counts.condition_no_oracle_converged;
        } else {
            ++report.counts.condition_no_oracle_other;
        }
        if (row.outcome.is_not_within_bound()) {
            ++report.inconclusive_not_within_bound;
        } else if (row.outcome.is_blowup()) {
            ++report.inconclusive_blowup;
        }
        if (row.mismatch) {
            report.mismatches.push_back(row);
        }
        report.rows.push_back(std::move(row));
    }
    report.total = report.rows.size();
    return report;
}

}  // namespace reconv
