#pragma once

// JSON and CSV forms of the library's result types. Rationals always
// serialize as canonical strings ("3", "-3/2"), never as floats, and
// key order is fixed so identical inputs produce identical bytes.

#include "reconv/analyzer.hpp"
#include "reconv/dsl.hpp"
#include "reconv/gf_verifier.hpp"
#include "reconv/oracle.hpp"
#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"
#include "reconv/xval.hpp"

#include <json.hpp>

#include <string>

namespace reconv {

using Json = nlohmann::ordered_json;

inline Json json_of(const Rational& value) { return Json(value.to_string()); }

inline Json json_of(const std::vector<Rational>& values) {
    Json array = Json::array();
    for (const auto& value : values) {
        array.push_back(json_of(value));
    }
    return array;
}

inline Json json_of(const ConditionBreakdown& breakdown) {
    Json clauses = Json::array();
    for (const auto& clause : breakdown.clauses) {
        clauses.push_back(Json{{"name", clause.name},
                               {"value", json_of(clause.value)},
                               {"satisfied", clause.satisfied}});
    }
    return Json{{"clauses", std::move(clauses)}, {"overall", breakdown.overall}};
}

inline Json json_of(const OracleOutcome& outcome, bool include_prefix = true) {
    Json doc;
    if (const auto* converged = outcome.converged()) {
        doc["outcome"] = "converged";
        doc["M"] = converged->m;
        doc["steps"] = nullptr;
        doc["blowup_step"] = nullptr;
        doc["blowup_bits"] = nullptr;
        doc["prefix"] = include_prefix ? json_of(converged->prefix) : Json();
    } else if (const auto* bound = outcome.not_within_bound()) {
        doc["outcome"] = "not-within-bound";
        doc["M"] = nullptr;
        doc["steps"] = bound->steps;
        doc["blowup_step"] = nullptr;
        doc["blowup_bits"] = nullptr;
        doc["prefix"] = nullptr;
    } else if (const auto* blowup = outcome.blowup()) {
        doc["outcome"] = "blowup";
        doc["M"] = nullptr;
        doc["steps"] = nullptr;
        doc["blowup_step"] = blowup->step;
        doc["blowup_bits"] = blowup->bits;
        doc["prefix"] = nullptr;
    }
    return doc;
}

inline std::string verdict_name(const Verdict& verdict) {
    if (verdict.is_converges()) {
        return "converges";
    }
    if (verdict.is_does_not_converge()) {
        return "does-not-converge";
    }
    return "unknown";
}

// The analyze schema: keys {verdict, method, M, target, details} are
// always present; M is null unless the verdict is a convergence.
inline Json analyze_json(const Decision& decision, const Rational& target) {
    Json doc;
    doc["verdict"] = verdict_name(decision.verdict);
    doc["method"] = std::string(method_name(decision.verdict.method));
    if (const auto m = decision.verdict.m()) {
        doc["M"] = *m;
    } else {
        doc["M"] = nullptr;
    }
    doc["target"] = json_of(target);
    Json details;
    if (const auto* reason = decision.verdict.reason()) {
        details["reason"] = *reason;
    }
    if (const auto* unknown = decision.verdict.unknown()) {
        details["steps_used"] = unknown->steps_used;
        details["bits_cap_hit"] = unknown->bits_cap_hit;
    }
    if (!decision.breakdown.clauses.empty()) {
        details["condition"] = json_of(decision.breakdown);
    }
    doc["details"] = std::move(details);
    return doc;
}

inline Json json_of(const CoefficientCheck& check) {
    return Json{{"index", check.index},
                {"expected", json_of(check.expected)},
                {"actual", json_of(check.actual)},
                {"matches", check.matches()}};
}

inline Json json_of(const CancellationReport& report) {
    Json doc;
    doc["degree"] = report.degree;
    Json head = Json::array();
    for (const auto& check : report.head) {
        head.push_back(json_of(check));
    }
    doc["head"] = std::move(head);
    doc["middle_all_zero"] = report.middle_all_zero;
    doc["first_violation"] =
        report.first_violation ? Json(*report.first_violation) : Json(nullptr);
    Json tail = Json::array();
    for (const auto& check : report.tail) {
        tail.push_back(json_of(check));
    }
    doc["tail"] = std::move(tail);
    if (report.tail_at_target) {
        Json constant_tail = Json::array();
        for (const auto& check : *report.tail_at_target) {
            constant_tail.push_back(json_of(check));
        }
        doc["tail_at_target"] = std::move(constant_tail);
    } else {
        doc["tail_at_target"] = nullptr;
    }
    doc["ok"] = report.ok();
    return doc;
}

inline Json json_of(const LinearInstance& instance) {
    return Json{{"order", instance.recurrence.order},
                {"coeffs", json_of(instance.recurrence.coeffs)},
                {"initials", json_of(instance.recurrence.initials)},
                {"constant", json_of(instance.recurrence.constant)},
                {"target", json_of(instance.target)}};
}

inline Json json_of(const VInstance& instance) {
    return Json{{"a1", json_of(instance.family.a1)},
                {"a2", json_of(instance.family.a2)},
                {"a3", json_of(instance.family.a3)},
                {"d", json_of(instance.family.constant)},
                {"c0", json_of(instance.family.initials[0])},
                {"c1", json_of(instance.family.initials[1])},
                {"c2", json_of(instance.family.initials[2])},
                {"target", json_of(instance.target)}};
}

inline Json json_of(const SweepCounts& counts) {
    return Json{{"condition_yes_oracle_converged", counts.condition_yes_oracle_converged},
                {"condition_yes_oracle_other", counts.condition_yes_oracle_other},
                {"condition_no_oracle_converged", counts.condition_no_oracle_converged},
                {"condition_no_oracle_other", counts.condition_no_oracle_other}};
}

inline Json json_of(const LinearSweepReport& report) {
    Json mismatches = Json::array();
    for (const auto& row : report.mismatches) {
        mismatches.push_back(Json{{"index", row.index},
                                  {"instance", json_of(row.instance)},
                                  {"condition", json_of(row.decision.breakdown)},
                                  {"verdict", verdict_name(row.decision.verdict)},
                                  {"method", std::string(method_name(row.decision.verdict.method))},
                                  {"oracle", json_of(row.outcome)}});
    }
    return Json{{"kind", "linear"},
                {"total", report.total},
                {"counts", json_of(report.counts)},
                {"mismatch_count", report.mismatches.size()},
                {"mismatches", std::move(mismatches)}};
}

inline Json json_of(const VSweepReport& report) {
    Json mismatches = Json::array();
    for (const auto& row : report.mismatches) {
        mismatches.push_back(Json{{"index", row.index},
                                  {"instance", json_of(row.instance)},
                                  {"condition", json_of(row.condition)},
                                  {"oracle", json_of(row.outcome)}});
    }
    return Json{{"kind", "condition-v"},
                {"total", report.total},
                {"counts", json_of(report.counts)},
                {"inconclusive",
                 Json{{"not_within_bound", report.inconclusive_not_within_bound},
                      {"blowup", report.inconclusive_blowup}}},
                {"mismatch_count", report.mismatches.size()},
                {"mismatches", std::move(mismatches)}};
}

namespace serialize_detail {

inline std::string join_rationals(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += values[i].to_string();
    }
    return out;
}

inline std::string outcome_name(const OracleOutcome& outcome) {
    if (outcome.is_converged()) {
        return "converged";
    }
    if (outcome.is_not_within_bound()) {
        return "not-within-bound";
    }
    return "blowup";
}

inline std::string oracle_m_cell(const OracleOutcome& outcome) {
    if (const auto* converged = outcome.converged()) {
        return std::to_string(converged->m);
    }
    return "";
}

}  // namespace serialize_detail

// One row per evaluated instance.
inline std::string csv_of(const LinearSweepReport& report) {
    std::string out = "index,order,coeffs,initials,constant,target,verdict,method,oracle,oracle_m,mismatch\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.index) + ',';
        out += std::to_string(row.instance.recurrence.order) + ',';
        out += serialize_detail::join_rationals(row.instance.recurrence.coeffs) + ',';
        out += serialize_detail::join_rationals(row.instance.recurrence.initials) + ',';
        out += row.instance.recurrence.constant.to_string() + ',';
        out += row.instance.target.to_string() + ',';
        out += verdict_name(row.decision.verdict) + ',';
        out += std::string(method_name(row.decision.verdict.method)) + ',';
        out += serialize_detail::outcome_name(row.outcome) + ',';
        out += serialize_detail::oracle_m_cell(row.outcome) + ',';
        out += row.mismatch ? "1\n" : "0\n";
    }
    return out;
}

inline std::string csv_of(const VSweepReport& report) {
    std::string out = "index,a1,a2,a3,d,c0,c1,c2,target,v,oracle,oracle_m,mismatch\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.index) + ',';
        out += row.instance.family.a1.to_string() + ',';
        out += row.instance.family.a2.to_string() + ',';
        out += row.instance.family.a3.to_string() + ',';
        out += row.instance.family.constant.to_string() + ',';
        out += row.instance.family.initials[0].to_string() + ',';
        out += row.instance.family.initials[1].to_string() + ',';
        out += row.instance.family.initials[2].to_string() + ',';
        out += row.instance.target.to_string() + ',';
        out += row.condition.overall ? "1," : "0,";
        out += serialize_detail::outcome_name(row.outcome) + ',';
        out += serialize_detail::oracle_m_cell(row.outcome) + ',';
        out += row.mismatch ? "1\n" : "0\n";
    }
    return out;
}

}  // namespace reconv
