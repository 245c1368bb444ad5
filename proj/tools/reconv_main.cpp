// reconv: decide whether a rational recurrence sequence becomes exactly
// equal to a target value, simulate it, verify the series identities its
// trajectory satisfies, and sweep closed-form conditions against the
// simulation oracle.
//
// Exit codes: 0 success (whatever the verdict), 2 parse/validation/usage
// error, 3 I/O error.

#include "reconv/reconv.hpp"

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace reconv;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed while reading '" + path + "'");
    }
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << content;
    out.flush();
    if (!out.good()) {
        throw IoError("failed while writing '" + path + "'");
    }
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string item = text.substr(start, end - start);
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw std::invalid_argument("empty entry in rational list '" + text + "'");
        }
        values.push_back(Rational::parse(item.substr(first, last - first + 1)));
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    return values;
}

Rational resolve_target(const std::optional<std::string>& flag, const RecurrenceFile& file) {
    if (flag) {
        return Rational::parse(*flag);
    }
    if (file.target) {
        return *file.target;
    }
    throw std::invalid_argument("missing target: pass --target or add a 'target =' line");
}

std::string render_clauses_text(const ConditionBreakdown& breakdown) {
    std::string out;
    for (const auto& clause : breakdown.clauses) {
        out += "  " + clause.name + ": " + clause.value.to_string() +
               (clause.satisfied ? " [ok]\n" : " [fail]\n");
    }
    return out;
}

std::string analyze_text(const Decision& decision, const Rational& target) {
    std::string out = "verdict: " + verdict_name(decision.verdict) + "\n";
    out += "method: " + std::string(method_name(decision.verdict.method)) + "\n";
    if (const auto m = decision.verdict.m()) {
        out += "M: " + std::to_string(*m) + "\n";
    }
    out += "target: " + target.to_string() + "\n";
    if (const auto* reason = decision.verdict.reason()) {
        out += "reason: " + *reason + "\n";
    }
    if (const auto* unknown = decision.verdict.unknown()) {
        out += "steps-used: " + std::to_string(unknown->steps_used) + "\n";
        out += "bits-cap-hit: " + std::string(unknown->bits_cap_hit ? "true" : "false") + "\n";
    }
    if (!decision.breakdown.clauses.empty()) {
        out += "condition:\n" + render_clauses_text(decision.breakdown);
    }
    return out;
}

std::string prefix_text(const std::vector<Rational>& prefix) {
    std::string out;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += prefix[i].to_string();
    }
    return out;
}

int run_analyze(const std::string& path, const std::optional<std::string>& target_flag,
                const OracleConfig& config, bool json) {
    const RecurrenceFile file = parse_recurrence(read_file(path));
    const Rational target = resolve_target(target_flag, file);
    Decision decision;
    if (file.is_linear()) {
        const LinearRecurrence rec = file.to_linear();
        ensure_valid(rec);
        decision = decide_combined(rec, target, config);
    } else {
        const PolynomialRecurrence rec = file.to_polynomial();
        ensure_valid(rec);
        decision = decide_combined(rec, target, config);
    }
    if (json) {
        std::cout << analyze_json(decision, target).dump(2) << "\n";
    } else {
        std::cout << analyze_text(decision, target);
    }
    return 0;
}

int run_simulate(const std::string& path, const std::optional<std::string>& target_flag,
                 const OracleConfig& config, bool json) {
    const RecurrenceFile file = parse_recurrence(read_file(path));
    const Rational target = resolve_target(target_flag, file);
    const PolynomialRecurrence rec =
        file.is_linear() ? as_polynomial(file.to_linear()) : file.to_polynomial();
    ensure_valid(rec);
    const OracleOutcome outcome = simulate(rec, target, config);

    // Converged carries its prefix; for the other outcomes the displayed
    // prefix is re-derived (every shown term already passed the bit cap).
    std::vector<Rational> prefix;
    if (const auto* converged = outcome.converged()) {
        prefix = converged->prefix;
    } else if (const auto* bound = outcome.not_within_bound()) {
        prefix = iterate(rec, rec.order - 1 + bound->steps);
    } else if (const auto* blowup = outcome.blowup()) {
        prefix = blowup->step > 0 ? iterate(rec, blowup->step - 1) : std::vector<Rational>{};
    }

    if (json) {
        Json doc = json_of(outcome, false);
        doc["target"] = target.to_string();
        doc["prefix"] = json_of(prefix);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::string out;
        if (const auto* converged = outcome.converged()) {
            out += "outcome: converged\nM: " + std::to_string(converged->m) + "\n";
        } else if (const auto* bound = outcome.not_within_bound()) {
            out += "outcome: not-within-bound\nsteps: " + std::to_string(bound->steps) + "\n";
        } else if (const auto* blowup = outcome.blowup()) {
            out += "outcome: blowup\nstep: " + std::to_string(blowup->step) +
                   "\nbits: " + std::to_string(blowup->bits) + "\n";
        }
        out += "target: " + target.to_string() + "\n";
        out += "prefix: " + prefix_text(prefix) + "\n";
        std::cout << out;
    }
    return 0;
}

std::string checks_text(const char* label, const std::vector<CoefficientCheck>& checks) {
    std::string out = std::string(label) + ":\n";
    for (const auto& check : checks) {
        out += "  x^" + std::to_string(check.index) + ": expected " + check.expected.to_string() +
               ", actual " + check.actual.to_string() + (check.matches() ? " [ok]\n" : " [fail]\n");
    }
    return out;
}

int run_verify_series(const std::string& path, const std::optional<std::string>& target_flag,
                      std::size_t degree, bool json) {
    const RecurrenceFile file = parse_recurrence(read_file(path));
    Rational target;
    if (target_flag) {
        target = Rational::parse(*target_flag);
    } else if (file.target) {
        target = *file.target;
    }

    CancellationReport report;
    if (file.is_linear()) {
        const LinearRecurrence rec = file.to_linear();
        ensure_valid(rec);
        report = check_linear_identity(rec, target, degree);
    } else {
        const PolynomialRecurrence rec = file.to_polynomial();
        ensure_valid(rec);
        const auto family = ConditionVFamily::from_recurrence(rec);
        if (!family) {
            throw std::invalid_argument(
                "verify-series supports linear recurrences and the order-3 condition-V family");
        }
        report = check_family_identity(*family, target, degree);
    }

    if (json) {
        std::cout << json_of(report).dump(2) << "\n";
    } else {
        std::string out = "degree: " + std::to_string(report.degree) + "\n";
        out += checks_text("head", report.head);
        out += "middle-all-zero: " + std::string(report.middle_all_zero ? "true" : "false") + "\n";
        if (report.first_violation) {
            out += "first-violation: x^" + std::to_string(*report.first_violation) + "\n";
        }
        out += checks_text("tail", report.tail);
        if (report.tail_at_target) {
            out += checks_text("tail-at-target", *report.tail_at_target);
        }
        out += "ok: " + std::string(report.ok() ? "true" : "false") + "\n";
        std::cout << out;
    }
    return 0;
}

struct SweepOutputs {
    std::optional<std::string> json_path;
    std::optional<std::string> csv_path;
};

template <typename Report>
int emit_sweep(const Report& report, const SweepOutputs& outputs, bool json) {
    if (outputs.json_path) {
        write_file(*outputs.json_path, json_of(report).dump(2) + "\n");
    }
    if (outputs.csv_path) {
        write_file(*outputs.csv_path, csv_of(report));
    }
    if (json) {
        std::cout << json_of(report).dump(2) << "\n";
    } else {
        std::string out = "total: " + std::to_string(report.total) + "\n";
        out += "condition-yes & oracle-converged: " +
               std::to_string(report.counts.condition_yes_oracle_converged) + "\n";
        out += "condition-yes & oracle-other: " +
               std::to_string(report.counts.condition_yes_oracle_other) + "\n";
        out += "condition-no & oracle-converged: " +
               std::to_string(report.counts.condition_no_oracle_converged) + "\n";
        out += "condition-no & oracle-other: " +
               std::to_string(report.counts.condition_no_oracle_other) + "\n";
        out += "mismatches: " + std::to_string(report.mismatches.size()) + "\n";
        if (outputs.json_path) {
            out += "wrote json: " + *outputs.json_path + "\n";
        }
        if (outputs.csv_path) {
            out += "wrote csv: " + *outputs.csv_path + "\n";
        }
        std::cout << out;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact convergence analysis for rational recurrence sequences"};
    app.require_subcommand(1);

    std::string input_path;
    std::optional<std::string> target_flag;
    std::size_t max_steps = OracleConfig{}.max_steps;
    std::size_t max_bits = OracleConfig{}.max_bits;
    std::string format = "text";
    std::size_t degree = 16;

    const auto add_common = [&](CLI::App* cmd, bool with_oracle) {
        cmd->add_option("input", input_path, ".rec input file")->required();
        cmd->add_option("--target", target_flag, "target rational K (overrides the file)");
        if (with_oracle) {
            cmd->add_option("--max-steps", max_steps, "oracle step bound");
            cmd->add_option("--max-bits", max_bits, "oracle bit-length cap");
        }
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "decide convergence to the target");
    add_common(analyze, true);

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run the exact simulation oracle");
    add_common(simulate_cmd, true);

    CLI::App* verify = app.add_subcommand("verify-series", "check series coefficient cancellation");
    add_common(verify, false);
    verify->add_option("--degree", degree, "trajectory length N for the identity check");

    CLI::App* sweep = app.add_subcommand("sweep", "cross-validate conditions against the oracle");
    std::string kind;
    std::string orders_text;
    std::string coeffs_text;
    std::string inits_text;
    std::string targets_text;
    std::string constants_text = "0";
    std::string a1_text = "0";
    std::string a2_text = "0";
    std::string a3_text = "0";
    std::string d_text = "0";
    std::string c0_text = "0";
    std::string c1_text = "0";
    std::string c2_text = "0";
    std::size_t cap = kDefaultGridCap;
    unsigned threads = 1;
    SweepOutputs outputs;
    std::string sweep_format = "text";
    sweep->add_option("--kind", kind, "which condition to sweep")
        ->check(CLI::IsMember({"linear", "condition-v"}))
        ->required();
    sweep->add_option("--orders", orders_text, "orders L (comma-separated, linear)");
    sweep->add_option("--coeffs", coeffs_text, "values for every a_k (linear)");
    sweep->add_option("--inits", inits_text, "values for every c_i (linear)");
    sweep->add_option("--targets", targets_text, "values for K")->required();
    sweep->add_option("--constants", constants_text, "values for d (linear; default 0)");
    sweep->add_option("--a1", a1_text, "values for a1 (condition-v)");
    sweep->add_option("--a2", a2_text, "values for a2 (condition-v)");
    sweep->add_option("--a3", a3_text, "values for a3 (condition-v)");
    sweep->add_option("--d", d_text, "values for d (condition-v)");
    sweep->add_option("--c0", c0_text, "values for c0 (condition-v)");
    sweep->add_option("--c1", c1_text, "values for c1 (condition-v)");
    sweep->add_option("--c2", c2_text, "values for c2 (condition-v)");
    sweep->add_option("--cap", cap, "instance cap");
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("--max-steps", max_steps, "oracle step bound");
    sweep->add_option("--max-bits", max_bits, "oracle bit-length cap");
    sweep->add_option("--json-out", outputs.json_path, "write the full report as JSON");
    sweep->add_option("--csv-out", outputs.csv_path, "write one CSV row per instance");
    sweep->add_option("--format", sweep_format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const OracleConfig config{max_steps, max_bits};
    const bool json = format == "json";

    try {
        if (analyze->parsed()) {
            return run_analyze(input_path, target_flag, config, json);
        }
        if (simulate_cmd->parsed()) {
            return run_simulate(input_path, target_flag, config, json);
        }
        if (verify->parsed()) {
            return run_verify_series(input_path, target_flag, degree, json);
        }
        if (sweep->parsed()) {
            if (kind == "linear") {
                if (orders_text.empty() || coeffs_text.empty() || inits_text.empty()) {
                    throw std::invalid_argument(
                        "linear sweep requires --orders, --coeffs and --inits");
                }
                LinearGridSpec spec;
                for (const auto& value : parse_rational_list(orders_text)) {
                    if (!value.is_integer() || value <= Rational(0)) {
                        throw std::invalid_argument("orders must be positive integers");
                    }
                    spec.orders.push_back(static_cast<std::size_t>(value.numerator().convert_to<unsigned long long>()));
                }
                spec.coeff_values = parse_rational_list(coeffs_text);
                spec.init_values = parse_rational_list(inits_text);
                spec.target_values = parse_rational_list(targets_text);
                spec.constant_values = parse_rational_list(constants_text);
                spec.cap = cap;
                return emit_sweep(sweep_linear(spec, config, threads), outputs,
                                  sweep_format == "json");
            }
            VGridSpec spec;
            spec.a1_values = parse_rational_list(a1_text);
            spec.a2_values = parse_rational_list(a2_text);
            spec.a3_values = parse_rational_list(a3_text);
            spec.constant_values = parse_rational_list(d_text);
            spec.c0_values = parse_rational_list(c0_text);
            spec.c1_values = parse_rational_list(c1_text);
            spec.c2_values = parse_rational_list(c2_text);
            spec.target_values = parse_rational_list(targets_text);
            spec.cap = cap;
            return emit_sweep(sweep_condition_v(spec, config, threads), outputs,
                              sweep_format == "json");
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
