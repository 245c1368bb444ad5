#pragma once

/* Textual recurrence format (.rec files, UTF-8, LF or CRLF).
 *
 * Line-oriented; '#' starts a comment; blank lines are ignored.
 *
 *   document ::= line*
 *   line     ::= "order" "=" int
 *              | "init"  "=" rat ("," rat)*
 *              | "rule"  "=" term ("+" term)*
 *              | "target" "=" rat
 *   term     ::= rat | rat "*" factor ("*" factor)*
 *   factor   ::= "r[i-" int "]" ("^" int)?
 *   rat      ::= "-"? digits ("/" digits)?
 *
 * order, init and rule appear exactly once; target is optional.
 * Lags lie in [1, order]; factor exponents are at least 1; coefficients
 * are mandatory (1*r[i-1], never a bare r[i-1]).
 *
 * parse() canonicalizes: within a term, factors are merged per lag and
 * sorted; terms with equal factor lists are merged by summing their
 * coefficients (a zero sum keeps the term, preserving which lags the
 * rule references). render() emits the canonical form with LF endings,
 * so parse(render(f)) = f for every canonical value.
 */

#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reconv {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + message),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

struct RuleFactor {
    std::size_t lag = 1;    // k in r[i-k]
    unsigned exponent = 1;  // >= 1

    friend bool operator==(const RuleFactor&, const RuleFactor&) = default;
    friend auto operator<=>(const RuleFactor&, const RuleFactor&) = default;
};

struct RuleTerm {
    Rational coefficient;
    std::vector<RuleFactor> factors;  // sorted by lag, one entry per lag

    unsigned total_degree() const {
        unsigned degree = 0;
        for (const auto& f : factors) {
            degree += f.exponent;
        }
        return degree;
    }

    friend bool operator==(const RuleTerm&, const RuleTerm&) = default;
};

struct RecurrenceFile {
    std::size_t order = 0;
    std::vector<Rational> initials;
    std::vector<RuleTerm> rule;
    std::optional<Rational> target;

    friend bool operator==(const RecurrenceFile&, const RecurrenceFile&) = default;

    // Linear means every term has total degree <= 1.
    bool is_linear() const {
        return std::all_of(rule.begin(), rule.end(),
                           [](const RuleTerm& t) { return t.total_degree() <= 1; });
    }

    LinearRecurrence to_linear() const {
        if (!is_linear()) {
            throw std::invalid_argument("RecurrenceFile: rule is not linear");
        }
        LinearRecurrence rec;
        rec.order = order;
        rec.coeffs.assign(order, Rational());
        rec.initials = initials;
        for (const auto& term : rule) {
            if (term.factors.empty()) {
                rec.constant += term.coefficient;
            } else {
                rec.coeffs[term.factors.front().lag - 1] += term.coefficient;
            }
        }
        return rec;
    }

    PolynomialRecurrence to_polynomial() const {
        PolynomialRecurrence rec;
        rec.order = order;
        rec.initials = initials;
        unsigned max_exponent = 1;
        for (const auto& term : rule) {
            for (const auto& f : term.factors) {
                max_exponent = std::max(max_exponent, f.exponent);
            }
        }
        rec.degree_bound = max_exponent;
        for (const auto& term : rule) {
            ExponentVec exponents(order, 0);
            for (const auto& f : term.factors) {
                exponents[f.lag - 1] = f.exponent;
            }
            rec.terms[std::move(exponents)] += term.coefficient;
        }
        return rec;
    }
};

namespace dsl_detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_space(char c) { return c == ' ' || c == '\t'; }

// Scanner over one logical line; reports 1-based line/column positions.
class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line, std::size_t column_offset)
        : text_(text), line_(line), column_offset_(column_offset) {}

    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) {
            fail(std::string("expected '") + c + "' " + what);
        }
    }

    std::string_view digits() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Rational rational() {
        skip_space();
        const std::size_t start = pos_;
        const bool negative = consume_raw('-');
        const std::string_view num = digits_raw();
        if (num.empty()) {
            pos_ = start;
            fail("expected rational literal");
        }
        BigInt numerator((std::string(num)));
        BigInt denominator = 1;
        if (consume_raw('/')) {
            const std::size_t den_col = pos_;
            const std::string_view den = digits_raw();
            if (den.empty()) {
                pos_ = den_col;
                fail("expected denominator digits");
            }
            denominator = BigInt(std::string(den));
            if (denominator == 0) {
                pos_ = den_col;
                fail("zero denominator");
            }
        }
        if (negative) {
            numerator = -numerator;
        }
        return Rational(std::move(numerator), std::move(denominator));
    }

    unsigned bounded_uint(const char* what, unsigned long long max_value) {
        skip_space();
        const std::size_t start = pos_;
        const std::string_view raw = digits_raw();
        if (raw.empty()) {
            fail(std::string("expected ") + what);
        }
        if (raw.size() > 12) {
            pos_ = start;
            fail(std::string(what) + " out of range");
        }
        unsigned long long value = 0;
        for (const char c : raw) {
            value = value * 10 + static_cast<unsigned long long>(c - '0');
        }
        if (value > max_value) {
            pos_ = start;
            fail(std::string(what) + " out of range");
        }
        return static_cast<unsigned>(value);
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, column_offset_ + pos_ + 1, message);
    }

    void require_end(const char* context) {
        if (!at_end()) {
            fail(std::string("trailing garbage after ") + context);
        }
    }

private:
    bool consume_raw(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view digits_raw() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t column_offset_;
    std::size_t pos_ = 0;
};

struct RawField {
    std::string_view value;
    std::size_t line = 0;
    std::size_t value_column = 0;  // 0-based offset of the value in its line
    bool present = false;
};

inline void merge_factors(std::vector<RuleFactor>& factors) {
    std::sort(factors.begin(), factors.end(),
              [](const RuleFactor& a, const RuleFactor& b) { return a.lag < b.lag; });
    std::vector<RuleFactor> merged;
    for (const auto& f : factors) {
        if (!merged.empty() && merged.back().lag == f.lag) {
            merged.back().exponent += f.exponent;
        } else {
            merged.push_back(f);
        }
    }
    factors = std::move(merged);
}

}  // namespace dsl_detail

// Sorted, merged form: the fixed point of parse-then-render.
inline RecurrenceFile canonical(RecurrenceFile file) {
    for (auto& term : file.rule) {
        dsl_detail::merge_factors(term.factors);
    }
    std::stable_sort(file.rule.begin(), file.rule.end(),
                     [](const RuleTerm& a, const RuleTerm& b) { return a.factors < b.factors; });
    std::vector<RuleTerm> merged;
    for (auto& term : file.rule) {
        if (!merged.empty() && merged.back().factors == term.factors) {
            merged.back().coefficient += term.coefficient;
        } else {
            merged.push_back(std::move(term));
        }
    }
    file.rule = std::move(merged);
    return file;
}

inline RecurrenceFile parse_recurrence(std::string_view text) {
    using dsl_detail::LineCursor;
    using dsl_detail::RawField;

    RawField order_field;
    RawField init_field;
    RawField rule_field;
    RawField target_field;

    std::size_t line_no = 0;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        ++line_no;
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) {
            line_end = text.size();
        }
        std::string_view line = text.substr(line_start, line_end - line_start);
        const std::size_t next_start = line_end + 1;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }

        std::size_t key_start = 0;
        while (key_start < line.size() && dsl_detail::is_space(line[key_start])) {
            ++key_start;
        }
        if (key_start == line.size()) {
            if (next_start > text.size()) {
                break;
            }
            line_start = next_start;
            continue;
        }
        std::size_t key_end = key_start;
        while (key_end < line.size() && (std::isalpha(static_cast<unsigned char>(line[key_end])) != 0)) {
            ++key_end;
        }
        const std::string_view key = line.substr(key_start, key_end - key_start);

        std::size_t eq = key_end;
        while (eq < line.size() && dsl_detail::is_space(line[eq])) {
            ++eq;
        }
        if (key.empty() || eq >= line.size() || line[eq] != '=') {
            throw ParseError(line_no, key_start + 1, "expected 'key = value'");
        }

        RawField* slot = nullptr;
        if (key == "order") {
            slot = &order_field;
        } else if (key == "init") {
            slot = &init_field;
        } else if (key == "rule") {
            slot = &rule_field;
        } else if (key == "target") {
            slot = &target_field;
        } else {
            throw ParseError(line_no, key_start + 1, "unknown key '" + std::string(key) + "'");
        }
        if (slot->present) {
            throw ParseError(line_no, key_start + 1, "duplicate key '" + std::string(key) + "'");
        }
        slot->present = true;
        slot->line = line_no;
        slot->value_column = eq + 1;
        slot->value = line.substr(eq + 1);

        if (next_start > text.size()) {
            break;
        }
        line_start = next_start;
    }

    for (const auto& [field, name] :
         std::initializer_list<std::pair<const RawField*, const char*>>{
             {&order_field, "order"}, {&init_field, "init"}, {&rule_field, "rule"}}) {
        if (!field->present) {
            throw ParseError(line_no, 1, std::string("missing required key '") + name + "'");
        }
    }

    RecurrenceFile file;

    {
        LineCursor cursor(order_field.value, order_field.line, order_field.value_column);
        file.order = cursor.bounded_uint("order", 1'000'000ull);
        if (file.order == 0) {
            cursor.fail("order must be a positive integer");
        }
        cursor.require_end("order");
    }

    {
        LineCursor cursor(init_field.value, init_field.line, init_field.value_column);
        file.initials.push_back(cursor.rational());
        while (cursor.consume(',')) {
            file.initials.push_back(cursor.rational());
        }
        cursor.require_end("init");
    }

    if (target_field.present) {
        LineCursor cursor(target_field.value, target_field.line, target_field.value_column);
        file.target = cursor.rational();
        cursor.require_end("target");
    }

    {
        LineCursor cursor(rule_field.value, rule_field.line, rule_field.value_column);
        do {
            RuleTerm term;
            term.coefficient = cursor.rational();
            while (cursor.consume('*')) {
                cursor.expect('r', "to open a factor");
                cursor.expect('[', "after 'r'");
                cursor.expect('i', "inside the factor index");
                cursor.expect('-', "inside the factor index");
                RuleFactor factor;
                factor.lag = cursor.bounded_uint("lag", 1'000'000ull);
                if (factor.lag == 0) {
                    cursor.fail("lag must be at least 1");
                }
                if (factor.lag > file.order) {
                    cursor.fail("lag " + std::to_string(factor.lag) + " exceeds order " +
                                std::to_string(file.order));
                }
                cursor.expect(']', "to close the factor");
                if (cursor.consume('^')) {
                    factor.exponent = cursor.bounded_uint("exponent", 1'000'000ull);
                    if (factor.exponent == 0) {
                        cursor.fail("exponent must be at least 1");
                    }
                }
                term.factors.push_back(factor);
            }
            file.rule.push_back(std::move(term));
        } while (cursor.consume('+'));
        cursor.require_end("rule");
    }

    return canonical(std::move(file));
}

inline std::string render_term(const RuleTerm& term) {
    std::string out = term.coefficient.to_string();
    for (const auto& factor : term.factors) {
        out += "*r[i-" + std::to_string(factor.lag) + "]";
        if (factor.exponent >= 2) {
            out += "^" + std::to_string(factor.exponent);
        }
    }
    return out;
}

inline std::string render(const RecurrenceFile& file) {
    const RecurrenceFile canon = canonical(file);
    std::string out = "order = " + std::to_string(canon.order) + "\n";
    out += "init = ";
    for (std::size_t i = 0; i < canon.initials.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += canon.initials[i].to_string();
    }
    out += "\nrule = ";
    for (std::size_t i = 0; i < canon.rule.size(); ++i) {
        if (i > 0) {
            out += " + ";
        }
        out += render_term(canon.rule[i]);
    }
    out += "\n";
    if (canon.target) {
        out += "target = " + canon.target->to_string() + "\n";
    }
    return out;
}

}  // namespace reconv
