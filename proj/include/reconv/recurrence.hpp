#pragma once

// Data model for linear and polynomial recurrences, validation, and
// single forward steps. Windows are ordered most-recent first: window[0]
// plays r_{i-1}, window[k] plays r_{i-1-k}.

#include "reconv/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace reconv {

// r_i = a_1 r_{i-1} + ... + a_L r_{i-L} + d, seeded by c_0..c_{L-1}.
// d = 0 is the homogeneous case.
struct LinearRecurrence {
    std::size_t order = 0;            // L
    std::vector<Rational> coeffs;     // a_1..a_L
    std::vector<Rational> initials;   // c_0..c_{L-1}
    Rational constant;                // d

    bool homogeneous() const { return constant.is_zero(); }
};

// Exponent vector (j_1..j_L): the term coefficient multiplies
// r_{i-1}^{j_1} r_{i-2}^{j_2} ... r_{i-L}^{j_L}.
using ExponentVec = std::vector<unsigned>;

// r_i = sum over stored terms. Terms are part of the declared structure:
// a stored zero coefficient still counts as a use of its lags, which is
// what keeps parametric families valid when a parameter happens to be 0.
struct PolynomialRecurrence {
    std::size_t order = 0;                  // L
    unsigned degree_bound = 1;              // H, per-variable exponent cap
    std::map<ExponentVec, Rational> terms;  // exponent vector -> coefficient
    std::vector<Rational> initials;         // c_0..c_{L-1}

    const Rational& constant_term() const {
        static const Rational zero;
        const auto it = terms.find(ExponentVec(order, 0));
        return it == terms.end() ? zero : it->second;
    }
};

inline std::optional<std::string> validate(const LinearRecurrence& rec) {
    if (rec.order == 0) {
        return "order must be positive";
    }
    if (rec.coeffs.size() != rec.order) {
        return "coeffs length must equal order";
    }
    if (rec.initials.size() != rec.order) {
        return "initials length must equal order";
    }
    if (rec.coeffs.back().is_zero()) {
        return "a_L must be nonzero";
    }
    return std::nullopt;
}

inline std::optional<std::string> validate(const PolynomialRecurrence& rec) {
    if (rec.order == 0) {
        return "order must be positive";
    }
    if (rec.degree_bound == 0) {
        return "degree bound must be positive";
    }
    if (rec.initials.size() != rec.order) {
        return "initials length must equal order";
    }
    if (rec.terms.empty()) {
        return "at least one term is required";
    }
    std::size_t max_lag_used = 0;
    for (const auto& [exponents, coeff] : rec.terms) {
        if (exponents.size() != rec.order) {
            return "exponent vector length must equal order";
        }
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            if (exponents[k] > rec.degree_bound) {
                return "exponent exceeds degree bound";
            }
            if (exponents[k] > 0 && k + 1 > max_lag_used) {
                max_lag_used = k + 1;
            }
        }
    }
    if (max_lag_used != rec.order) {
        return "maximum lag used must equal order (lag mismatch)";
    }
    return std::nullopt;
}

template <typename Recurrence>
void ensure_valid(const Recurrence& rec) {
    if (const auto error = validate(rec)) {
        throw std::invalid_argument("invalid recurrence: " + *error);
    }
}

inline Rational step_linear(const LinearRecurrence& rec, std::span<const Rational> window) {
    if (window.size() != rec.order) {
        throw std::invalid_argument("step_linear: window length must equal order");
    }
    Rational next = rec.constant;
    for (std::size_t k = 0; k < rec.order; ++k) {
        next += rec.coeffs[k] * window[k];
    }
    return next;
}

inline Rational step_polynomial(const PolynomialRecurrence& rec, std::span<const Rational> window) {
    if (window.size() != rec.order) {
        throw std::invalid_argument("step_polynomial: window length must equal order");
    }
    Rational next;
    for (const auto& [exponents, coeff] : rec.terms) {
        if (coeff.is_zero()) {
            continue;
        }
        Rational monomial = coeff;
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            if (exponents[k] > 0) {
                monomial *= pow(window[k], exponents[k]);
            }
        }
        next += monomial;
    }
    return next;
}

// Embed a linear recurrence as an H=1 polynomial one: unit exponent
// vectors carry the a_k, the all-zero vector carries d. Zero entries are
// dropped except a_L, which validity guarantees is nonzero.
inline PolynomialRecurrence as_polynomial(const LinearRecurrence& rec) {
    ensure_valid(rec);
    PolynomialRecurrence poly;
    poly.order = rec.order;
    poly.degree_bound = 1;
    poly.initials = rec.initials;
    for (std::size_t k = 0; k < rec.order; ++k) {
        if (!rec.coeffs[k].is_zero()) {
            ExponentVec unit(rec.order, 0);
            unit[k] = 1;
            poly.terms.emplace(std::move(unit), rec.coeffs[k]);
        }
    }
    if (!rec.constant.is_zero()) {
        poly.terms.emplace(ExponentVec(rec.order, 0), rec.constant);
    }
    return poly;
}

// First last_index + 1 terms r_0..r_{last_index} of the unique forward
// trajectory.
inline std::vector<Rational> iterate(const PolynomialRecurrence& rec, std::size_t last_index) {
    ensure_valid(rec);
    std::vector<Rational> trajectory = rec.initials;
    std::vector<Rational> window(rec.order);
    while (trajectory.size() <= last_index) {
        for (std::size_t k = 0; k < rec.order; ++k) {
            window[k] = trajectory[trajectory.size() - 1 - k];
        }
        trajectory.push_back(step_polynomial(rec, window));
    }
    trajectory.resize(last_index + 1);
    return trajectory;
}

inline std::vector<Rational> iterate(const LinearRecurrence& rec, std::size_t last_index) {
    return iterate(as_polynomial(rec), last_index);
}

// Which closed-form or procedure produced a verdict.
enum class Method {
    theorem1,
    theorem2,
    theorem3,
    theorem4,
    fixed_point,
    oracle,
    condition_v,
};

inline std::string_view method_name(Method method) {
    switch (method) {
        case Method::theorem1: return "theorem-1";
        case Method::theorem2: return "theorem-2";
        case Method::theorem3: return "theorem-3";
        case Method::theorem4: return "theorem-4";
        case Method::fixed_point: return "fixed-point";
        case Method::oracle: return "oracle";
        case Method::condition_v: return "condition-v";
    }
    return "unknown-method";
}

struct Converges {
    std::size_t m = 0;  // minimum index with r_i = K for all i >= m
};

struct DoesNotConverge {
    std::string reason;
};

struct Unknown {
    std::size_t steps_used = 0;
    bool bits_cap_hit = false;
};

struct Verdict {
    std::variant<Converges, DoesNotConverge, Unknown> outcome;
    Method method = Method::oracle;

    bool is_converges() const { return std::holds_alternative<Converges>(outcome); }
    bool is_does_not_converge() const { return std::holds_alternative<DoesNotConverge>(outcome); }
    bool is_unknown() const { return std::holds_alternative<Unknown>(outcome); }

    std::optional<std::size_t> m() const {
        if (const auto* c = std::get_if<Converges>(&outcome)) {
            return c->m;
        }
        return std::nullopt;
    }

    const std::string* reason() const {
        if (const auto* d = std::get_if<DoesNotConverge>(&outcome)) {
            return &d->reason;
        }
        return nullptr;
    }

    const Unknown* unknown() const { return std::get_if<Unknown>(&outcome); }
};

}  // namespace reconv
