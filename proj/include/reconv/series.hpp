#pragma once

// Truncated formal power series with exact rational coefficients.
// A series carries a hard degree bound D; arithmetic discards (never
// approximates) every coefficient beyond x^D.

#include "reconv/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace reconv {

class TruncatedSeries {
public:
    // Zero series with the given bound.
    explicit TruncatedSeries(std::size_t degree_bound)
        : degree_bound_(degree_bound), coeffs_(degree_bound + 1) {}

    // Low-order coefficients; missing positions up to x^D are zero.
    TruncatedSeries(std::size_t degree_bound, std::vector<Rational> coeffs)
        : degree_bound_(degree_bound), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() > degree_bound_ + 1) {
            throw std::invalid_argument("TruncatedSeries: more coefficients than degree bound allows");
        }
        coeffs_.resize(degree_bound_ + 1);
    }

    std::size_t degree_bound() const { return degree_bound_; }

    const Rational& coeff(std::size_t i) const {
        if (i > degree_bound_) {
            throw std::invalid_argument("TruncatedSeries: coefficient index exceeds degree bound");
        }
        return coeffs_[i];
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        require_same_bound(a, b);
        std::vector<Rational> out(a.degree_bound_ + 1);
        for (std::size_t i = 0; i <= a.degree_bound_; ++i) {
            out[i] = a.coeffs_[i] + b.coeffs_[i];
        }
        return TruncatedSeries(a.degree_bound_, std::move(out));
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        require_same_bound(a, b);
        std::vector<Rational> out(a.degree_bound_ + 1);
        for (std::size_t i = 0; i <= a.degree_bound_; ++i) {
            out[i] = a.coeffs_[i] - b.coeffs_[i];
        }
        return TruncatedSeries(a.degree_bound_, std::move(out));
    }

    // Cauchy product, truncated at the shared degree bound.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        require_same_bound(a, b);
        std::vector<Rational> out(a.degree_bound_ + 1);
        for (std::size_t i = 0; i <= a.degree_bound_; ++i) {
            if (a.coeffs_[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; i + j <= a.degree_bound_; ++j) {
                if (!b.coeffs_[j].is_zero()) {
                    out[i + j] += a.coeffs_[i] * b.coeffs_[j];
                }
            }
        }
        return TruncatedSeries(a.degree_bound_, std::move(out));
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.degree_bound_ == b.degree_bound_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

private:
    static void require_same_bound(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.degree_bound_ != b.degree_bound_) {
            throw std::invalid_argument("TruncatedSeries: mismatched degree bounds");
        }
    }

    std::size_t degree_bound_;
    std::vector<Rational> coeffs_;  // size degree_bound_ + 1
};

}  // namespace reconv
