#pragma once

// Exact rational scalar, the only number type used by the library.
// Canonical form is maintained by every operation: denominator > 0 and
// gcd(|numerator|, denominator) = 1, so equality is plain field equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace reconv {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int value) : num_(value), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}
    Rational(BigInt value) : num_(std::move(value)), den_(1) {}

    Rational(BigInt numerator, BigInt denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (den_ == 0) {
            throw std::invalid_argument("Rational: zero denominator");
        }
        normalize();
    }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator-(const Rational& x) {
        Rational r;
        r.num_ = -x.num_;
        r.den_ = x.den_;
        return r;
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) {
            throw std::invalid_argument("Rational: division by zero");
        }
        return Rational(x.num_ * y.den_, x.den_ * y.num_);
    }

    Rational& operator+=(const Rational& x) { return *this = *this + x; }
    Rational& operator-=(const Rational& x) { return *this = *this - x; }
    Rational& operator*=(const Rational& x) { return *this = *this * x; }
    Rational& operator/=(const Rational& x) { return *this = *this / x; }

    // Canonical form makes structural equality equal to value equality.
    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return x.num_ * y.den_ < y.num_ * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    // Bit length of a nonzero magnitude; 0 for zero.
    static std::size_t bit_length(const BigInt& value) {
        if (value == 0) {
            return 0;
        }
        return static_cast<std::size_t>(boost::multiprecision::msb(boost::multiprecision::abs(value))) + 1;
    }

    std::size_t max_bit_length() const {
        const std::size_t nb = bit_length(num_);
        const std::size_t db = bit_length(den_);
        return nb > db ? nb : db;
    }

    // "n" for integers, "n/d" otherwise; the same form the .rec grammar accepts.
    std::string to_string() const {
        if (den_ == 1) {
            return num_.str();
        }
        return num_.str() + "/" + den_.str();
    }

    // Accepts the literal grammar [-]digits[/digits].
    static Rational parse(std::string_view text) {
        const auto bad = [&] {
            return std::invalid_argument("Rational: malformed literal '" + std::string(text) + "'");
        };
        std::string_view s = text;
        bool negative = false;
        if (!s.empty() && s.front() == '-') {
            negative = true;
            s.remove_prefix(1);
        }
        const std::size_t slash = s.find('/');
        const std::string_view num_part = s.substr(0, slash);
        if (num_part.empty() || !all_digits(num_part)) {
            throw bad();
        }
        BigInt num{std::string(num_part)};
        BigInt den = 1;
        if (slash != std::string_view::npos) {
            const std::string_view den_part = s.substr(slash + 1);
            if (den_part.empty() || !all_digits(den_part)) {
                throw bad();
            }
            den = BigInt(std::string(den_part));
            if (den == 0) {
                throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
            }
        }
        if (negative) {
            num = -num;
        }
        return Rational(std::move(num), std::move(den));
    }

private:
    static bool all_digits(std::string_view s) {
        for (const char c : s) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        const BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;  // always > 0
};

inline Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1);
    Rational b = base;
    unsigned e = exponent;
    while (e > 0) {
        if (e & 1u) {
            result *= b;
        }
        e >>= 1u;
        if (e > 0) {
            b *= b;
        }
    }
    return result;
}

}  // namespace reconv
