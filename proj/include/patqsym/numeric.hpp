#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "patqsym/errors.hpp"

namespace patqsym {

// All coefficient arithmetic is exact. Integer is an arbitrary-precision
// signed integer; no floating point touches any verdict.
using Integer = mpz_class;

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(std::uint64_t n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline bool fits_uint64(const Integer& v) {
    return sgn(v) >= 0 && mpz_fits_ulong_p(v.get_mpz_t());
}

inline std::uint64_t to_uint64(const Integer& v) {
    return mpz_get_ui(v.get_mpz_t());
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

// Reduced fraction with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long v) : num_(v), den_(1) {} // NOLINT: implicit by design
    Rational(Integer v) : num_(std::move(v)), den_(1) {}
    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw precondition_error("rational with zero denominator");
        reduce();
    }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw precondition_error("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return num_.get_str();
        return num_.get_str() + "/" + den_.get_str();
    }

private:
    void reduce() {
        if (sgn(den_) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Integer num_;
    Integer den_; // > 0, gcd(|num_|, den_) == 1
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

} // namespace patqsym
