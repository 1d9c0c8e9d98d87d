#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include "fewdist/util.hpp"

namespace fewdist {

/// Arbitrary-precision rational in canonical form: gcd(|num|, den) = 1 and
/// den >= 1, with zero stored as 0/1. Every comparison is exact; nothing in
/// the scalar tower ever falls back to floating point.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  template <std::integral I>
  Rational(I v) : num_(v), den_(1) {}                  // NOLINT(runtime/explicit)
  Rational(BigInt v) : num_(std::move(v)), den_(1) {}  // NOLINT(runtime/explicit)
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }

  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  Rational reciprocal() const {
    if (num_ == 0) throw DivisionByZero("reciprocal of zero");
    return Rational(den_, num_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
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
    if (y.num_ == 0) throw DivisionByZero("rational division by zero");
    return Rational(x.num_ * y.den_, x.den_ * y.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    // Denominators are positive, so cross-multiplication preserves order.
    BigInt l = x.num_ * y.den_;
    BigInt r = y.num_ * x.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational pow(unsigned e) const {
    Rational result(1);
    Rational base = *this;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

 private:
  void normalize() {
    if (den_ == 0) throw ZeroDenominator("denominator must be nonzero");
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

/// Canonical reduced form with positive denominator; rejects den = 0.
inline Rational canonicalize(BigInt num, BigInt den) {
  return Rational(std::move(num), std::move(den));
}

inline int sign(const Rational& x) { return x.sign(); }

}  // namespace fewdist
