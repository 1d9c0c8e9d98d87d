#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "fewdist/rational.hpp"

namespace fewdist {

inline bool is_square_free(std::int64_t d) {
  if (d <= 0) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// d is carried per value and must be square-free and > 1, so sqrt(d) is
/// irrational and equality is sound componentwise. A value with b = 0 is
/// field-agnostic (d may be 0, meaning "unset"); that lets rational constants
/// flow into quadratic arithmetic without naming d up front. Combining two
/// values whose set d differ raises FieldMismatch.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(int v) : a_(v) {}                       // NOLINT(runtime/explicit)
  QuadExt(Rational r) : a_(std::move(r)) {}       // NOLINT(runtime/explicit)
  QuadExt(Rational a, Rational b, std::int64_t d)
      : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ != 0 && (d_ <= 1 || !is_square_free(d_)))
      throw FieldMismatch("d must be square-free and > 1, got " + std::to_string(d_));
    if (!b_.is_zero() && d_ == 0)
      throw FieldMismatch("nonzero sqrt coefficient requires a field parameter d");
  }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  std::int64_t d() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// Exact sign without floating point: when a and b disagree in sign the
  /// comparison of a^2 against b^2 d decides (sqrt(d) irrational, so ties are
  /// impossible for nonzero values).
  int sign() const {
    if (b_.is_zero()) return a_.sign();
    if (a_.is_zero()) return b_.sign();
    int sa = a_.sign(), sb = b_.sign();
    if (sa == sb) return sa;
    std::strong_ordering cmp = (a_ * a_) <=> (b_ * b_ * Rational(d_));
    if (cmp == std::strong_ordering::equal)
      throw ConstructionInvariantViolated("a^2 = b^2 d with b != 0 contradicts irrationality");
    bool rational_dominates = cmp == std::strong_ordering::greater;
    return rational_dominates ? sa : sb;
  }

  QuadExt conjugate() const { return with_d(a_, -b_, d_); }

  /// Field norm a^2 - b^2 d; zero only for the zero element.
  Rational field_norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

  QuadExt operator-() const { return with_d(-a_, -b_, d_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return with_d(x.a_ + y.a_, x.b_ + y.b_, merge_d(x, y));
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return with_d(x.a_ - y.a_, x.b_ - y.b_, merge_d(x, y));
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    std::int64_t d = merge_d(x, y);
    Rational dd(d == 0 ? 0 : d);
    return with_d(x.a_ * y.a_ + x.b_ * y.b_ * dd, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (y.is_zero()) throw DivisionByZero("quadratic division by zero");
    std::int64_t d = merge_d(x, y);
    if (y.b_.is_zero()) return with_d(x.a_ / y.a_, x.b_ / y.a_, d);
    Rational n = y.field_norm();
    QuadExt conj = y.conjugate();
    QuadExt num = x * conj;
    return with_d(num.a_ / n, num.b_ / n, d);
  }

  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
  }
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
    int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  QuadExt abs() const { return sign() < 0 ? -*this : *this; }

 private:
  static std::int64_t merge_d(const QuadExt& x, const QuadExt& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw FieldMismatch("mixing Q(sqrt(" + std::to_string(x.d_) + ")) with Q(sqrt(" +
                        std::to_string(y.d_) + "))");
  }

  // Bypasses the public ctor checks; callers guarantee d was validated.
  static QuadExt with_d(Rational a, Rational b, std::int64_t d) {
    QuadExt q;
    q.a_ = std::move(a);
    q.b_ = std::move(b);
    q.d_ = d;
    return q;
  }

  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

inline int sign(const QuadExt& x) { return x.sign(); }

/// The scalar field a configuration lives in: plain rationals or Q(sqrt(d)).
struct FieldTag {
  enum class Kind { rational, quadratic };
  Kind kind = Kind::rational;
  std::int64_t d = 0;

  static FieldTag rational() { return FieldTag{}; }
  static FieldTag quadratic(std::int64_t d) { return FieldTag{Kind::quadratic, d}; }
  bool operator==(const FieldTag&) const = default;
};

}  // namespace fewdist
