#pragma once

// Exact arithmetic in Z[x]/(x^2 - R): elements x + y*sqrt(R) with bignum
// coordinates. R need not be squarefree or positive; when R is a perfect
// square the ring is not a domain, so division is only offered where the
// divisor has non-zero norm.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace primdiv {

using BigInt = boost::multiprecision::cpp_int;

struct inexact_division : std::logic_error {
  using std::logic_error::logic_error;
};

class QuadraticInteger {
 public:
  QuadraticInteger() = default;
  QuadraticInteger(BigInt x, BigInt y, BigInt radicand) : x_(std::move(x)), y_(std::move(y)), r_(std::move(radicand)) {}

  static QuadraticInteger integer(BigInt v, BigInt radicand) { return {std::move(v), 0, std::move(radicand)}; }
  static QuadraticInteger root(BigInt radicand) { return {0, 1, std::move(radicand)}; }

  const BigInt& x() const noexcept { return x_; }
  const BigInt& y() const noexcept { return y_; }
  const BigInt& radicand() const noexcept { return r_; }

  bool is_rational() const noexcept { return y_ == 0; }
  bool is_zero() const noexcept { return x_ == 0 && y_ == 0; }
  BigInt norm() const { return x_ * x_ - r_ * y_ * y_; }
  QuadraticInteger conjugate() const { return {x_, -y_, r_}; }

  friend QuadraticInteger operator+(const QuadraticInteger& a, const QuadraticInteger& b) {
    check(a, b);
    return {a.x_ + b.x_, a.y_ + b.y_, a.r_};
  }
  friend QuadraticInteger operator-(const QuadraticInteger& a, const QuadraticInteger& b) {
    check(a, b);
    return {a.x_ - b.x_, a.y_ - b.y_, a.r_};
  }
  friend QuadraticInteger operator*(const QuadraticInteger& a, const QuadraticInteger& b) {
    check(a, b);
    return {a.x_ * b.x_ + a.r_ * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_, a.r_};
  }
  friend QuadraticInteger operator*(const BigInt& k, const QuadraticInteger& a) { return {k * a.x_, k * a.y_, a.r_}; }

  /// Exact quotient; throws inexact_division if b does not divide a.
  friend QuadraticInteger operator/(const QuadraticInteger& a, const QuadraticInteger& b) {
    check(a, b);
    const BigInt n = b.norm();
    if (n == 0) throw inexact_division("division by an element of norm zero");
    const QuadraticInteger t = a * b.conjugate();
    if (t.x_ % n != 0 || t.y_ % n != 0) throw inexact_division("quotient is not in the ring");
    return {t.x_ / n, t.y_ / n, a.r_};
  }

  friend bool operator==(const QuadraticInteger& a, const QuadraticInteger& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.r_ == b.r_;
  }

  std::string str() const { return x_.str() + (y_ < 0 ? " - " : " + ") + BigInt(abs(y_)).str() + "*sqrt(" + r_.str() + ")"; }

 private:
  static void check(const QuadraticInteger& a, const QuadraticInteger& b) {
    if (a.r_ != b.r_) throw std::invalid_argument("mixed radicands");
  }

  BigInt x_ = 0, y_ = 0, r_ = 0;
};

}  // namespace primdiv
