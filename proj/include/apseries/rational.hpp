#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace aps {

/// Exact rational number. Always canonical: gcd(num, den) = 1, den > 0,
/// zero is 0/1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  Rational(long long n, long long d) {
    require(d != 0, errc::precondition, "rational with zero denominator");
    v_ = mpq_class(static_cast<long>(n), static_cast<long>(d));
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& n, const mpz_class& d) {
    require(d != 0, errc::precondition, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }

  static Rational from_string(std::string_view s);

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational inverse() const {
    require(!is_zero(), errc::precondition, "division by zero");
    return Rational(mpq_class(1) / v_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(!b.is_zero(), errc::precondition, "division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return Rational(::abs(v_)); }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  mpq_class v_;
};

inline Rational Rational::from_string(std::string_view s) {
  try {
    mpq_class q(std::string(s), 10);
    require(q.get_den() != 0, errc::parse, "zero denominator in rational literal");
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    fail(errc::parse, "bad rational literal: " + std::string(s));
  }
}

inline Rational gcd(const Rational& a, const Rational& b) {
  // gcd on Q used for content extraction: gcd(n1/d1, n2/d2) = gcd(n1,n2)/lcm(d1,d2).
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  mpz_class n = ::gcd(a.numerator(), b.numerator());
  mpz_class d = ::lcm(a.denominator(), b.denominator());
  return Rational(n, d);
}

}  // namespace aps
