#pragma once

#include <string>
#include <utility>

#include "polyalg.hpp"

namespace aps {

/// Element of Q(a1,...,am): quotient of sparse parameter polynomials with
/// rational coefficients. Canonical form: num/den polynomially coprime,
/// pair content divided out, denominator lex-monic (leading coefficient 1).
class ParamRational {
 public:
  ParamRational() : num_(0), den_(Poly<Rational>::constant(0, Rational(1))) {}
  ParamRational(long long n)
      : num_(Poly<Rational>::constant(0, Rational(n))),
        den_(Poly<Rational>::constant(0, Rational(1))) {}
  explicit ParamRational(const Rational& c)
      : num_(Poly<Rational>::constant(0, c)), den_(Poly<Rational>::constant(0, Rational(1))) {}
  explicit ParamRational(const Poly<Rational>& num)
      : num_(num), den_(Poly<Rational>::constant(num.nvars(), Rational(1))) {}
  ParamRational(Poly<Rational> num, Poly<Rational> den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), errc::precondition, "zero denominator");
    reduce();
  }

  const Poly<Rational>& num() const { return num_; }
  const Poly<Rational>& den() const { return den_; }
  std::size_t nparams() const { return std::max(num_.nvars(), den_.nvars()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_polynomial() const { return den_.is_constant(); }

  ParamRational inverse() const {
    require(!is_zero(), errc::precondition, "division by zero");
    return ParamRational(den_, num_);
  }

  friend ParamRational operator+(const ParamRational& a, const ParamRational& b) {
    return ParamRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend ParamRational operator-(const ParamRational& a, const ParamRational& b) {
    return ParamRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend ParamRational operator*(const ParamRational& a, const ParamRational& b) {
    return ParamRational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend ParamRational operator/(const ParamRational& a, const ParamRational& b) {
    require(!b.is_zero(), errc::precondition, "division by zero");
    return ParamRational(a.num_ * b.den_, a.den_ * b.num_);
  }
  ParamRational operator-() const {
    ParamRational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  ParamRational& operator+=(const ParamRational& o) { *this = *this + o; return *this; }
  ParamRational& operator-=(const ParamRational& o) { *this = *this - o; return *this; }
  ParamRational& operator*=(const ParamRational& o) { *this = *this * o; return *this; }
  ParamRational& operator/=(const ParamRational& o) { *this = *this / o; return *this; }

  friend bool operator==(const ParamRational& a, const ParamRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // canonical representatives
  }
  friend bool operator!=(const ParamRational& a, const ParamRational& b) { return !(a == b); }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly<Rational>::constant(den_.nvars(), Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      Poly<Rational> g = poly_gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
      }
    }
    // Pair content out, then denominator leading coefficient to 1.
    Rational c = gcd(poly_rational_content(num_), poly_rational_content(den_));
    if (!c.is_one() && !c.is_zero()) {
      num_ = num_.scaled(c.inverse());
      den_ = den_.scaled(c.inverse());
    }
    Rational lc = den_.lex_lead().second;
    if (!lc.is_one()) {
      num_ = num_.scaled(lc.inverse());
      den_ = den_.scaled(lc.inverse());
    }
  }

  Poly<Rational> num_, den_;
};

}  // namespace aps
