#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace aps {

/// Multi-index exponent vector; length = ambient variable count.
using Exponent = std::vector<std::uint32_t>;

inline std::int64_t total_degree(const Exponent& e) {
  std::int64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

inline Exponent exp_add(const Exponent& a, const Exponent& b) {
  require(a.size() == b.size(), errc::dimension, "exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// Componentwise a <= b, i.e. x^a divides x^b.
inline bool exp_divides(const Exponent& a, const Exponent& b) {
  require(a.size() == b.size(), errc::dimension, "exponent length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponent exp_sub(const Exponent& a, const Exponent& b) {
  require(exp_divides(b, a), errc::internal, "exponent subtraction underflow");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

struct ExpLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Ord of a polynomial: a finite value, or +infinity (zero polynomial), or a
/// certified lower bound when truncation hides the answer.
struct OrdResult {
  enum class Kind { exact, at_least, infinite } kind;
  std::int64_t value = 0;  // meaningful for exact / at_least

  static OrdResult exact(std::int64_t v) { return {Kind::exact, v}; }
  static OrdResult at_least(std::int64_t v) { return {Kind::at_least, v}; }
  static OrdResult infinite() { return {Kind::infinite, 0}; }

  bool is_exact() const { return kind == Kind::exact; }
  friend bool operator==(const OrdResult&, const OrdResult&) = default;
};

/// Sparse multivariate polynomial over an exact coefficient field K.
/// Terms are stored without zero coefficients, keyed lexicographically, so
/// iteration order is deterministic. Binary operations broadcast a constant
/// (or zero) operand across variable counts; anything else must match.
template <class K>
class Poly {
 public:
  using TermMap = std::map<Exponent, K, ExpLexLess>;

  Poly() : nvars_(0) {}
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly zero(std::size_t nvars) { return Poly(nvars); }

  static Poly constant(std::size_t nvars, const K& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Exponent(nvars, 0), c);
    return p;
  }

  static Poly monomial(std::size_t nvars, const Exponent& e, const K& c) {
    require(e.size() == nvars, errc::dimension, "monomial exponent length mismatch");
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t i, const K& c = K(1)) {
    require(i < nvars, errc::dimension, "variable index out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e, c);
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  std::size_t nterms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  const K* coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? nullptr : &it->second;
  }

  K constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? K() : it->second;
  }

  void add_term(const Exponent& e, const K& c) {
    require(e.size() == nvars_, errc::dimension, "term exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Max total degree; -1 for the zero polynomial.
  std::int64_t degree() const {
    std::int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  std::int64_t degree_in(std::size_t v) const {
    std::int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max<std::int64_t>(d, e[v]);
    return d;
  }

  /// Min total degree over the support; +infinity marker for zero.
  OrdResult ord() const {
    if (terms_.empty()) return OrdResult::infinite();
    std::int64_t d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_) d = std::min(d, total_degree(e));
    return OrdResult::exact(d);
  }

  /// Nonzero homogeneous parts, sorted by strictly increasing degree.
  std::vector<std::pair<std::int64_t, Poly>> homogeneous_parts() const {
    std::map<std::int64_t, Poly> by_deg;
    for (const auto& [e, c] : terms_) {
      auto [it, fresh] = by_deg.try_emplace(total_degree(e), Poly(nvars_));
      it->second.terms_.emplace(e, c);
    }
    std::vector<std::pair<std::int64_t, Poly>> out;
    out.reserve(by_deg.size());
    for (auto& [d, p] : by_deg) out.emplace_back(d, std::move(p));
    return out;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    auto [x, y] = broadcast(a, b);
    Poly r = x;
    for (const auto& [e, c] : y.terms_) r.add_term(e, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    auto [x, y] = broadcast(a, b);
    Poly r = x;
    for (const auto& [e, c] : y.terms_) r.add_term(e, -c);
    return r;
  }
  Poly operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    auto [x, y] = broadcast(a, b);
    Poly r(x.nvars_);
    for (const auto& [ea, ca] : x.terms_)
      for (const auto& [eb, cb] : y.terms_) r.add_term(exp_add(ea, eb), ca * cb);
    return r;
  }
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

  Poly scaled(const K& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
  }

  /// this * c*x^e.
  Poly shifted(const Exponent& e, const K& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [ea, ca] : terms_) r.terms_.emplace(exp_add(ea, e), ca * c);
    return r;
  }

  Poly pow(std::uint64_t n) const {
    Poly r = constant(nvars_, K(1));
    Poly b = *this;
    while (n) {
      if (n & 1) r = r * b;
      b = (n >>= 1) ? b * b : b;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
    auto [x, y] = broadcast(a, b);
    return x.terms_ == y.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly truncate_total(std::int64_t W) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) < W) r.terms_.emplace(e, c);
    return r;
  }

  /// Keep terms with dot(weights, e) < W.
  Poly truncate_weighted(const std::vector<std::int64_t>& weights, std::int64_t W) const {
    require(weights.size() == nvars_, errc::dimension, "weight vector length mismatch");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      std::int64_t w = 0;
      for (std::size_t i = 0; i < nvars_; ++i) w += weights[i] * e[i];
      if (w < W) r.terms_.emplace(e, c);
    }
    return r;
  }

  Poly derivative(std::size_t v) const {
    require(v < nvars_, errc::dimension, "variable index out of range");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exponent e2 = e;
      e2[v] -= 1;
      r.add_term(e2, c * K(static_cast<long long>(e[v])));
    }
    return r;
  }

  /// Coefficient of x_v^j, as a polynomial with the same nvars and x_v-exponent 0.
  Poly coeff_in(std::size_t v, std::uint32_t j) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[v] != j) continue;
      Exponent e2 = e;
      e2[v] = 0;
      r.terms_.emplace(e2, c);
    }
    return r;
  }

  /// Set x_v := 0.
  Poly restrict_zero(std::size_t v) const { return coeff_in(v, 0); }

  /// Substitute x_v := g (exact polynomial substitution).
  Poly substitute(std::size_t v, const Poly& g) const {
    require(v < nvars_, errc::dimension, "variable index out of range");
    std::int64_t dv = degree_in(v);
    if (dv <= 0) return *this;
    // Horner in x_v.
    Poly acc(nvars_);
    for (std::int64_t j = dv; j >= 0; --j) {
      acc = acc * g + coeff_in(v, static_cast<std::uint32_t>(j));
    }
    return acc;
  }

  /// Insert a fresh variable (exponent 0 everywhere) at position pos.
  Poly insert_var(std::size_t pos) const {
    require(pos <= nvars_, errc::dimension, "insert position out of range");
    Poly r(nvars_ + 1);
    for (const auto& [e, c] : terms_) {
      Exponent e2 = e;
      e2.insert(e2.begin() + static_cast<std::ptrdiff_t>(pos), 0);
      r.terms_.emplace(std::move(e2), c);
    }
    return r;
  }

  /// Remove a variable that does not occur.
  Poly remove_var(std::size_t pos) const {
    require(pos < nvars_, errc::dimension, "remove position out of range");
    require(degree_in(pos) <= 0, errc::internal, "removing an occurring variable");
    Poly r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
      Exponent e2 = e;
      e2.erase(e2.begin() + static_cast<std::ptrdiff_t>(pos));
      r.terms_.emplace(std::move(e2), c);
    }
    return r;
  }

  /// Leading term under plain lex (largest exponent).
  std::pair<Exponent, K> lex_lead() const {
    require(!terms_.empty(), errc::precondition, "leading term of zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

 private:
  static std::pair<Poly, Poly> broadcast(const Poly& a, const Poly& b) {
    if (a.nvars_ == b.nvars_) return {a, b};
    if (a.is_constant()) {
      Poly a2 = constant(b.nvars_, a.is_zero() ? K() : a.terms_.begin()->second);
      return {a2, b};
    }
    if (b.is_constant()) {
      Poly b2 = constant(a.nvars_, b.is_zero() ? K() : b.terms_.begin()->second);
      return {a, b2};
    }
    fail(errc::dimension, "variable count mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

template <class K>
OrdResult poly_ord(const Poly<K>& f) {
  return f.ord();
}

}  // namespace aps
