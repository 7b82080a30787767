#pragma once

#include <cstdint>
#include <vector>

#include "poly.hpp"

namespace aps {

/// Monomial order induced by a linear form with positive integer weights:
/// alpha <= beta iff (lambda(alpha), alpha_1..alpha_n) <=_lex (lambda(beta), beta_1..beta_n).
struct OrderSpec {
  std::vector<std::int64_t> weights;

  OrderSpec() = default;
  explicit OrderSpec(std::vector<std::int64_t> w) : weights(std::move(w)) {
    for (auto x : weights) require(x > 0, errc::precondition, "order weights must be positive");
  }

  static OrderSpec total_degree(std::size_t n) {
    return OrderSpec(std::vector<std::int64_t>(n, 1));
  }

  std::size_t nvars() const { return weights.size(); }

  std::int64_t weight(const Exponent& e) const {
    require(e.size() == weights.size(), errc::dimension, "exponent length mismatch");
    std::int64_t w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += weights[i] * e[i];
    return w;
  }

  /// -1, 0, +1; zero only for equal exponents.
  int compare(const Exponent& a, const Exponent& b) const {
    std::int64_t wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

  friend bool operator==(const OrderSpec&, const OrderSpec&) = default;
};

struct OrderLess {
  const OrderSpec* o;
  bool operator()(const Exponent& a, const Exponent& b) const { return o->less(a, b); }
};

/// Order-minimal support element and its coefficient: in(f).
template <class K>
std::pair<Exponent, K> initial_term(const Poly<K>& f, const OrderSpec& o) {
  require(!f.is_zero(), errc::precondition, "initial term of zero (empty support)");
  auto it = f.terms().begin();
  const Exponent* best = &it->first;
  const K* bc = &it->second;
  for (++it; it != f.terms().end(); ++it)
    if (o.less(it->first, *best)) { best = &it->first; bc = &it->second; }
  return {*best, *bc};
}

template <class K>
Exponent initial_exponent(const Poly<K>& f, const OrderSpec& o) {
  return initial_term(f, o).first;
}

/// Staircase regions Delta_0..Delta_s cut out by the divisors' initial
/// exponents: Delta_i = (leader_i + N^n) \ union of earlier ones, Delta_0 the rest.
struct RegionPartition {
  std::vector<Exponent> leaders;

  RegionPartition() = default;
  explicit RegionPartition(std::vector<Exponent> l) : leaders(std::move(l)) {}

  std::size_t size() const { return leaders.size(); }

  /// Index in {0..s}; 0 means the remainder region.
  std::size_t classify(const Exponent& e) const {
    for (std::size_t i = 0; i < leaders.size(); ++i)
      if (exp_divides(leaders[i], e)) return i + 1;
    return 0;
  }
};

}  // namespace aps
