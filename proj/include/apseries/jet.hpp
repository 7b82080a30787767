#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "monorder.hpp"
#include "poly.hpp"

namespace aps {

/// Truncated power series: a polynomial body known to agree with the
/// represented series on every exponent of lambda-weight < weight.
template <class K>
struct Jet {
  Poly<K> body;
  std::int64_t weight = 0;
  OrderSpec order;

  Jet() = default;
  Jet(Poly<K> b, OrderSpec o, std::int64_t w) : body(std::move(b)), weight(w), order(std::move(o)) {
    require(order.nvars() == body.nvars(), errc::dimension, "jet order/body arity mismatch");
    require(weight >= 1, errc::precondition, "truncation weight must be >= 1");
    body = body.truncate_weighted(order.weights, weight);
  }

  std::size_t nvars() const { return body.nvars(); }
  bool body_zero() const { return body.is_zero(); }

  /// Min lambda-weight of the series; body weight if nonzero, else >= weight.
  std::int64_t lambda_floor() const {
    if (body.is_zero()) return weight;
    std::int64_t w = weight;
    for (const auto& [e, c] : body.terms()) w = std::min(w, order.weight(e));
    return w;
  }
};

namespace detail {

inline void check_same_order(const OrderSpec& a, const OrderSpec& b) {
  require(a == b, errc::dimension, "jet order mismatch");
}

/// Smallest total degree realizable with lambda-weight >= W.
inline std::int64_t degree_floor(const OrderSpec& o, std::int64_t W) {
  std::int64_t maxw = 1;
  for (auto w : o.weights) maxw = std::max(maxw, w);
  return (W + maxw - 1) / maxw;
}

}  // namespace detail

/// Order of a jet as a series: exact if the body shows a term below the
/// truncation-implied floor, otherwise only a lower bound is certified.
template <class K>
OrdResult jet_ord(const Jet<K>& f) {
  std::int64_t floor = detail::degree_floor(f.order, f.weight);
  if (f.body.is_zero()) return OrdResult::at_least(floor);
  std::int64_t d = f.body.ord().value;
  if (d < floor) return OrdResult::exact(d);
  return OrdResult::at_least(floor);
}

template <class K>
Jet<K> jet_add(const Jet<K>& a, const Jet<K>& b) {
  detail::check_same_order(a.order, b.order);
  return Jet<K>(a.body + b.body, a.order, std::min(a.weight, b.weight));
}

template <class K>
Jet<K> jet_sub(const Jet<K>& a, const Jet<K>& b) {
  detail::check_same_order(a.order, b.order);
  return Jet<K>(a.body - b.body, a.order, std::min(a.weight, b.weight));
}

template <class K>
Jet<K> jet_neg(const Jet<K>& a) {
  return Jet<K>(-a.body, a.order, a.weight);
}

template <class K>
Jet<K> jet_scale(const Jet<K>& a, const K& c) {
  return Jet<K>(a.body.scaled(c), a.order, a.weight);
}

template <class K>
Jet<K> jet_mul(const Jet<K>& a, const Jet<K>& b) {
  detail::check_same_order(a.order, b.order);
  // Result exact below min(W_a + ord(b), W_b + ord(a)).
  std::int64_t w = std::min(a.weight + b.lambda_floor(), b.weight + a.lambda_floor());
  Poly<K> prod(a.nvars());
  for (const auto& [ea, ca] : a.body.terms()) {
    std::int64_t wa = a.order.weight(ea);
    for (const auto& [eb, cb] : b.body.terms()) {
      if (wa + b.order.weight(eb) >= w) continue;
      prod.add_term(exp_add(ea, eb), ca * cb);
    }
  }
  return Jet<K>(std::move(prod), a.order, w);
}

template <class K>
Jet<K> jet_truncate(const Jet<K>& a, std::int64_t W) {
  return Jet<K>(a.body, a.order, std::min(a.weight, W));
}

/// Reciprocal of a unit jet, by Newton iteration v <- v(2 - f v).
template <class K>
Jet<K> jet_inverse(const Jet<K>& f) {
  K c0 = f.body.constant_term();
  require(!c0.is_zero(), errc::precondition, "jet inverse of a non-unit");
  std::int64_t W = f.weight;
  Poly<K> v = Poly<K>::constant(f.nvars(), c0.inverse());
  Poly<K> two = Poly<K>::constant(f.nvars(), K(2));
  std::int64_t w = 1;
  while (w < W) {
    w = std::min(2 * w, W);
    Poly<K> fw = f.body.truncate_weighted(f.order.weights, w);
    v = (v * (two - fw * v)).truncate_weighted(f.order.weights, w);
  }
  return Jet<K>(std::move(v), f.order, W);
}

/// Substitute x_v := g. Requires ord(g) > 0 so composition is defined.
/// The result weight is the sharpest bound the inputs support.
template <class K>
Jet<K> jet_substitute(const Jet<K>& f, std::size_t v, const Jet<K>& g) {
  detail::check_same_order(f.order, g.order);
  require(v < f.nvars(), errc::dimension, "substituted variable out of range");
  std::int64_t wv = f.order.weights[v];

  std::int64_t og = g.lambda_floor();
  require(og >= 1, errc::precondition, "substitution by a series of order 0");

  // Contribution from f's own truncation: minimize lambda(alpha) + j*ord(g)
  // over the unknown region lambda(alpha) + j*w_v >= W_f.
  std::int64_t bound1;
  if (f.nvars() == 1) {
    std::int64_t jmin = (f.weight + wv - 1) / wv;
    bound1 = jmin * og;
  } else if (og >= wv) {
    bound1 = f.weight;
  } else {
    bound1 = og * ((f.weight + wv - 1) / wv);
  }
  // Contribution from g's truncation through each term with positive x_v power.
  std::int64_t bound2 = bound1;
  bool has_v = false;
  for (const auto& [e, c] : f.body.terms()) {
    if (e[v] == 0) continue;
    has_v = true;
    Exponent rest = e;
    rest[v] = 0;
    std::int64_t cand = f.order.weight(rest) + (static_cast<std::int64_t>(e[v]) - 1) * og + g.weight;
    bound2 = std::min(bound2, cand);
  }
  std::int64_t W = has_v ? std::min(bound1, bound2) : bound1;

  // Horner in x_v at working weight W.
  std::int64_t dv = f.body.degree_in(v);
  Poly<K> acc(f.nvars());
  for (std::int64_t j = std::max<std::int64_t>(dv, 0); j >= 0; --j) {
    acc = (acc * g.body).truncate_weighted(f.order.weights, W);
    acc += f.body.coeff_in(v, static_cast<std::uint32_t>(j));
  }
  return Jet<K>(std::move(acc), f.order, W);
}

/// Vector of jets sharing one truncation weight and order.
template <class K>
struct VectorJet {
  std::vector<Jet<K>> components;

  VectorJet() = default;
  explicit VectorJet(std::vector<Jet<K>> c) : components(std::move(c)) {
    for (std::size_t i = 1; i < components.size(); ++i) {
      detail::check_same_order(components[0].order, components[i].order);
      require(components[0].weight == components[i].weight, errc::dimension,
              "vector jet truncation mismatch");
    }
  }

  std::size_t size() const { return components.size(); }
  const Jet<K>& operator[](std::size_t i) const { return components[i]; }
};

}  // namespace aps
