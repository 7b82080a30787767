#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "jet.hpp"
#include "monorder.hpp"

namespace aps {

template <class K>
struct DivisionResult {
  std::vector<Jet<K>> quotients;  // quotient i exact below W - lambda(leader_i)
  Jet<K> remainder;               // exact below W, support in Delta_0
  RegionPartition partition;
  std::int64_t trunc_weight = 0;
  std::uint64_t steps = 0;
};

/// Division of f by g_1..g_s with respect to the order o, truncated at weight W:
/// below W, f = sum g_i q_i + r with leader_i + Supp(q_i) in Delta_i and
/// Supp(r) in Delta_0. Each reduction step cancels the order-minimal term, so
/// terms of weight >= W can be dropped eagerly and termination is guaranteed
/// by the finiteness of exponents of weight < W.
template <class K>
DivisionResult<K> ghg_divide(const Jet<K>& f, const std::vector<Jet<K>>& gs, const OrderSpec& o,
                             std::int64_t W) {
  require(!gs.empty(), errc::precondition, "empty divisor list");
  require(f.order == o, errc::dimension, "dividend order mismatch");
  std::size_t n = o.nvars();
  std::int64_t weff = std::min(W, f.weight);
  std::vector<Exponent> leaders;
  std::vector<K> lead_coeffs;
  std::vector<const Poly<K>*> tails;
  leaders.reserve(gs.size());
  for (const auto& g : gs) {
    require(g.order == o, errc::dimension, "divisor order mismatch");
    require(!g.body.is_zero(), errc::precondition, "zero divisor");
    weff = std::min(weff, g.weight);
    auto [e, c] = initial_term(g.body, o);
    require(!c.is_zero(), errc::precondition, "non-invertible leading coefficient");
    leaders.push_back(e);
    lead_coeffs.push_back(c);
    tails.push_back(&g.body);
  }
  RegionPartition part(leaders);

  std::map<Exponent, K, OrderLess> current{OrderLess{&o}};
  for (const auto& [e, c] : f.body.terms())
    if (o.weight(e) < weff) current.emplace(e, c);

  std::vector<Poly<K>> qs(gs.size(), Poly<K>(n));
  Poly<K> r(n);
  std::uint64_t steps = 0;

  while (!current.empty()) {
    auto it = current.begin();
    Exponent alpha = it->first;
    K c = it->second;
    current.erase(it);
    ++steps;

    std::size_t region = part.classify(alpha);
    if (region == 0) {
      r.add_term(alpha, c);
      continue;
    }
    std::size_t i = region - 1;
    K t = c / lead_coeffs[i];
    Exponent beta = exp_sub(alpha, leaders[i]);
    qs[i].add_term(beta, t);
    // current -= t * x^beta * g_i ; the alpha term cancels by construction.
    for (const auto& [eg, cg] : tails[i]->terms()) {
      Exponent e = exp_add(beta, eg);
      if (e == alpha) continue;
      if (o.weight(e) >= weff) continue;
      K& slot = current[e];
      slot -= t * cg;
      if (slot.is_zero()) current.erase(e);
    }
  }

  DivisionResult<K> out;
  out.partition = std::move(part);
  out.trunc_weight = weff;
  out.steps = steps;
  out.quotients.reserve(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::int64_t wq = weff - o.weight(leaders[i]);
    out.quotients.emplace_back(std::move(qs[i]), o, std::max<std::int64_t>(wq, 1));
  }
  out.remainder = Jet<K>(std::move(r), o, weff);
  return out;
}

template <class K>
DivisionResult<K> ghg_divide(const Poly<K>& f, const std::vector<Poly<K>>& gs, const OrderSpec& o,
                             std::int64_t W) {
  std::vector<Jet<K>> jg;
  jg.reserve(gs.size());
  for (const auto& g : gs) jg.emplace_back(g, o, W);
  return ghg_divide(Jet<K>(f, o, W), jg, o, W);
}

/// x_n-regularity order of f on the given axis: the order of f(0,..,0,x_axis).
/// Inputs are exact polynomials here, so the answer is always decided.
template <class K>
OrdResult regularity_order(const Poly<K>& f, std::size_t axis) {
  Poly<K> restr = f;
  for (std::size_t v = 0; v < f.nvars(); ++v)
    if (v != axis) restr = restr.restrict_zero(v);
  if (restr.is_zero()) return OrdResult::infinite();
  return OrdResult::exact(restr.ord().value);
}

/// Jet version: a vanishing restriction only certifies "not regular below
/// the truncation", reported as a lower bound on any possible order.
template <class K>
OrdResult regularity_order(const Jet<K>& f, std::size_t axis) {
  require(axis < f.nvars(), errc::dimension, "axis out of range");
  OrdResult r = regularity_order(f.body, axis);
  if (r.kind != OrdResult::Kind::infinite) return r;
  std::int64_t waxis = f.order.weights[axis];
  return OrdResult::at_least((f.weight + waxis - 1) / waxis);
}

template <class K>
struct WeierstrassResult {
  Jet<K> quotient;                // total-degree jet, exact below W
  Jet<K> remainder;               // polynomial in x_axis of degree < d
  std::vector<Jet<K>> r_coeffs;   // r = sum r_k x_axis^k, coefficients as jets
  std::int64_t reg_order = 0;
  std::uint64_t steps = 0;
};

/// Weierstrass division g = f q + r with deg_axis(r) < d, realized as GHG
/// division under the order (W+1,..,W+1,1): with that order in(f) = x_axis^d
/// and Delta_0 = {alpha_axis < d}. Operands are exact polynomials; outputs are
/// exact below total degree W.
template <class K>
WeierstrassResult<K> weierstrass_divide(const Poly<K>& g, const Poly<K>& f, std::size_t axis,
                                        std::int64_t W) {
  std::size_t n = f.nvars();
  require(axis < n, errc::dimension, "axis out of range");
  require(g.nvars() == n, errc::dimension, "dividend/divisor arity mismatch");
  require(W >= 1, errc::precondition, "truncation weight must be >= 1");
  OrdResult reg = regularity_order(f, axis);
  require(reg.is_exact(), errc::precondition, "divisor not regular on this axis");
  std::int64_t d = reg.value;
  require(d <= W, errc::precondition, "regularity order exceeds truncation weight");

  std::vector<std::int64_t> wts(n, W + 1);
  wts[axis] = 1;
  OrderSpec local(wts);
  std::int64_t cutoff = W * (W + 1);

  auto div = ghg_divide(Jet<K>(g, local, cutoff), {Jet<K>(f, local, cutoff)}, local, cutoff);

  OrderSpec td = OrderSpec::total_degree(n);
  WeierstrassResult<K> out;
  out.reg_order = d;
  out.steps = div.steps;
  out.quotient = Jet<K>(div.quotients[0].body.truncate_total(W), td, W);
  Poly<K> rbody = div.remainder.body.truncate_total(W);
  out.remainder = Jet<K>(rbody, td, W);
  out.r_coeffs.reserve(static_cast<std::size_t>(d));
  for (std::int64_t k = 0; k < d; ++k)
    out.r_coeffs.emplace_back(rbody.coeff_in(axis, static_cast<std::uint32_t>(k)), td, W);
  return out;
}

template <class K>
struct PreparationResult {
  Jet<K> unit;    // u, invertible
  Jet<K> wpoly;   // monic in x_axis of degree d, lower coefficients of positive order
  std::int64_t reg_order = 0;
};

/// Weierstrass preparation f = u * P: divide x_axis^d by f, set
/// P = x_axis^d - r and u = q^{-1}.
template <class K>
PreparationResult<K> weierstrass_prepare(const Poly<K>& f, std::size_t axis, std::int64_t W) {
  std::size_t n = f.nvars();
  OrdResult reg = regularity_order(f, axis);
  require(reg.is_exact(), errc::precondition, "series not regular on this axis");
  std::int64_t d = reg.value;
  Exponent e(n, 0);
  e[axis] = static_cast<std::uint32_t>(d);
  Poly<K> xnd = Poly<K>::monomial(n, e, K(1));

  auto div = weierstrass_divide(xnd, f, axis, W);
  require(!div.quotient.body.constant_term().is_zero(), errc::internal,
          "preparation quotient is not a unit");

  PreparationResult<K> out;
  out.reg_order = d;
  out.wpoly = Jet<K>(xnd - div.remainder.body, div.remainder.order, W);
  out.unit = jet_inverse(div.quotient);
  // Consistency: f = u * P below W.
  Jet<K> check = jet_sub(jet_mul(out.unit, out.wpoly), Jet<K>(f, out.unit.order, W));
  require(check.body.is_zero(), errc::internal, "preparation identity failed");
  return out;
}

}  // namespace aps
