#pragma once

#include <utility>
#include <vector>

#include "division.hpp"
#include "jet.hpp"
#include "polyalg.hpp"
#include "rational.hpp"

namespace aps {

/// Annihilating polynomial P(x,T) = sum coeffs[i](x) T^i of an algebraic
/// series. coeffs are polynomials in the x-variables only; the top coefficient
/// is nonzero. claimed_minimal records an assertion, never a proof.
struct AnnPoly {
  std::vector<Poly<Rational>> coeffs;
  bool claimed_minimal = false;

  AnnPoly() = default;
  explicit AnnPoly(std::vector<Poly<Rational>> c, bool minimal = false)
      : coeffs(std::move(c)), claimed_minimal(minimal) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    require(!coeffs.empty(), errc::precondition, "zero annihilating polynomial");
  }

  std::size_t nvars() const { return coeffs.front().nvars(); }
  std::size_t degree_t() const { return coeffs.size() - 1; }

  /// Divide out any T^k factor. Valid only when reinterpreting this as an
  /// annihilator of a series known to be nonzero.
  AnnPoly strip_t_content() const {
    std::size_t shift = 0;
    while (shift + 1 < coeffs.size() && coeffs[shift].is_zero()) ++shift;
    if (!shift) return *this;
    return AnnPoly(std::vector<Poly<Rational>>(coeffs.begin() + static_cast<std::ptrdiff_t>(shift),
                                               coeffs.end()),
                   claimed_minimal);
  }
};

/// Height: max total x-degree of the coefficients. Degree: degree in T.
inline std::int64_t height_of(const AnnPoly& p) {
  std::int64_t h = 0;
  for (const auto& c : p.coeffs) h = std::max(h, c.degree());
  return h;
}

inline std::int64_t degree_of(const AnnPoly& p) { return static_cast<std::int64_t>(p.degree_t()); }

/// AnnPoly as a polynomial in (x, T) with T appended as the last variable.
inline Poly<Rational> ann_to_poly(const AnnPoly& p) {
  std::size_t n = p.nvars();
  Poly<Rational> out(n + 1);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    Poly<Rational> c = p.coeffs[j].insert_var(n);
    Exponent t(n + 1, 0);
    t[n] = static_cast<std::uint32_t>(j);
    out += c.shifted(t, Rational(1));
  }
  return out;
}

/// Inverse of ann_to_poly: split a poly in (x.., T last) by T-degree.
inline AnnPoly poly_to_ann(const Poly<Rational>& p, bool minimal = false) {
  require(!p.is_zero(), errc::precondition, "zero annihilating polynomial");
  std::size_t n = p.nvars() - 1;
  std::int64_t dt = p.degree_in(n);
  std::vector<Poly<Rational>> coeffs;
  coeffs.reserve(static_cast<std::size_t>(dt + 1));
  for (std::int64_t j = 0; j <= dt; ++j)
    coeffs.push_back(p.coeff_in(n, static_cast<std::uint32_t>(j)).remove_var(n));
  return AnnPoly(std::move(coeffs), minimal);
}

/// Divide out the rational content; annihilation is preserved.
inline AnnPoly ann_tidy(const AnnPoly& p) {
  Poly<Rational> whole = ann_to_poly(p);
  Rational c = poly_rational_content(whole);
  std::vector<Poly<Rational>> coeffs;
  coeffs.reserve(p.coeffs.size());
  for (const auto& a : p.coeffs) coeffs.push_back(a.scaled(c.inverse()));
  AnnPoly out(std::move(coeffs), p.claimed_minimal);
  if (out.coeffs.back().lex_lead().second.sign() < 0) {
    for (auto& a : out.coeffs) a = -a;
  }
  return out;
}

/// P(x, j) as a jet (Horner in T).
template <class K>
Jet<K> ann_eval(const AnnPoly& p, const Jet<K>& j) {
  Jet<K> acc(Poly<K>::zero(j.nvars()), j.order, j.weight);
  for (std::size_t i = p.coeffs.size(); i-- > 0;) {
    Poly<K> ci(j.nvars());
    for (const auto& [e, c] : p.coeffs[i].terms()) ci.add_term(e, K(c));
    acc = jet_add(jet_mul(acc, j), Jet<K>(std::move(ci), j.order, j.weight));
  }
  return acc;
}

template <>
inline Jet<Rational> ann_eval(const AnnPoly& p, const Jet<Rational>& j) {
  Jet<Rational> acc(Poly<Rational>::zero(j.nvars()), j.order, j.weight);
  for (std::size_t i = p.coeffs.size(); i-- > 0;)
    acc = jet_add(jet_mul(acc, j), Jet<Rational>(p.coeffs[i], j.order, j.weight));
  return acc;
}

/// Algebraic power series: an annihilator plus a lifted jet, with the weight
/// up to which P(x, jet) has been certified to vanish.
struct AlgSeries {
  AnnPoly ann;
  Jet<Rational> jet;
  std::int64_t lift_certificate = 0;
};

namespace detail {

inline AnnPoly ann_derivative_t(const AnnPoly& p) {
  require(p.degree_t() >= 1, errc::precondition, "T-derivative of a T-constant");
  std::vector<Poly<Rational>> c;
  c.reserve(p.degree_t());
  for (std::size_t j = 1; j < p.coeffs.size(); ++j)
    c.push_back(p.coeffs[j].scaled(Rational(static_cast<long long>(j))));
  return AnnPoly(std::move(c));
}

inline Rational ann_eval_origin(const AnnPoly& p, const Rational& t) {
  Rational acc;
  for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = acc * t + p.coeffs[i].constant_term();
  return acc;
}

}  // namespace detail

/// Newton-Hensel lift of the simple root c0 of P(0,T) to a jet j with
/// P(x, j) = 0 below weight W. Precision doubles per iteration; the residual
/// orders per step are reported through `trace` when given.
inline AlgSeries newton_lift(const AnnPoly& p, const Rational& c0, std::int64_t W,
                             std::vector<std::int64_t>* trace = nullptr) {
  std::size_t n = p.nvars();
  require(W >= 1, errc::precondition, "truncation weight must be >= 1");
  require(detail::ann_eval_origin(p, c0).is_zero(), errc::precondition,
          "lifting: c0 is not a root of P(0,T)");
  AnnPoly pt = detail::ann_derivative_t(p);
  require(!detail::ann_eval_origin(pt, c0).is_zero(), errc::precondition,
          "lifting: vanishing T-derivative at (0,c0)");

  OrderSpec td = OrderSpec::total_degree(n);
  Jet<Rational> j(Poly<Rational>::constant(n, c0), td, 1);
  std::int64_t w = 1;
  while (w < W) {
    w = std::min(2 * w, W);
    Jet<Rational> jw(j.body, td, w);
    Jet<Rational> num = ann_eval(p, jw);
    Jet<Rational> den = ann_eval(pt, jw);
    jw = jet_sub(jw, jet_mul(num, jet_inverse(den)));
    j = Jet<Rational>(jw.body, td, w);
    if (trace) {
      OrdResult res = jet_ord(ann_eval(p, Jet<Rational>(j.body, td, W)));
      trace->push_back(res.kind == OrdResult::Kind::exact ? res.value : W);
    }
  }
  Jet<Rational> residual = ann_eval(p, Jet<Rational>(j.body, td, W));
  require(residual.body.is_zero(), errc::internal, "lift residual does not vanish below W");
  return AlgSeries{p, Jet<Rational>(j.body, td, W), W};
}

/// Annihilator of g(x, alpha) from P(x,y,T) annihilating g (y is the last
/// coefficient variable of P) and Q(x,T) annihilating alpha, by the resultant
/// in y. A zero resultant means the composition degenerates.
inline AnnPoly annihilator_compose(const AnnPoly& p_g, const AnnPoly& q_alpha) {
  std::size_t n = q_alpha.nvars();
  require(p_g.nvars() == n + 1, errc::dimension,
          "compose: P must have one more coefficient variable than Q");
  // Working space (x_1..x_n, y, T): y at index n, T at index n+1.
  Poly<Rational> a = ann_to_poly(p_g);  // vars (x, y, T') with T' at n+1 already
  Poly<Rational> b = ann_to_poly(q_alpha).insert_var(n + 1);  // its T becomes y at index n
  Poly<Rational> r = resultant(a, b, n);
  require(!r.is_zero(), errc::precondition, "degenerate composition: zero resultant");
  return ann_tidy(poly_to_ann(r.remove_var(n)));
}

namespace detail {

/// Embed an annihilator's T as variable `y_index` inside an (n+2)-variable
/// working space (x.., y, T).
inline Poly<Rational> ann_embed_y(const AnnPoly& p, std::size_t nvars_out, std::size_t y_index) {
  Poly<Rational> out(nvars_out);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    Poly<Rational> c = p.coeffs[j];
    for (std::size_t v = c.nvars(); v < nvars_out; ++v) c = c.insert_var(v);
    Exponent e(nvars_out, 0);
    e[y_index] = static_cast<std::uint32_t>(j);
    out += c.shifted(e, Rational(1));
  }
  return out;
}

inline AnnPoly eliminate_y(const Poly<Rational>& a, Poly<Rational> b, std::size_t y_index) {
  // Strip monomial y-content before eliminating; harmless for annihilators of
  // nonzero series.
  std::int64_t ymin = -1;
  for (const auto& [e, c] : b.terms())
    ymin = ymin < 0 ? e[y_index] : std::min<std::int64_t>(ymin, e[y_index]);
  if (ymin > 0) {
    Exponent shift(b.nvars(), 0);
    shift[y_index] = static_cast<std::uint32_t>(ymin);
    b = *divide_exact(b, Poly<Rational>::monomial(b.nvars(), shift, Rational(1)));
  }
  Poly<Rational> r = resultant(a, b, y_index);
  require(!r.is_zero(), errc::precondition, "degenerate resultant construction");
  return ann_tidy(poly_to_ann(r.remove_var(y_index)));
}

}  // namespace detail

/// Annihilator of f+g by eliminating y from P_f(x,y) and P_g(x,T-y).
inline AnnPoly annihilator_sum(const AnnPoly& p_f, const AnnPoly& p_g) {
  std::size_t n = p_f.nvars();
  require(p_g.nvars() == n, errc::dimension, "sum: variable count mismatch");
  std::size_t y = n, t = n + 1;
  Poly<Rational> a = detail::ann_embed_y(p_f, n + 2, y);
  Poly<Rational> tm_y =
      Poly<Rational>::variable(n + 2, t) - Poly<Rational>::variable(n + 2, y);
  Poly<Rational> b(n + 2);
  for (std::size_t j = 0; j < p_g.coeffs.size(); ++j) {
    Poly<Rational> c = p_g.coeffs[j];
    for (std::size_t v = c.nvars(); v < n + 2; ++v) c = c.insert_var(v);
    b += c * tm_y.pow(j);
  }
  return detail::eliminate_y(a, b, y);
}

/// Annihilator of f*g by eliminating y from P_f(x,y) and y^D P_g(x,T/y).
inline AnnPoly annihilator_product(const AnnPoly& p_f, const AnnPoly& p_g) {
  std::size_t n = p_f.nvars();
  require(p_g.nvars() == n, errc::dimension, "product: variable count mismatch");
  std::size_t y = n, t = n + 1;
  Poly<Rational> a = detail::ann_embed_y(p_f, n + 2, y);
  Poly<Rational> b(n + 2);
  std::size_t d = p_g.degree_t();
  for (std::size_t j = 0; j < p_g.coeffs.size(); ++j) {
    Poly<Rational> c = p_g.coeffs[j];
    for (std::size_t v = c.nvars(); v < n + 2; ++v) c = c.insert_var(v);
    Exponent e(n + 2, 0);
    e[t] = static_cast<std::uint32_t>(j);
    e[y] = static_cast<std::uint32_t>(d - j);
    b += c.shifted(e, Rational(1));
  }
  return detail::eliminate_y(a, b, y);
}

/// Annihilator of the partial derivative of f along `axis`, eliminating y
/// from P(x,y) and dP/dx_axis(x,y) + T dP/dy(x,y).
inline AnnPoly annihilator_derivative(const AnnPoly& p, const AlgSeries& f, std::size_t axis) {
  std::size_t n = p.nvars();
  require(axis < n, errc::dimension, "axis out of range");
  AnnPoly pt = detail::ann_derivative_t(p);
  Jet<Rational> sep = ann_eval(pt, f.jet);
  require(!sep.body.is_zero(), errc::precondition, "separability failure: dP/dT vanishes at f");

  std::size_t y = n, t = n + 1;
  Poly<Rational> a = detail::ann_embed_y(p, n + 2, y);
  Poly<Rational> ax(n + 2);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    Poly<Rational> c = p.coeffs[j].derivative(axis);
    if (c.is_zero()) continue;
    for (std::size_t v = c.nvars(); v < n + 2; ++v) c = c.insert_var(v);
    Exponent e(n + 2, 0);
    e[y] = static_cast<std::uint32_t>(j);
    ax += c.shifted(e, Rational(1));
  }
  Poly<Rational> ay = a.derivative(y);
  Poly<Rational> b = ax + Poly<Rational>::variable(n + 2, t) * ay;
  return detail::eliminate_y(a, b, y);
}

}  // namespace aps
