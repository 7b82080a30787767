#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace aps {

/// Exact quotient f/g, or nullopt when g does not divide f.
/// Lex leading-term division; valid over any coefficient field.
template <class K>
std::optional<Poly<K>> divide_exact(const Poly<K>& f, const Poly<K>& g) {
  require(!g.is_zero(), errc::precondition, "division by zero polynomial");
  if (f.is_zero()) return Poly<K>::zero(f.nvars());
  require(f.nvars() == g.nvars() || g.is_constant() || f.is_constant(), errc::dimension,
          "variable count mismatch");
  std::size_t n = std::max(f.nvars(), g.nvars());
  Poly<K> r = f.nvars() == n ? f : f + Poly<K>::zero(n);
  Poly<K> gg = g.nvars() == n ? g : g + Poly<K>::zero(n);
  Poly<K> q(n);
  auto [eg, cg] = gg.lex_lead();
  while (!r.is_zero()) {
    auto [er, cr] = r.lex_lead();
    if (!exp_divides(eg, er)) return std::nullopt;
    Exponent e = exp_sub(er, eg);
    K c = cr / cg;
    q.add_term(e, c);
    r -= gg.shifted(e, c);
  }
  return q;
}

namespace detail {

/// Highest variable index occurring in f or g, if any.
template <class K>
std::optional<std::size_t> top_var(const Poly<K>& f, const Poly<K>& g) {
  std::size_t n = std::max(f.nvars(), g.nvars());
  for (std::size_t v = n; v-- > 0;) {
    if ((v < f.nvars() && f.degree_in(v) > 0) || (v < g.nvars() && g.degree_in(v) > 0))
      return v;
  }
  return std::nullopt;
}

/// Pseudo-remainder of f by g with respect to x_v: lc_v(g)^k * f = q*g + r with
/// deg_v(r) < deg_v(g).
template <class K>
Poly<K> prem(Poly<K> f, const Poly<K>& g, std::size_t v) {
  std::int64_t dg = g.degree_in(v);
  require(dg >= 0, errc::internal, "pseudo-division by zero");
  Poly<K> lcg = g.coeff_in(v, static_cast<std::uint32_t>(dg));
  while (!f.is_zero()) {
    std::int64_t df = f.degree_in(v);
    if (df < dg) break;
    Poly<K> lcf = f.coeff_in(v, static_cast<std::uint32_t>(df));
    Exponent shift(f.nvars(), 0);
    shift[v] = static_cast<std::uint32_t>(df - dg);
    f = f * lcg - (g * lcf).shifted(shift, K(1));
  }
  return f;
}

}  // namespace detail

template <class K>
Poly<K> poly_gcd(const Poly<K>& a, const Poly<K>& b);

/// Content of f with respect to x_v: gcd of its x_v-coefficients.
template <class K>
Poly<K> poly_content_in(const Poly<K>& f, std::size_t v) {
  Poly<K> c(f.nvars());
  std::int64_t d = f.degree_in(v);
  for (std::int64_t j = 0; j <= d; ++j) {
    Poly<K> cj = f.coeff_in(v, static_cast<std::uint32_t>(j));
    if (cj.is_zero()) continue;
    c = poly_gcd(c, cj);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

/// Normalize so the lex leading coefficient is 1.
template <class K>
Poly<K> poly_monic_lex(const Poly<K>& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.lex_lead().second.inverse());
}

/// gcd in K[x1..xn], normalized lex-monic. Primitive PRS recursion on the
/// number of occurring variables. Operands of different arity are embedded
/// into the larger ring.
template <class K>
Poly<K> poly_gcd(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero()) return poly_monic_lex(b);
  if (b.is_zero()) return poly_monic_lex(a);
  if (a.is_constant() || b.is_constant()) return Poly<K>::constant(std::max(a.nvars(), b.nvars()), K(1));
  if (a.nvars() != b.nvars()) {
    std::size_t n = std::max(a.nvars(), b.nvars());
    Poly<K> aa = a, bb = b;
    while (aa.nvars() < n) aa = aa.insert_var(aa.nvars());
    while (bb.nvars() < n) bb = bb.insert_var(bb.nvars());
    return poly_gcd(aa, bb);
  }
  auto vo = detail::top_var(a, b);
  if (!vo) return Poly<K>::constant(a.nvars(), K(1));
  std::size_t v = *vo;

  Poly<K> ca = poly_content_in(a, v);
  Poly<K> cb = poly_content_in(b, v);
  Poly<K> f = *divide_exact(a, ca);
  Poly<K> g = *divide_exact(b, cb);
  Poly<K> cont = poly_gcd(ca, cb);

  if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
  while (true) {
    Poly<K> r = detail::prem(f, g, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) <= 0) return poly_monic_lex(cont);  // coprime in x_v
    f = std::move(g);
    g = *divide_exact(r, poly_content_in(r, v));
  }
  Poly<K> pp = *divide_exact(g, poly_content_in(g, v));
  return poly_monic_lex(cont * pp);
}

/// Rational content: the c with f = c * (primitive integer-coefficient poly).
inline Rational poly_rational_content(const Poly<Rational>& f) {
  Rational c;
  for (const auto& [e, k] : f.terms()) c = gcd(c, k);
  return c;
}

/// Resultant of f and g with respect to x_v, computed by fraction-free
/// (Bareiss) elimination of the Sylvester matrix. Exact over any field K.
template <class K>
Poly<K> resultant(const Poly<K>& f, const Poly<K>& g, std::size_t v) {
  std::size_t n = std::max(f.nvars(), g.nvars());
  if (f.is_zero() || g.is_zero()) return Poly<K>::zero(n);
  std::int64_t df = f.degree_in(v);
  std::int64_t dg = g.degree_in(v);
  if (df == 0 && dg == 0) return Poly<K>::constant(n, K(1));
  if (df == 0) return f.pow(static_cast<std::uint64_t>(dg));
  if (dg == 0) return g.pow(static_cast<std::uint64_t>(df));

  std::size_t N = static_cast<std::size_t>(df + dg);
  std::vector<std::vector<Poly<K>>> m(N, std::vector<Poly<K>>(N, Poly<K>::zero(n)));
  // dg rows of f coefficients, df rows of g coefficients, highest degree first.
  for (std::int64_t r = 0; r < dg; ++r)
    for (std::int64_t j = 0; j <= df; ++j)
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] =
          f.coeff_in(v, static_cast<std::uint32_t>(df - j));
  for (std::int64_t r = 0; r < df; ++r)
    for (std::int64_t j = 0; j <= dg; ++j)
      m[static_cast<std::size_t>(dg + r)][static_cast<std::size_t>(r + j)] =
          g.coeff_in(v, static_cast<std::uint32_t>(dg - j));

  int sign = 1;
  Poly<K> prev = Poly<K>::constant(n, K(1));
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k;
      for (std::size_t i = k + 1; i < N; ++i)
        if (!m[i][k].is_zero()) { swap_row = i; break; }
      if (swap_row == k) return Poly<K>::zero(n);  // singular: resultant 0
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        Poly<K> num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        require(q.has_value(), errc::internal, "fraction-free elimination: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Poly<K>::zero(n);
    }
    prev = m[k][k];
  }
  Poly<K> res = m[N - 1][N - 1];
  return sign < 0 ? -res : res;
}

}  // namespace aps
