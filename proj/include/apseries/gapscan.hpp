#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "division.hpp"
#include "jet.hpp"
#include "param_rational.hpp"
#include "rational.hpp"

namespace aps {

/// Degrees of the nonzero homogeneous parts of a series, with consecutive
/// ratios as exact rationals. The window note records up to which degree the
/// list is complete.
struct GapReport {
  std::vector<std::int64_t> degrees;  // strictly increasing
  std::vector<Rational> ratios;       // n(k+1)/n(k), all > 1
  std::optional<Rational> max_ratio, min_ratio;
  std::int64_t window_limit = 0;      // degrees < window_limit are complete
  bool skipped_zero_degree = false;   // a degree-0 part is excluded from ratios
};

template <class K>
GapReport gap_sequence(const Jet<K>& r) {
  require(!r.body.is_zero(), errc::precondition, "gap analysis of zero series");
  GapReport rep;
  rep.window_limit = detail::degree_floor(r.order, r.weight);
  for (const auto& [d, part] : r.body.homogeneous_parts()) {
    if (d == 0) {
      rep.skipped_zero_degree = true;
      continue;
    }
    rep.degrees.push_back(d);
  }
  for (std::size_t i = 1; i < rep.degrees.size(); ++i) {
    Rational ratio(rep.degrees[i], rep.degrees[i - 1]);
    rep.ratios.push_back(ratio);
    if (!rep.max_ratio || ratio > *rep.max_ratio) rep.max_ratio = ratio;
    if (!rep.min_ratio || ratio < *rep.min_ratio) rep.min_ratio = ratio;
  }
  return rep;
}

/// True when every observed consecutive ratio exceeds C > 1 (vacuously true
/// for a single part; the report carries the window).
inline bool hadamard_test(const GapReport& rep, const Rational& c) {
  require(c > Rational(1), errc::precondition, "Hadamard constant must exceed 1");
  for (const auto& r : rep.ratios)
    if (!(r > c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Kashiwara-Gabber closed forms: ground truth for the division engine.
// ---------------------------------------------------------------------------

/// s(x) = sum_i (-1)^i x^((a+1) a^i), truncated below degree W.
inline Jet<Rational> kg_remainder_oracle(std::int64_t a, std::int64_t W) {
  require(a >= 2, errc::precondition, "KG parameter a must be >= 2");
  Poly<Rational> s(1);
  Rational sign(1);
  for (std::int64_t e = a + 1; e < W; e *= a) {
    s.add_term(Exponent{static_cast<std::uint32_t>(e)}, sign);
    sign = -sign;
  }
  return Jet<Rational>(std::move(s), OrderSpec::total_degree(1), W);
}

/// s(x) + s(y) as a two-variable jet.
inline Jet<Rational> kg_remainder_oracle_sym(std::int64_t a, std::int64_t W) {
  Jet<Rational> s = kg_remainder_oracle(a, W);
  Poly<Rational> sym(2);
  for (const auto& [e, c] : s.body.terms()) {
    sym.add_term(Exponent{e[0], 0}, c);
    sym.add_term(Exponent{0, e[0]}, c);
  }
  return Jet<Rational>(std::move(sym), OrderSpec::total_degree(2), W);
}

/// (x - y^a)(y - x^a) expanded: the KG divisor.
inline Poly<Rational> kg_divisor(std::int64_t a) {
  require(a >= 2, errc::precondition, "KG parameter a must be >= 2");
  Poly<Rational> g(2);
  std::uint32_t ua = static_cast<std::uint32_t>(a);
  g.add_term(Exponent{1, 1}, Rational(1));
  g.add_term(Exponent{ua + 1, 0}, Rational(-1));
  g.add_term(Exponent{0, ua + 1}, Rational(-1));
  g.add_term(Exponent{ua, ua}, Rational(1));
  return g;
}

/// f_n = xy - sum_{i<=n} (-1)^i (x^((a+1)a^i) + y^((a+1)a^i)): the symmetric
/// sharpness family, with GHG remainder of order (a+1)a^(n+1).
inline Poly<Rational> kg_fn_symmetric(std::int64_t a, std::int64_t n) {
  Poly<Rational> f(2);
  f.add_term(Exponent{1, 1}, Rational(1));
  Rational sign(1);
  std::int64_t e = a + 1;
  for (std::int64_t i = 0; i <= n; ++i, e *= a) {
    f.add_term(Exponent{static_cast<std::uint32_t>(e), 0}, -sign);
    f.add_term(Exponent{0, static_cast<std::uint32_t>(e)}, -sign);
    sign = -sign;
  }
  return f;
}

/// One-sided variant subtracting only the x-powers; its remainder keeps the
/// full s(y) and therefore has order a+1, not (a+1)a^(n+1).
inline Poly<Rational> kg_fn_one_sided(std::int64_t a, std::int64_t n) {
  Poly<Rational> f(2);
  f.add_term(Exponent{1, 1}, Rational(1));
  Rational sign(1);
  std::int64_t e = a + 1;
  for (std::int64_t i = 0; i <= n; ++i, e *= a) {
    f.add_term(Exponent{static_cast<std::uint32_t>(e), 0}, -sign);
    sign = -sign;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Generic KG over Q(a, b).
// ---------------------------------------------------------------------------

/// Closed-form coefficient of x^(k^i (k+1)) in R_{a,b,-ab}(x):
/// (-1)^i a^((k^(i+1)-1)/(k-1)) b^((k^i-1)/(k-1)). Other indices vanish.
inline ParamRational kg_generic_coefficient(std::int64_t k, std::int64_t i) {
  require(k >= 2, errc::precondition, "KG parameter k must be >= 2");
  require(i >= 0, errc::precondition, "index must be >= 0");
  unsigned long long ki = 1, ki1 = 1;
  for (std::int64_t t = 0; t < i; ++t) ki *= static_cast<unsigned long long>(k);
  ki1 = ki * static_cast<unsigned long long>(k);
  std::uint32_t ea = static_cast<std::uint32_t>((ki1 - 1) / static_cast<unsigned long long>(k - 1));
  std::uint32_t eb = static_cast<std::uint32_t>((ki - 1) / static_cast<unsigned long long>(k - 1));
  Poly<Rational> mono = Poly<Rational>::monomial(2, Exponent{ea, eb}, (i % 2 == 0) ? Rational(1) : Rational(-1));
  return ParamRational(mono);
}

/// xy - a x^(k+1) - b y^(k+1) + ab x^k y^k over Q(a,b).
inline Poly<ParamRational> kg_generic_divisor(std::int64_t k) {
  require(k >= 2, errc::precondition, "KG parameter k must be >= 2");
  ParamRational pa{Poly<Rational>::variable(2, 0)};
  ParamRational pb{Poly<Rational>::variable(2, 1)};
  Poly<ParamRational> g(2);
  std::uint32_t uk = static_cast<std::uint32_t>(k);
  g.add_term(Exponent{1, 1}, ParamRational(1));
  g.add_term(Exponent{uk + 1, 0}, -pa);
  g.add_term(Exponent{0, uk + 1}, -pb);
  g.add_term(Exponent{uk, uk}, pa * pb);
  return g;
}

inline Rational param_eval(const Poly<Rational>& p, const std::vector<Rational>& at) {
  require(at.size() >= p.nvars(), errc::dimension, "evaluation point arity mismatch");
  Rational acc;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t v = 0; v < p.nvars(); ++v)
      for (std::uint32_t j = 0; j < e[v]; ++j) term *= at[v];
    acc += term;
  }
  return acc;
}

inline Rational param_eval(const ParamRational& f, const std::vector<Rational>& at) {
  Rational den = param_eval(f.den(), at);
  require(!den.is_zero(), errc::precondition, "denominator vanishes at evaluation point");
  return param_eval(f.num(), at) / den;
}

/// Swap the two parameters a <-> b.
inline ParamRational param_swap_ab(const ParamRational& f) {
  auto swap_poly = [](const Poly<Rational>& p) {
    Poly<Rational> out(p.nvars());
    for (const auto& [e, c] : p.terms()) {
      Exponent e2 = e;
      if (e2.size() >= 2) std::swap(e2[0], e2[1]);
      out.add_term(e2, c);
    }
    return out;
  };
  return ParamRational(swap_poly(f.num()), swap_poly(f.den()));
}

struct KgGenericReport {
  std::int64_t k = 0;
  std::int64_t window = 0;  // x-pure coefficients checked for degrees < window
  bool coefficients_match = false;
  bool symmetry_match = false;
  bool coefficients_polynomial = true;  // all computed coefficients lie in Q[a,b]
  std::vector<std::int64_t> matched_indices;
  std::vector<std::string> mismatches;
  DivisionResult<ParamRational> division;
  std::vector<ParamRational> r_coeffs;  // R(x) coefficients, index = degree
  std::vector<ParamRational> s_coeffs;  // S(y) coefficients, index = degree
};

/// Divide xy by the generic divisor over Q(a,b) under the order (3,2), and
/// compare the x-pure remainder part coefficient-by-coefficient with the
/// closed form; also check S(y) = R(y) with a and b swapped.
inline KgGenericReport kg_generic_divide(std::int64_t k, std::int64_t W) {
  require(W >= 4, errc::precondition, "window too small");
  KgGenericReport rep;
  rep.k = k;
  rep.window = W;

  OrderSpec lam(std::vector<std::int64_t>{3, 2});
  std::int64_t wl = 3 * W;  // x^l known for every l < W
  Poly<ParamRational> f(2);
  f.add_term(Exponent{1, 1}, ParamRational(1));
  Poly<ParamRational> g = kg_generic_divisor(k);
  rep.division = ghg_divide(Jet<ParamRational>(f, lam, wl), {Jet<ParamRational>(g, lam, wl)}, lam, wl);

  const Poly<ParamRational>& r = rep.division.remainder.body;
  rep.r_coeffs.assign(static_cast<std::size_t>(W), ParamRational());
  rep.s_coeffs.assign(static_cast<std::size_t>(W), ParamRational());
  for (const auto& [e, c] : r.terms()) {
    if (e[1] == 0 && e[0] >= 1 && e[0] < W) rep.r_coeffs[e[0]] = c;
    if (e[0] == 0 && e[1] >= 1 && e[1] < W) rep.s_coeffs[e[1]] = c;
    if (e[0] >= 1 && e[1] >= 1)
      rep.mismatches.push_back("remainder term outside Delta_0 axes at degree (" +
                               std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
    if (!c.is_polynomial()) rep.coefficients_polynomial = false;
  }

  rep.coefficients_match = true;
  std::vector<ParamRational> expected(static_cast<std::size_t>(W), ParamRational());
  for (std::int64_t i = 0;; ++i) {
    unsigned long long deg = static_cast<unsigned long long>(k + 1);
    for (std::int64_t t = 0; t < i; ++t) deg *= static_cast<unsigned long long>(k);
    if (deg >= static_cast<unsigned long long>(W)) break;
    expected[static_cast<std::size_t>(deg)] = kg_generic_coefficient(k, i);
    rep.matched_indices.push_back(static_cast<std::int64_t>(deg));
  }
  for (std::int64_t l = 1; l < W; ++l) {
    if (rep.r_coeffs[static_cast<std::size_t>(l)] != expected[static_cast<std::size_t>(l)]) {
      rep.coefficients_match = false;
      rep.mismatches.push_back("x^" + std::to_string(l) + " differs from closed form");
    }
  }

  rep.symmetry_match = true;
  for (std::int64_t l = 1; l < W; ++l) {
    if (rep.s_coeffs[static_cast<std::size_t>(l)] !=
        param_swap_ab(rep.r_coeffs[static_cast<std::size_t>(l)])) {
      rep.symmetry_match = false;
      rep.mismatches.push_back("S coefficient at degree " + std::to_string(l) +
                               " is not the parameter swap of R");
    }
  }
  return rep;
}

}  // namespace aps
