#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "monorder.hpp"
#include "param_rational.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace aps {

struct VarTable {
  std::vector<std::string> names;

  static VarTable numbered(std::size_t n, std::string_view stem = "x") {
    VarTable t;
    t.names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) t.names.push_back(std::string(stem) + std::to_string(i));
    return t;
  }

  static VarTable of(std::vector<std::string> names) {
    VarTable t;
    t.names = std::move(names);
    for (std::size_t i = 0; i < t.names.size(); ++i)
      for (std::size_t j = i + 1; j < t.names.size(); ++j)
        require(t.names[i] != t.names[j], errc::precondition, "duplicate variable name");
    return t;
  }

  std::size_t size() const { return names.size(); }

  std::optional<std::size_t> index(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }
};

namespace detail {

/// Term grammar: '+'/'-'-separated products of factors; factors are rational
/// literals (p or p/q), variables, or parenthesized subexpressions, each with
/// an optional '^' natural power. Whitespace insignificant.
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarTable& vars) : text_(text), vars_(vars) {}

  Poly<Rational> parse() {
    Poly<Rational> p = expression();
    skip_ws();
    if (pos_ != text_.size()) err("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void err(const std::string& what) const {
    fail(errc::parse, what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Poly<Rational> expression() {
    Poly<Rational> acc(vars_.size());
    bool negative = false;
    if (eat('-')) negative = true;
    else (void)eat('+');
    acc = term();
    if (negative) acc = -acc;
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Poly<Rational> term() {
    Poly<Rational> acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  Poly<Rational> factor() {
    Poly<Rational> base = atom();
    if (eat('^')) {
      std::uint64_t e = natural();
      base = base.pow(e);
    }
    return base;
  }

  Poly<Rational> atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly<Rational> inner = expression();
      if (!eat(')')) err("expected ')'");
      return inner;
    }
    if (c == '-') {  // unary minus inside a factor position
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    if (c == '\0') err("unexpected end of input");
    err(std::string("unexpected character '") + c + "'");
  }

  std::uint64_t natural() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      err("expected a natural number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (1ull << 31)) err("exponent too large");
      ++pos_;
    }
    return v;
  }

  Poly<Rational> number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string num(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (dstart == pos_) err("expected denominator digits");
      std::string den(text_.substr(dstart, pos_ - dstart));
      return Poly<Rational>::constant(vars_.size(), Rational::from_string(num + "/" + den));
    }
    return Poly<Rational>::constant(vars_.size(), Rational::from_string(num));
  }

  Poly<Rational> variable() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto idx = vars_.index(name);
    if (!idx) {
      pos_ = start;
      err("unknown variable '" + name + "'");
    }
    return Poly<Rational>::variable(vars_.size(), *idx);
  }

  std::string_view text_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly<Rational> parse_poly(std::string_view text, const VarTable& vars) {
  return detail::PolyParser(text, vars).parse();
}

inline std::string format_monomial(const Exponent& e, const VarTable& vars) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars.names[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

/// Canonical text form: terms ascending under the given order (total degree
/// with lex tie-break when none is given). parse_poly round-trips it.
inline std::string format_poly(const Poly<Rational>& p, const VarTable& vars,
                               const OrderSpec* order = nullptr) {
  if (p.is_zero()) return "0";
  OrderSpec dflt = OrderSpec::total_degree(p.nvars());
  const OrderSpec& o = order ? *order : dflt;
  std::vector<const Exponent*> exps;
  exps.reserve(p.nterms());
  for (const auto& [e, c] : p.terms()) exps.push_back(&e);
  std::sort(exps.begin(), exps.end(),
            [&](const Exponent* a, const Exponent* b) { return o.less(*a, *b); });

  std::string out;
  bool first = true;
  for (const Exponent* e : exps) {
    const Rational& c = *p.coeff(*e);
    std::string mono = format_monomial(*e, vars);
    Rational a = c.abs();
    if (first) {
      out += c.sign() < 0 ? "-" : "";
      first = false;
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (mono.empty()) out += a.str();
    else if (a.is_one()) out += mono;
    else out += a.str() + "*" + mono;
  }
  return out;
}

inline std::string format_param(const ParamRational& f, const VarTable& params) {
  if (f.is_zero()) return "0";
  if (f.is_polynomial() && f.num().is_constant()) return f.num().constant_term().str();
  std::string out = "(" + format_poly(f.num(), params) + ")";
  if (!f.den().is_constant() || !f.den().constant_term().is_one())
    out += "/(" + format_poly(f.den(), params) + ")";
  return out;
}

/// Poly over Q(a,b,..): coefficients printed parenthesized.
inline std::string format_poly_param(const Poly<ParamRational>& p, const VarTable& vars,
                                     const VarTable& params, const OrderSpec* order = nullptr) {
  if (p.is_zero()) return "0";
  OrderSpec dflt = OrderSpec::total_degree(p.nvars());
  const OrderSpec& o = order ? *order : dflt;
  std::vector<const Exponent*> exps;
  exps.reserve(p.nterms());
  for (const auto& [e, c] : p.terms()) exps.push_back(&e);
  std::sort(exps.begin(), exps.end(),
            [&](const Exponent* a, const Exponent* b) { return o.less(*a, *b); });
  std::string out;
  for (const Exponent* e : exps) {
    if (!out.empty()) out += " + ";
    std::string mono = format_monomial(*e, vars);
    std::string cf = format_param(*p.coeff(*e), params);
    if (mono.empty()) out += cf;
    else if (cf == "1") out += mono;
    else out += cf + "*" + mono;
  }
  return out;
}

}  // namespace aps
