#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "algnum.hpp"
#include "bounds.hpp"
#include "division.hpp"
#include "gapscan.hpp"
#include "localalg.hpp"
#include "textio.hpp"

namespace aps {

/// One tool invocation. Inputs are carried as text and parsed by run(), so a
/// JobSpec can come equally from flags or from a job file.
struct JobSpec {
  std::string command;
  std::vector<std::string> variables;
  std::vector<std::int64_t> order_weights;
  std::int64_t trunc = 0;  // 0: use the default
  std::map<std::string, std::string> inputs;
  std::vector<std::string> args;  // positional arguments (bounds)
  std::optional<std::uint64_t> seed;
  bool machine = true;
};

struct RunResult {
  int status = 0;
  std::string output;
};

inline std::int64_t default_trunc() {
  if (const char* env = std::getenv("APSERIES_TRUNC")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
  }
  return 64;
}

namespace cli_detail {

class Emitter {
 public:
  explicit Emitter(bool machine) : machine_(machine) {}

  template <class T>
  void kv(const std::string& key, const T& value) {
    os_ << key << " = " << value << "\n";
  }

  void note(const std::string& text) {
    if (!machine_) os_ << text << "\n";
  }

  std::string str() const { return os_.str(); }

 private:
  bool machine_;
  std::ostringstream os_;
};

inline const std::string& need(const JobSpec& job, const std::string& key) {
  auto it = job.inputs.find(key);
  require(it != job.inputs.end(), errc::precondition, "missing input '" + key + "'");
  return it->second;
}

inline std::string get_or(const JobSpec& job, const std::string& key, const std::string& dflt) {
  auto it = job.inputs.find(key);
  return it == job.inputs.end() ? dflt : it->second;
}

inline std::int64_t to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    require(used == s.size(), errc::parse, "bad integer for " + what + ": " + s);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse, "bad integer for " + what + ": " + s);
  }
}

inline Rational to_rational(const std::string& s, const std::string& what) {
  try {
    return Rational::from_string(s);
  } catch (const error&) {
    fail(errc::parse, "bad rational for " + what + ": " + s);
  }
}

inline VarTable job_vars(const JobSpec& job, std::size_t dflt_n = 2) {
  if (!job.variables.empty()) return VarTable::of(job.variables);
  if (dflt_n == 1) return VarTable::of({"x"});
  if (dflt_n == 2) return VarTable::of({"x", "y"});
  if (dflt_n == 3) return VarTable::of({"x", "y", "z"});
  return VarTable::numbered(dflt_n);
}

inline OrderSpec job_order(const JobSpec& job, std::size_t nvars) {
  if (job.order_weights.empty()) return OrderSpec::total_degree(nvars);
  require(job.order_weights.size() == nvars, errc::dimension,
          "order weight count does not match variable count");
  return OrderSpec(job.order_weights);
}

inline std::int64_t job_trunc(const JobSpec& job) {
  std::int64_t t = job.trunc > 0 ? job.trunc : default_trunc();
  require(t >= 1, errc::precondition, "truncation weight must be >= 1");
  return t;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

/// Generators are passed as a ';'-separated list; vector components within a
/// generator as ','-wrapped in '[..]'.
inline std::vector<PolyVec> parse_generators(const std::string& text, const VarTable& vars,
                                             std::size_t s) {
  std::vector<PolyVec> gens;
  for (const std::string& chunk : split(text, ';')) {
    std::string t = chunk;
    PolyVec vec;
    if (!t.empty() && t.front() == '[') {
      require(t.back() == ']', errc::parse, "unterminated vector generator");
      for (const std::string& comp : split(t.substr(1, t.size() - 2), ','))
        vec.push_back(parse_poly(comp, vars));
    } else {
      vec.push_back(parse_poly(t, vars));
    }
    require(vec.size() == s, errc::dimension, "generator has wrong number of components");
    gens.push_back(std::move(vec));
  }
  return gens;
}

inline std::string format_ord(const OrdResult& o) {
  switch (o.kind) {
    case OrdResult::Kind::exact: return std::to_string(o.value);
    case OrdResult::Kind::at_least: return ">= " + std::to_string(o.value);
    case OrdResult::Kind::infinite: return "infinity";
  }
  return "?";
}

inline std::string csv(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline std::string csv_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out;
}

inline void emit_gap(Emitter& em, const GapReport& rep, const std::string& prefix) {
  em.kv(prefix + ".degrees", csv(rep.degrees));
  em.kv(prefix + ".ratios", csv_rationals(rep.ratios));
  if (rep.max_ratio) em.kv(prefix + ".max_ratio", rep.max_ratio->str());
  if (rep.min_ratio) em.kv(prefix + ".min_ratio", rep.min_ratio->str());
  em.kv(prefix + ".window", rep.window_limit);
}

// --- command bodies --------------------------------------------------------

inline void cmd_divide(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  OrderSpec o = job_order(job, vars.size());
  std::int64_t W = job_trunc(job);
  Poly<Rational> f = parse_poly(need(job, "f"), vars);
  std::vector<Poly<Rational>> gs;
  for (const std::string& gtext : split(need(job, "g"), ';')) gs.push_back(parse_poly(gtext, vars));
  auto res = ghg_divide(f, gs, o, W);
  em.kv("command", std::string("divide"));
  em.kv("order", csv(o.weights));
  em.kv("trunc", res.trunc_weight);
  em.kv("steps", res.steps);
  for (std::size_t i = 0; i < res.partition.leaders.size(); ++i)
    em.kv("leader." + std::to_string(i + 1), format_monomial(res.partition.leaders[i], vars));
  for (std::size_t i = 0; i < res.quotients.size(); ++i)
    em.kv("quotient." + std::to_string(i + 1), format_poly(res.quotients[i].body, vars, &o));
  em.kv("remainder", format_poly(res.remainder.body, vars, &o));
  em.kv("remainder.ord", format_ord(jet_ord(res.remainder)));
}

inline void cmd_wdiv(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  std::int64_t W = job_trunc(job);
  Poly<Rational> f = parse_poly(need(job, "f"), vars);
  Poly<Rational> g = parse_poly(need(job, "g"), vars);
  std::size_t axis = vars.size() - 1;
  if (job.inputs.count("axis")) {
    auto idx = vars.index(need(job, "axis"));
    require(idx.has_value(), errc::parse, "axis is not a declared variable");
    axis = *idx;
  }
  auto res = weierstrass_divide(g, f, axis, W);
  em.kv("command", std::string("wdiv"));
  em.kv("axis", vars.names[axis]);
  em.kv("trunc", W);
  em.kv("regular_order", res.reg_order);
  em.kv("quotient", format_poly(res.quotient.body, vars));
  em.kv("remainder", format_poly(res.remainder.body, vars));
  for (std::size_t k = 0; k < res.r_coeffs.size(); ++k)
    em.kv("r." + std::to_string(k), format_poly(res.r_coeffs[k].body, vars));
}

inline void cmd_prep(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  std::int64_t W = job_trunc(job);
  Poly<Rational> f = parse_poly(need(job, "f"), vars);
  std::size_t axis = vars.size() - 1;
  if (job.inputs.count("axis")) {
    auto idx = vars.index(need(job, "axis"));
    require(idx.has_value(), errc::parse, "axis is not a declared variable");
    axis = *idx;
  }
  auto res = weierstrass_prepare(f, axis, W);
  em.kv("command", std::string("prep"));
  em.kv("axis", vars.names[axis]);
  em.kv("trunc", W);
  em.kv("regular_order", res.reg_order);
  em.kv("unit", format_poly(res.unit.body, vars));
  em.kv("wpoly", format_poly(res.wpoly.body, vars));
}

inline AnnPoly parse_ann(const std::string& text, const VarTable& vars) {
  VarTable with_t = vars;
  with_t.names.push_back("T");
  return poly_to_ann(parse_poly(text, with_t));
}

inline std::string format_ann(const AnnPoly& p, const VarTable& vars) {
  VarTable with_t = vars;
  with_t.names.push_back("T");
  return format_poly(ann_to_poly(p), with_t);
}

inline void cmd_lift(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job, 1);
  std::int64_t W = job_trunc(job);
  AnnPoly p = parse_ann(need(job, "P"), vars);
  Rational c0 = to_rational(get_or(job, "c0", "0"), "c0");
  AlgSeries f = newton_lift(p, c0, W);
  em.kv("command", std::string("lift"));
  em.kv("trunc", W);
  em.kv("height", height_of(p));
  em.kv("degree", degree_of(p));
  em.kv("jet", format_poly(f.jet.body, vars));
  em.kv("certificate", f.lift_certificate);
}

inline void cmd_annihilate(const JobSpec& job, Emitter& em) {
  std::string op = need(job, "op");
  VarTable vars = job_vars(job, 1);
  em.kv("command", std::string("annihilate"));
  em.kv("op", op);
  AnnPoly out;
  if (op == "sum" || op == "product") {
    AnnPoly pf = parse_ann(need(job, "P"), vars);
    AnnPoly pg = parse_ann(need(job, "Q"), vars);
    out = op == "sum" ? annihilator_sum(pf, pg) : annihilator_product(pf, pg);
  } else if (op == "compose") {
    // P over vars + y (its last variable), Q over vars.
    VarTable with_y = vars;
    with_y.names.push_back("y");
    AnnPoly pg = parse_ann(need(job, "P"), with_y);
    AnnPoly qa = parse_ann(need(job, "Q"), vars);
    out = annihilator_compose(pg, qa);
  } else if (op == "derivative") {
    AnnPoly p = parse_ann(need(job, "P"), vars);
    Rational c0 = to_rational(get_or(job, "c0", "0"), "c0");
    std::int64_t W = job_trunc(job);
    AlgSeries f = newton_lift(p, c0, W);
    std::size_t axis = 0;
    if (job.inputs.count("axis")) {
      auto idx = vars.index(need(job, "axis"));
      require(idx.has_value(), errc::parse, "axis is not a declared variable");
      axis = *idx;
    }
    out = annihilator_derivative(p, f, axis);
  } else {
    fail(errc::parse, "unknown annihilate op '" + op + "'");
  }
  em.kv("annihilator", format_ann(out, vars));
  em.kv("height", height_of(out));
  em.kv("degree", degree_of(out));
}

inline void cmd_bounds(const JobSpec& job, Emitter& em) {
  require(!job.args.empty(), errc::parse, "bounds: missing formula name");
  const std::string& name = job.args.front();
  std::vector<BigNat> a;
  for (std::size_t i = 1; i < job.args.size(); ++i) {
    std::int64_t v = to_int(job.args[i], "bounds argument");
    require(v >= 0, errc::precondition, "bounds arguments must be naturals");
    a.emplace_back(static_cast<unsigned long long>(v));
  }
  auto arity = [&](std::size_t n) {
    require(a.size() == n, errc::parse, "bounds " + name + ": expected " + std::to_string(n) +
                                            " arguments, got " + std::to_string(a.size()));
  };
  em.kv("command", std::string("bounds"));
  em.kv("name", name);
  if (name == "shapes") {
    for (const auto& [key, text] : bound_shapes()) em.kv(std::string(key), std::string(text));
    return;
  }
  if (name == "lincomb-deg") {
    require(!a.empty(), errc::parse, "need at least one degree");
    em.kv("value", b_lincomb_deg(a).str());
  } else if (name == "lincomb-h") {
    require(a.size() >= 3, errc::parse, "need p, maxHalpha, maxHa, degs..");
    std::vector<BigNat> degs(a.begin() + 3, a.end());
    em.kv("value", b_lincomb_h(a[0], degs, a[1], a[2]).str());
  } else if (name == "shift-h") {
    arity(3);
    em.kv("value", b_shift_h(a[0], a[1], a[2]).str());
  } else if (name == "prod-deg") {
    require(!a.empty(), errc::parse, "need at least one degree");
    em.kv("value", b_prod_deg(a).str());
  } else if (name == "prod-h") {
    require(a.size() >= 2, errc::parse, "need p, maxH, degs..");
    std::vector<BigNat> degs(a.begin() + 2, a.end());
    em.kv("value", b_prod_h(a[0], degs, a[1]).str());
  } else if (name == "root") {
    arity(1);
    RootBounds r = b_root(a[0]);
    em.kv("height", r.height.str());
    em.kv("degree", r.degree.str());
    em.kv("field_degree", r.field_degree.str());
  } else if (name == "compose-h") {
    arity(3);
    em.kv("value", b_compose_h(a[0], a[1], a[2]).str());
  } else if (name == "compose-deg") {
    arity(2);
    em.kv("value", b_compose_deg(a[0], a[1]).str());
  } else if (name == "derivative-h") {
    arity(2);
    em.kv("value", b_derivative_h(a[0], a[1]).str());
  } else if (name == "power-subst") {
    arity(2);
    auto [lo, hi] = b_power_subst(a[0], a[1]);
    em.kv("lower", lo.str());
    em.kv("upper", hi.str());
  } else if (name == "extraction-h") {
    arity(5);
    em.kv("value", b_extraction_h(a[0], a[1], a[2], a[3], a[4]).str());
  } else if (name == "extraction-deg") {
    arity(2);
    em.kv("value", b_extraction_deg(a[0], a[1]).str());
  } else if (name == "wprep") {
    arity(2);
    auto [h, d] = b_wprep(a[0], a[1]);
    em.kv("height", h.str());
    em.kv("degree", d.str());
  } else if (name == "wdiv") {
    arity(4);
    WDivBounds w = b_wdiv_sep(a[0], a[1], a[2], a[3]);
    em.kv("h_ri", w.h_ri.str());
    em.kv("h_r", w.h_r.str());
    em.kv("deg_r", w.deg_r.str());
  } else if (name == "hermann") {
    arity(4);
    em.kv("value", b_hermann(a[0], a[1], a[2], a[3]).str());
  } else if (name == "lemma-tech") {
    require(a.size() == 2 || a.size() == 3, errc::parse, "need d, a [, eps]");
    BigNat eps = a.size() == 3 ? a[2] : BigNat(1);
    em.kv("smallest_C", b_lemma_tech(a[0], a[1], eps).str());
  } else {
    fail(errc::parse, "unknown bounds formula '" + name + "'");
  }
}

inline void cmd_member(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  std::int64_t D = to_int(get_or(job, "D", std::to_string(job_trunc(job))), "D");
  std::size_t s = static_cast<std::size_t>(to_int(get_or(job, "s", "1"), "s"));
  std::vector<PolyVec> gens = parse_generators(need(job, "gens"), vars, s);
  PolyVec f = parse_generators(need(job, "f"), vars, s).at(0);
  std::int64_t c = to_int(get_or(job, "c", "0"), "c");
  TruncatedSubmodule N(gens, vars.size(), s, D, /*track=*/true);
  MembershipResult r = N.membership_mod(f, c);
  em.kv("command", std::string("member"));
  em.kv("D", D);
  em.kv("c", c);
  em.kv("member", r.member ? "true" : "false");
  for (std::size_t i = 0; i < s; ++i)
    em.kv("nf." + std::to_string(i + 1), format_poly(r.normal_form[i], vars));
  if (r.member && r.certificate)
    for (std::size_t i = 0; i < r.certificate->size(); ++i)
      em.kv("a." + std::to_string(i + 1), format_poly((*r.certificate)[i], vars));
}

inline void cmd_ord(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  std::int64_t D = to_int(get_or(job, "D", std::to_string(job_trunc(job))), "D");
  std::size_t s = static_cast<std::size_t>(to_int(get_or(job, "s", "1"), "s"));
  std::vector<PolyVec> gens;
  if (job.inputs.count("gens") && !job.inputs.at("gens").empty())
    gens = parse_generators(job.inputs.at("gens"), vars, s);
  PolyVec f = parse_generators(need(job, "f"), vars, s).at(0);
  TruncatedSubmodule N(gens, vars.size(), s, D);
  em.kv("command", std::string("ord"));
  em.kv("D", D);
  em.kv("ord", format_ord(N.ord_quotient(f)));
}

inline void cmd_hs(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  std::string kind = get_or(job, "kind", "psi");
  std::vector<Poly<Rational>> gens;
  if (job.inputs.count("gens") && !job.inputs.at("gens").empty())
    for (const std::string& t : split(job.inputs.at("gens"), ';'))
      gens.push_back(parse_poly(t, vars));
  std::int64_t d0 = to_int(get_or(job, "from", kind == "psi" ? "1" : "0"), "from");
  std::int64_t d1 = to_int(get_or(job, "to", std::to_string(d0)), "to");
  require(d1 >= d0, errc::precondition, "empty degree range");
  em.kv("command", std::string("hs"));
  em.kv("kind", kind);
  std::vector<std::pair<std::int64_t, std::int64_t>> values;
  for (std::int64_t d = d0; d <= d1; ++d) {
    std::int64_t v = kind == "psi" ? hilbert_samuel_psi(gens, vars.size(), d)
                                   : hilbert_samuel_phi(gens, vars.size(), d);
    values.emplace_back(d, v);
    em.kv(kind + "." + std::to_string(d), v);
  }
  HSProfile prof = hs_profile(values);
  if (prof.fitted_degree >= 0) em.kv("stabilized_difference_order", prof.fitted_degree);
}

inline void cmd_zescan(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job);
  std::int64_t D = to_int(get_or(job, "D", std::to_string(job_trunc(job))), "D");
  std::vector<PolyVec> gens = parse_generators(need(job, "gens"), vars, 1);
  std::int64_t cap = to_int(get_or(job, "degcap", "4"), "degcap");
  std::size_t samples = static_cast<std::size_t>(to_int(get_or(job, "samples", "0"), "samples"));
  std::uint64_t seed = job.seed.value_or(1);
  TruncatedSubmodule N(gens, vars.size(), 1, D);
  ZeroEstimateReport rep = zero_estimate_scan(N, cap, samples, seed);
  em.kv("command", std::string("zescan"));
  em.kv("D", D);
  em.kv("degcap", cap);
  em.kv("seed", rep.seed);
  em.kv("scanned", rep.scanned);
  em.kv("members_skipped", rep.members_skipped);
  if (rep.max_ratio) em.kv("max_ratio", rep.max_ratio->str());
  if (rep.witness) {
    em.kv("witness", format_poly(rep.witness->poly, vars));
    em.kv("witness.deg", rep.witness->degree);
    em.kv("witness.ord", rep.witness->ord);
  }
  em.kv("saturated_hits", rep.saturated.size());
  for (std::size_t i = 0; i < rep.saturated.size(); ++i)
    em.kv("saturated." + std::to_string(i + 1), format_poly(rep.saturated[i], vars));
  em.note("evidence only: ratios bound nothing beyond the scanned window");
}

inline void cmd_hilbertmat(const JobSpec& job, Emitter& em) {
  std::int64_t d = job.args.empty() ? to_int(need(job, "d"), "d") : to_int(job.args[0], "d");
  HilbertMatrixCheck r = hilbert_matrix_check(d);
  em.kv("command", std::string("hilbertmat"));
  em.kv("d", d);
  em.kv("det", r.det.str());
  em.kv("nonsingular", r.nonsingular ? "true" : "false");
}

inline void cmd_gaps(const JobSpec& job, Emitter& em) {
  VarTable vars = job_vars(job, 1);
  std::int64_t W = job_trunc(job);
  Poly<Rational> p = parse_poly(need(job, "poly"), vars);
  Jet<Rational> jet(p, OrderSpec::total_degree(vars.size()), W);
  GapReport rep = gap_sequence(jet);
  em.kv("command", std::string("gaps"));
  em.kv("trunc", W);
  emit_gap(em, rep, "gap");
  if (job.inputs.count("C")) {
    Rational c = to_rational(job.inputs.at("C"), "C");
    em.kv("C", c.str());
    em.kv("hadamard", hadamard_test(rep, c) ? "true" : "false");
  }
}

inline void cmd_kg(const JobSpec& job, Emitter& em) {
  std::int64_t a = to_int(get_or(job, "a", "2"), "a");
  std::int64_t W = job_trunc(job);
  VarTable vars = VarTable::of({"x", "y"});
  VarTable xonly = VarTable::of({"x"});
  Jet<Rational> s = kg_remainder_oracle(a, W);
  Jet<Rational> sym = kg_remainder_oracle_sym(a, W);
  OrderSpec o = OrderSpec::total_degree(2);
  auto div = ghg_divide(Poly<Rational>::monomial(2, Exponent{1, 1}, Rational(1)),
                        {kg_divisor(a)}, o, W);
  em.kv("command", std::string("kg"));
  em.kv("a", a);
  em.kv("trunc", W);
  em.kv("s", format_poly(s.body, xonly));
  em.kv("remainder", format_poly(div.remainder.body, vars, &o));
  em.kv("oracle_match", div.remainder.body == sym.body ? "true" : "false");
  emit_gap(em, gap_sequence(div.remainder), "gap");
}

inline void cmd_kg_generic(const JobSpec& job, Emitter& em) {
  std::int64_t k = to_int(get_or(job, "k", "2"), "k");
  std::int64_t W = job_trunc(job);
  KgGenericReport rep = kg_generic_divide(k, W);
  VarTable params = VarTable::of({"a", "b"});
  em.kv("command", std::string("kg-generic"));
  em.kv("k", k);
  em.kv("trunc", W);
  em.kv("coefficients_match", rep.coefficients_match ? "true" : "false");
  em.kv("symmetry_match", rep.symmetry_match ? "true" : "false");
  em.kv("coefficients_polynomial", rep.coefficients_polynomial ? "true" : "false");
  em.kv("indices", csv(rep.matched_indices));
  for (std::int64_t l : rep.matched_indices)
    em.kv("r." + std::to_string(l), format_param(rep.r_coeffs[static_cast<std::size_t>(l)], params));
  for (const std::string& m : rep.mismatches) em.kv("mismatch", m);
}

}  // namespace cli_detail

/// Execute a job. Deterministic given (job, seed); exact values only.
inline RunResult run(const JobSpec& job) {
  cli_detail::Emitter em(job.machine);
  try {
    if (job.command == "divide") cli_detail::cmd_divide(job, em);
    else if (job.command == "wdiv") cli_detail::cmd_wdiv(job, em);
    else if (job.command == "prep") cli_detail::cmd_prep(job, em);
    else if (job.command == "lift") cli_detail::cmd_lift(job, em);
    else if (job.command == "annihilate") cli_detail::cmd_annihilate(job, em);
    else if (job.command == "bounds") cli_detail::cmd_bounds(job, em);
    else if (job.command == "member") cli_detail::cmd_member(job, em);
    else if (job.command == "ord") cli_detail::cmd_ord(job, em);
    else if (job.command == "hs") cli_detail::cmd_hs(job, em);
    else if (job.command == "zescan") cli_detail::cmd_zescan(job, em);
    else if (job.command == "hilbertmat") cli_detail::cmd_hilbertmat(job, em);
    else if (job.command == "gaps") cli_detail::cmd_gaps(job, em);
    else if (job.command == "kg") cli_detail::cmd_kg(job, em);
    else if (job.command == "kg-generic") cli_detail::cmd_kg_generic(job, em);
    else fail(errc::parse, "unknown command '" + job.command + "'");
  } catch (const error& e) {
    cli_detail::Emitter err(job.machine);
    std::string cat;
    int status = 0;
    switch (e.kind()) {
      case errc::parse: cat = "parse"; status = 2; break;
      case errc::precondition: cat = "precondition"; status = 3; break;
      case errc::resource: cat = "resource"; status = 4; break;
      case errc::dimension: cat = "precondition"; status = 3; break;
      case errc::internal: cat = "internal"; status = 5; break;
    }
    err.kv("error.category", cat);
    err.kv("error.message", std::string(e.what()));
    return {status, err.str()};
  }
  return {0, em.str()};
}

/// Job files: 'key = value' lines, '#' comments. Keys: command, vars, order,
/// trunc, seed, format, args; anything else lands in inputs.
inline JobSpec parse_job_file(const std::string& content) {
  JobSpec job;
  std::istringstream is(content);
  std::string line;
  while (std::getline(is, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (key == "command") job.command = val;
    else if (key == "vars") {
      for (const std::string& v : cli_detail::split(val, ',')) job.variables.push_back(v);
    } else if (key == "order") {
      for (const std::string& v : cli_detail::split(val, ','))
        job.order_weights.push_back(cli_detail::to_int(v, "order weight"));
    } else if (key == "trunc") job.trunc = cli_detail::to_int(val, "trunc");
    else if (key == "seed") job.seed = static_cast<std::uint64_t>(cli_detail::to_int(val, "seed"));
    else if (key == "format") job.machine = (val != "human");
    else if (key == "args") {
      for (const std::string& v : cli_detail::split(val, ' '))
        if (!v.empty()) job.args.push_back(v);
    } else job.inputs[key] = val;
  }
  require(!job.command.empty(), errc::parse, "job file missing 'command'");
  return job;
}

}  // namespace aps
