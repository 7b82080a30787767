#include <catch2/catch_amalgamated.hpp>

#include "apseries/algnum.hpp"
#include "apseries/bounds.hpp"
#include "apseries/textio.hpp"

using namespace aps;

namespace {

const VarTable kX = VarTable::of({"x"});
const VarTable kXT = VarTable::of({"x", "T"});
const VarTable kXYT = VarTable::of({"x", "y", "T"});

AnnPoly ann(const std::string& text, const VarTable& vars_with_t = kXT) {
  return poly_to_ann(parse_poly(text, vars_with_t));
}

/// Independent oracle: (1 + u)^(p/q) expanded by generalized binomial
/// coefficients, u a monomial jet argument.
Jet<Rational> binomial_series(const Rational& alpha, const Poly<Rational>& u, std::int64_t W) {
  OrderSpec o = OrderSpec::total_degree(u.nvars());
  std::int64_t ord_u = u.ord().value;
  Jet<Rational> acc(Poly<Rational>::constant(u.nvars(), Rational(1)), o, W);
  Rational coeff(1);
  Poly<Rational> upow = Poly<Rational>::constant(u.nvars(), Rational(1));
  for (std::int64_t k = 1; k * ord_u < W; ++k) {
    coeff = coeff * (alpha - Rational(k - 1)) / Rational(k);
    upow = (upow * u).truncate_total(W);
    acc = jet_add(acc, Jet<Rational>(upow.scaled(coeff), o, W));
  }
  return acc;
}

}  // namespace

TEST_CASE("height and degree extraction") {
  // minimal polynomial of a degree-7 polynomial f is T - f
  AnnPoly lin = ann("T - x^7 + 2*x^3");
  CHECK(height_of(lin) == 7);
  CHECK(degree_of(lin) == 1);

  AnnPoly pn = ann("(1 + x^4)*T^4 - 1");
  CHECK(height_of(pn) == 4);
  CHECK(degree_of(pn) == 4);

  AnnPoly sq = ann("T^2 - (1 + x)");
  CHECK(height_of(sq) == 1);
  CHECK(degree_of(sq) == 2);
}

TEST_CASE("newton lift of sqrt(1+x) matches the binomial oracle") {
  AnnPoly p = ann("T^2 - (1 + x)");
  AlgSeries f = newton_lift(p, Rational(1), 5);
  Jet<Rational> oracle = binomial_series(Rational(1, 2), parse_poly("x", kX), 5);
  CHECK(f.jet.body == oracle.body);
  // spot values: 1 + x/2 - x^2/8 + x^3/16 - 5 x^4/128
  CHECK(*f.jet.body.coeff(Exponent{0}) == Rational(1));
  CHECK(*f.jet.body.coeff(Exponent{1}) == Rational(1, 2));
  CHECK(*f.jet.body.coeff(Exponent{2}) == Rational(-1, 8));
  CHECK(*f.jet.body.coeff(Exponent{3}) == Rational(1, 16));
  CHECK(*f.jet.body.coeff(Exponent{4}) == Rational(-5, 128));
}

TEST_CASE("newton lift of a polynomial root is the truncated polynomial") {
  AnnPoly p = ann("T - x^2 - 3*x");
  AlgSeries f = newton_lift(p, Rational(0), 10);
  CHECK(f.jet.body == parse_poly("3*x + x^2", kX));
  CHECK(f.lift_certificate == 10);
}

TEST_CASE("newton lift of (1+x^2)^(-1/2) matches the binomial oracle") {
  AnnPoly p = ann("(1 + x^2)*T^2 - 1");
  AlgSeries f = newton_lift(p, Rational(1), 5);
  Jet<Rational> oracle = binomial_series(Rational(-1, 2), parse_poly("x^2", kX), 5);
  CHECK(f.jet.body == oracle.body);
  CHECK(f.jet.body == parse_poly("1 - 1/2*x^2 + 3/8*x^4", kX));
}

TEST_CASE("lift preconditions: non-root and ramified root are rejected") {
  CHECK_THROWS_AS(newton_lift(ann("T^2 - (1 + x)"), Rational(2), 5), error);
  // T^2 - x has a double root of P(0,T) at 0: Hensel does not apply
  CHECK_THROWS_AS(newton_lift(ann("T^2 - x"), Rational(0), 5), error);
}

TEST_CASE("lift residual order at least doubles per iteration") {
  std::vector<std::int64_t> trace;
  AnnPoly p = ann("T^2 - (1 + x)");
  newton_lift(p, Rational(1), 64, &trace);
  REQUIRE(trace.size() >= 5);
  std::int64_t prev = 1;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(trace[i] >= std::min<std::int64_t>(2 * prev, 64));
    prev = trace[i];
  }
}

TEST_CASE("lift certificates re-verify independently of the lifting loop") {
  // T^3 + T - 2 - x factors as (T-1)(T^2+T+2) at x=0: simple root 1
  for (const char* text : {"T^2 - (1 + x)", "(1 + x^2)*T^2 - 1", "T^3 + T - 2 - x"}) {
    AnnPoly p = ann(text);
    AlgSeries f = newton_lift(p, Rational(1), 40);
    Jet<Rational> residual = ann_eval(p, f.jet);
    CHECK(residual.body.is_zero());
    CHECK(jet_ord(residual).value >= 40);
  }
}

TEST_CASE("annihilator of a composition: alpha^2 for alpha = sqrt(1+x) - 1") {
  // P annihilates g(x,y) = y^2; Q annihilates alpha
  AnnPoly p_g = poly_to_ann(parse_poly("T - y^2", kXYT));
  AnnPoly q = ann("T^2 + 2*T - x");
  AnnPoly r = annihilator_compose(p_g, q);
  CHECK(ann_to_poly(r) == parse_poly("T^2 - (4 + 2*x)*T + x^2", kXT));

  // the certified bounds dominate the measured minimal data
  CHECK(BigNat(static_cast<unsigned long long>(height_of(r))) <= b_compose_h(BigNat(2), BigNat(1), BigNat(2)));
  CHECK(BigNat(static_cast<unsigned long long>(degree_of(r))) <= b_compose_deg(BigNat(1), BigNat(2)));

  // R vanishes on the lifted jet of g(x, alpha) below weight 30
  AlgSeries alpha = newton_lift(q, Rational(0), 30);
  Jet<Rational> galpha = jet_mul(alpha.jet, alpha.jet);
  CHECK(ann_eval(r, galpha).body.is_zero());
}

TEST_CASE("composing with the identity returns the inner annihilator") {
  AnnPoly p_id = poly_to_ann(parse_poly("T - y", kXYT));
  AnnPoly q = ann("T^2 + 2*T - x");
  AnnPoly r = annihilator_compose(p_id, q);
  CHECK(ann_to_poly(r) == ann_to_poly(ann_tidy(q)));
}

TEST_CASE("degenerate composition signals an error") {
  // P's coefficients are divisible by Q(y), so the resultant vanishes
  AnnPoly p_bad = poly_to_ann(parse_poly("(y^2 + 2*y - x)*T + (y^2 + 2*y - x)", kXYT));
  AnnPoly q = ann("T^2 + 2*T - x");
  CHECK_THROWS_AS(annihilator_compose(p_bad, q), error);
}

TEST_CASE("annihilator of a sum: sqrt(1+x) + x") {
  AnnPoly pf = ann("T^2 - (1 + x)");
  AnnPoly pg = ann("T - x");
  AnnPoly r = annihilator_sum(pf, pg);
  CHECK(ann_to_poly(r) == parse_poly("(T - x)^2 - (1 + x)", kXT));
}

TEST_CASE("annihilator of a product: sqrt(1+x)^2") {
  AnnPoly pf = ann("T^2 - (1 + x)");
  AnnPoly r = annihilator_product(pf, pf);
  // root 1 + x
  Poly<Rational> rp = ann_to_poly(r);
  Poly<Rational> at_root = rp.substitute(1, parse_poly("1 + x", kXT));
  CHECK(at_root.is_zero());
  // Deg_x within the product bound 2 * 2 * 2 * 1 = 8
  CHECK(height_of(r) <= 8);
}

TEST_CASE("annihilators of polynomial sums/products stay linear in T") {
  AnnPoly pf = ann("T - x^2");
  AnnPoly pg = ann("T - x - 1");
  CHECK(degree_of(annihilator_sum(pf, pg)) == 1);
  CHECK(degree_of(annihilator_product(pf, pg)) == 1);
}

TEST_CASE("annihilator of the derivative of sqrt(1+x)") {
  AnnPoly p = ann("T^2 - (1 + x)");
  AlgSeries f = newton_lift(p, Rational(1), 31);
  AnnPoly r = annihilator_derivative(p, f, 0);
  // f' = 1/(2 sqrt(1+x)): annihilator 4(1+x)T^2 - 1 up to normalization
  Poly<Rational> expect = parse_poly("4*(1+x)*T^2 - 1", kXT);
  CHECK((ann_to_poly(r) == expect || ann_to_poly(r) == -expect));
  // derivative jet is a root below weight >= 30
  Jet<Rational> fprime(f.jet.body.derivative(0), f.jet.order, f.jet.weight - 1);
  Jet<Rational> residual = ann_eval(r, fprime);
  CHECK(residual.body.is_zero());
  CHECK(residual.weight >= 30);
  // Lemma bound dominates the measured minimal height
  CHECK(BigNat(static_cast<unsigned long long>(height_of(r))) <=
        b_derivative_h(BigNat(1), BigNat(2)));
}

TEST_CASE("constructed sum/product annihilators vanish on lifted jets below 30") {
  AnnPoly pf = ann("T^2 - (1 + x)");
  AnnPoly pg = ann("(1 + x^2)*T^2 - 1");
  AlgSeries f = newton_lift(pf, Rational(1), 31);
  AlgSeries g = newton_lift(pg, Rational(1), 31);

  AnnPoly sum = annihilator_sum(pf, pg);
  Jet<Rational> rs = ann_eval(sum, jet_add(f.jet, g.jet));
  CHECK(rs.body.is_zero());
  CHECK(rs.weight >= 30);

  AnnPoly prod = annihilator_product(pf, pg);
  Jet<Rational> rp = ann_eval(prod, jet_mul(f.jet, g.jet));
  CHECK(rp.body.is_zero());
  CHECK(rp.weight >= 30);
}

TEST_CASE("derivative of a polynomial annihilator") {
  AnnPoly p = ann("T - x^3 - 2*x");
  AlgSeries f = newton_lift(p, Rational(0), 20);
  AnnPoly r = annihilator_derivative(p, f, 0);
  CHECK(ann_to_poly(r) == parse_poly("T - 3*x^2 - 2", kXT));
}

TEST_CASE("separability guard rejects a vanishing T-derivative at the jet") {
  // P = (T - x)^2 is a double root at the lifted series x, so dP/dT(x, f) = 0
  AnnPoly p = poly_to_ann(parse_poly("(T - x)^2", kXT));
  AlgSeries f;
  f.ann = p;
  f.jet = Jet<Rational>(parse_poly("x", kX), OrderSpec::total_degree(1), 10);
  f.lift_certificate = 10;
  CHECK_THROWS_AS(annihilator_derivative(p, f, 0), error);
}

namespace {

struct CuratedEntry {
  std::string name;
  AnnPoly minimal;          // analytically known minimal polynomial
  Jet<Rational> jet;        // certified jet
  BigNat bound_h, bound_d;  // certified bounds from the calculus
};

}  // namespace

TEST_CASE("bound-calculus domination on the curated family") {
  const std::int64_t W = 30;
  AnnPoly pf = ann("T^2 - (1 + x)");
  AnnPoly pg = ann("(1 + x^2)*T^2 - 1");
  AlgSeries f = newton_lift(pf, Rational(1), W + 1);
  AlgSeries g = newton_lift(pg, Rational(1), W + 1);
  OrderSpec o = OrderSpec::total_degree(1);

  std::vector<CuratedEntry> family;

  // 2 sqrt(1+x): linear combination with a_1 = a_2 = 1 over {f, f}
  family.push_back({"f+f", ann("T^2 - 4*(1 + x)"), jet_add(f.jet, f.jet),
                    b_lincomb_h(BigNat(2), {BigNat(2), BigNat(2)}, BigNat(1), BigNat(0)),
                    b_lincomb_deg({BigNat(2), BigNat(2)})});
  // 1 + sqrt(1+x): rational shift
  family.push_back({"1+f", ann("T^2 - 2*T - x"),
                    jet_add(f.jet, Jet<Rational>(Poly<Rational>::constant(1, Rational(1)), o, W + 1)),
                    b_shift_h(BigNat(1), BigNat(2), BigNat(0)), BigNat(2)});
  // x + sqrt(1+x): shift by a height-1 rational function
  family.push_back({"x+f", ann("T^2 - 2*x*T + x^2 - 1 - x"),
                    jet_add(f.jet, Jet<Rational>(parse_poly("x", kX), o, W + 1)),
                    b_shift_h(BigNat(1), BigNat(2), BigNat(1)), BigNat(2)});
  // f * g
  family.push_back({"f*g", ann("(1 + x^2)*T^2 - (1 + x)"), jet_mul(f.jet, g.jet),
                    b_prod_h(BigNat(2), {BigNat(2), BigNat(2)}, BigNat(2)),
                    b_prod_deg({BigNat(2), BigNat(2)})});
  // f + g, minimal polynomial the quartic from resolving both square roots
  family.push_back(
      {"f+g",
       ann("((1 + x^2)*T^2 + 1 - (1 + x)*(1 + x^2))^2 - 4*T^2*(1 + x^2)"),
       jet_add(f.jet, g.jet),
       b_lincomb_h(BigNat(2), {BigNat(2), BigNat(2)}, BigNat(2), BigNat(0)),
       b_lincomb_deg({BigNat(2), BigNat(2)})});
  // f' = 1/(2 sqrt(1+x))
  family.push_back({"f'", ann("4*(1 + x)*T^2 - 1"),
                    Jet<Rational>(f.jet.body.derivative(0), o, W), b_derivative_h(BigNat(1), BigNat(2)),
                    BigNat(2)});
  // g' = -x (1+x^2)^(-3/2)
  family.push_back({"g'", ann("(1 + x^2)^3*T^2 - x^2"),
                    Jet<Rational>(g.jet.body.derivative(0), o, W), b_derivative_h(BigNat(2), BigNat(2)),
                    BigNat(2)});
  // alpha = sqrt(1+x) - 1 and alpha^2: composition g(x, alpha) with g = y^2
  AlgSeries alpha = newton_lift(ann("T^2 + 2*T - x"), Rational(0), W + 1);
  family.push_back({"alpha", ann("T^2 + 2*T - x"), alpha.jet, BigNat(1), BigNat(2)});
  family.push_back({"alpha^2", ann("T^2 - (4 + 2*x)*T + x^2"), jet_mul(alpha.jet, alpha.jet),
                    b_compose_h(BigNat(2), BigNat(1), BigNat(2)),
                    b_compose_deg(BigNat(1), BigNat(2))});

  for (auto& entry : family) {
    INFO(entry.name);
    // the analytic minimal polynomial annihilates the jet below >= 30
    Jet<Rational> residual = ann_eval(entry.minimal, jet_truncate(entry.jet, W));
    CHECK(residual.body.is_zero());
    CHECK(residual.weight >= W);
    // measured minimal height/degree <= certified bound
    CHECK(BigNat(static_cast<unsigned long long>(height_of(entry.minimal))) <= entry.bound_h);
    CHECK(BigNat(static_cast<unsigned long long>(degree_of(entry.minimal))) <= entry.bound_d);
    // ord(jet) <= height for the minimal polynomial
    OrdResult ord = jet_ord(entry.jet);
    std::int64_t ordv = ord.kind == OrdResult::Kind::exact ? ord.value : 0;
    CHECK(ordv <= height_of(entry.minimal));
  }
}

TEST_CASE("Lemma 3.6 equality witnesses") {
  // alpha = sqrt(1+x) - 1 has ord 1 and height 1; alpha^2 has ord 2, height 2
  AlgSeries alpha = newton_lift(ann("T^2 + 2*T - x"), Rational(0), 20);
  CHECK(jet_ord(alpha.jet) == OrdResult::exact(1));
  CHECK(height_of(ann("T^2 + 2*T - x")) == 1);
  Jet<Rational> alpha2 = jet_mul(alpha.jet, alpha.jet);
  CHECK(jet_ord(alpha2) == OrdResult::exact(2));
  CHECK(height_of(ann("T^2 - (4 + 2*x)*T + x^2")) == 2);
}

TEST_CASE("multivariate composition bound evaluates per the two-argument form") {
  // two substituted series with H=1, Deg=2 into g of height 3
  BigNat h = b_compose_h_multi(BigNat(3), {{BigNat(1), BigNat(2)}, {BigNat(1), BigNat(2)}});
  CHECK(h == BigNat(27));
}
