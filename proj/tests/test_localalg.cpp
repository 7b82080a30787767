#include <catch2/catch_amalgamated.hpp>

#include <future>
#include <random>

#include "apseries/division.hpp"
#include "apseries/gapscan.hpp"
#include "apseries/localalg.hpp"
#include "apseries/textio.hpp"
#include "oracles.hpp"

using namespace aps;

namespace {

const VarTable kXY = VarTable::of({"x", "y"});
const VarTable kXYZ = VarTable::of({"x", "y", "z"});

Poly<Rational> P(const std::string& text, const VarTable& vars = kXY) {
  return parse_poly(text, vars);
}

std::vector<PolyVec> ideal(std::initializer_list<Poly<Rational>> gens) {
  std::vector<PolyVec> out;
  for (const auto& g : gens) out.push_back(PolyVec{g});
  return out;
}

/// The log-series harness ideal Q' = (x^2, y^2, xy, x + fhat(z) y) with
/// fhat = sum_{k=1..39} z^k / k.
std::vector<PolyVec> q_prime() {
  Poly<Rational> fhat(3);
  for (std::uint32_t k = 1; k <= 39; ++k) fhat.add_term(Exponent{0, 0, k}, Rational(1, k));
  Poly<Rational> y = Poly<Rational>::variable(3, 1);
  Poly<Rational> gen = Poly<Rational>::variable(3, 0) + fhat * y;
  return ideal({P("x^2", kXYZ), P("y^2", kXYZ), P("x*y", kXYZ), gen});
}

}  // namespace

TEST_CASE("membership of a generator with certificate") {
  auto gens = ideal({kg_divisor(2), P("y^3 - x^4")});
  TruncatedSubmodule N(gens, 2, 1, 15, /*track=*/true);
  MembershipResult r = N.membership_mod(kg_divisor(2), 0);
  CHECK(r.member);
  CHECK(r.normal_form[0].is_zero());
  REQUIRE(r.certificate.has_value());
  CHECK((*r.certificate)[0] == Poly<Rational>::constant(2, Rational(1)));
  CHECK((*r.certificate)[1].is_zero());
}

TEST_CASE("KG membership example lies in (g) + (x,y)^6 and not deeper") {
  Poly<Rational> f = P("x*y - x^3 - y^3");
  TruncatedSubmodule N(ideal({kg_divisor(2)}), 2, 1, 20, /*track=*/true);
  MembershipResult at6 = N.membership_mod(f, 6);
  CHECK(at6.member);
  MembershipResult at7 = N.membership_mod(f, 7);
  CHECK_FALSE(at7.member);
  // the normal form is the tail of the KG remainder: -x^6 - y^6 + x^12 + y^12
  CHECK(at6.normal_form[0].ord().value == 6);

  // certificate reconstructs: f - sum a_i g_i - nf vanishes below D
  REQUIRE(at6.certificate.has_value());
  Poly<Rational> acc = f - (*at6.certificate)[0] * kg_divisor(2) - at6.normal_form[0];
  CHECK(acc.truncate_total(20).is_zero());
}

TEST_CASE("constants never join the maximal ideal") {
  TruncatedSubmodule N(ideal({P("x"), P("y")}), 2, 1, 10, true);
  MembershipResult r = N.membership_mod(P("1"), 1);
  CHECK_FALSE(r.member);
  CHECK(N.ord_quotient(P("1")) == OrdResult::exact(0));
}

TEST_CASE("membership threshold guard") {
  TruncatedSubmodule N(ideal({P("x")}), 2, 1, 10);
  CHECK_THROWS_AS(N.membership_mod(P("x"), 11), error);
}

TEST_CASE("ord in the KG quotient") {
  TruncatedSubmodule N(ideal({kg_divisor(2)}), 2, 1, 20);
  CHECK(N.ord_quotient(P("x*y - x^3 - y^3")) == OrdResult::exact(6));
}

TEST_CASE("ord against the zero module is the plain order") {
  TruncatedSubmodule zero(std::vector<PolyVec>{}, 2, 1, 20);
  CHECK(zero.ord_quotient(P("x^3")) == OrdResult::exact(3));
  CHECK(zero.ord_quotient(P("x*y + y^5")) == OrdResult::exact(2));
  CHECK(zero.ord_quotient(Poly<Rational>(2)).kind == OrdResult::Kind::at_least);
}

TEST_CASE("ord of x in the log-series harness is exactly 2") {
  TruncatedSubmodule N(q_prime(), 3, 1, 12);
  CHECK(N.ord_quotient(P("x", kXYZ)) == OrdResult::exact(2));
  // y and z stay at order 1
  CHECK(N.ord_quotient(P("y", kXYZ)) == OrdResult::exact(1));
  CHECK(N.ord_quotient(P("z", kXYZ)) == OrdResult::exact(1));
}

TEST_CASE("ord_quotient dominates poly_ord and matches GHG remainder order") {
  std::mt19937_64 rng(7777);
  std::uniform_int_distribution<long long> coeff(-3, 3);
  OrderSpec o = OrderSpec::total_degree(2);
  TruncatedSubmodule N(ideal({kg_divisor(2)}), 2, 1, 30);
  for (int i = 0; i < 20; ++i) {
    Poly<Rational> f(2);
    for (int t = 0; t < 5; ++t) {
      Exponent e{static_cast<std::uint32_t>(rng() % 5), static_cast<std::uint32_t>(rng() % 5)};
      f.add_term(e, Rational(coeff(rng)));
    }
    if (f.is_zero()) continue;
    OrdResult oq = N.ord_quotient(f);
    if (oq.kind != OrdResult::Kind::exact) continue;
    CHECK(oq.value >= poly_ord(f).value);
    auto div = ghg_divide(f, {kg_divisor(2)}, o, 30);
    OrdResult orr = jet_ord(div.remainder);
    if (orr.kind == OrdResult::Kind::exact) CHECK(oq.value >= orr.value);
  }
}

TEST_CASE("membership certificates reconstruct on random instances") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<long long> coeff(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    Poly<Rational> g1(2), g2(2);
    for (int t = 0; t < 3; ++t) {
      g1.add_term(Exponent{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3)},
                  Rational(coeff(rng)));
      g2.add_term(Exponent{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3)},
                  Rational(coeff(rng)));
    }
    if (g1.is_zero() || g2.is_zero()) continue;
    TruncatedSubmodule N(ideal({g1, g2}), 2, 1, 12, /*track=*/true);
    Poly<Rational> f = g1.scaled(Rational(2)) + g2 * P("x + y");
    MembershipResult r = N.membership_mod(f, 12);
    REQUIRE(r.certificate.has_value());
    Poly<Rational> acc = f - r.normal_form[0];
    acc -= (*r.certificate)[0] * g1;
    acc -= (*r.certificate)[1] * g2;
    CHECK(acc.truncate_total(12).is_zero());
  }
}

TEST_CASE("jet entry points require enough precision and match the poly path") {
  TruncatedSubmodule N(ideal({kg_divisor(2)}), 2, 1, 20, true);
  OrderSpec o = OrderSpec::total_degree(2);
  VectorJet<Rational> fj(std::vector<Jet<Rational>>{Jet<Rational>(P("x*y - x^3 - y^3"), o, 20)});
  CHECK(N.ord_quotient(fj) == OrdResult::exact(6));
  CHECK(N.membership_mod(fj, 6).member);
  VectorJet<Rational> low(std::vector<Jet<Rational>>{Jet<Rational>(P("x*y"), o, 10)});
  CHECK_THROWS_AS(N.ord_quotient(low), error);
}

TEST_CASE("vector module membership (rank 2)") {
  // N generated by (x, y) and (0, x^2 - y)
  std::vector<PolyVec> gens = {PolyVec{P("x"), P("y")}, PolyVec{P("0"), P("x^2 - y")}};
  TruncatedSubmodule N(gens, 2, 2, 10, true);
  PolyVec f{P("x^2"), P("x*y")};  // x * (x, y)
  MembershipResult r = N.membership_mod(f, 10);
  CHECK(r.member);
  REQUIRE(r.certificate.has_value());
  Poly<Rational> a0 = (*r.certificate)[0], a1 = (*r.certificate)[1];
  CHECK((a0 * P("x") + a1 * P("0") - f[0]).truncate_total(10).is_zero());
  CHECK((a0 * P("y") + a1 * P("x^2 - y") - f[1]).truncate_total(10).is_zero());

  PolyVec h{P("y"), P("0")};
  CHECK_FALSE(N.membership_mod(h, 2).member);
}

TEST_CASE("hermann solver: unique instance") {
  auto a = hermann_solve(PolyVec{P("x^2 + x*y")}, {PolyVec{P("x")}}, 2);
  REQUIRE(a.has_value());
  CHECK((*a)[0] == P("x + y"));
}

TEST_CASE("hermann solver: constants are not in the maximal ideal") {
  CHECK_FALSE(hermann_solve(PolyVec{P("1")}, {PolyVec{P("x")}, PolyVec{P("y")}}, 3).has_value());
  CHECK_FALSE(hermann_solve(PolyVec{P("1")}, {PolyVec{P("x")}, PolyVec{P("y")}}, 6).has_value());
}

TEST_CASE("hermann solver agrees with the exhaustive grid on x^3 in (x^2, xy)") {
  PolyVec f{P("x^3")};
  std::vector<PolyVec> gens = {PolyVec{P("x^2")}, PolyVec{P("x*y")}};
  auto grid = oracles::grid_membership(f, gens, 1, 2);
  REQUIRE(grid.has_value());
  auto solved = hermann_solve(f, gens, 1);
  REQUIRE(solved.has_value());
  // verify both certificates exactly
  CHECK((*grid)[0] * P("x^2") + (*grid)[1] * P("x*y") == P("x^3"));
  CHECK((*solved)[0] * P("x^2") + (*solved)[1] * P("x*y") == P("x^3"));
}

TEST_CASE("hermann solver respects the resource guard") {
  CHECK_THROWS_AS(hermann_solve(PolyVec{P("x")}, {PolyVec{P("x")}}, 3, /*max_unknowns=*/2), error);
}

TEST_CASE("hermann default cap is the instance's certified bound") {
  // one variable, one degree-1 generator, deg(f) = 2: cap = 2 + (1*1)^2 = 3
  VarTable x1 = VarTable::of({"x"});
  PolyVec f{parse_poly("x^2 + x^3", x1)};
  std::vector<PolyVec> gens = {PolyVec{parse_poly("x", x1)}};
  CHECK(hermann_default_cap(f, gens) == 4);  // 3 + (1*1)^2
  auto solved = hermann_solve(f, gens);       // cap defaulted
  REQUIRE(solved.has_value());
  CHECK((*solved)[0] == parse_poly("x + x^2", x1));
  // two variables with degree-2 data: the bound is (2*2)^4 + 2 and the solve
  // is still feasible
  std::vector<PolyVec> g2 = {PolyVec{P("x^2")}, PolyVec{P("x*y")}};
  CHECK(hermann_default_cap(PolyVec{P("x^3")}, g2) == 3 + 256);
}

TEST_CASE("hermann vs brute force on curated small instances") {
  struct Instance {
    PolyVec f;
    std::vector<PolyVec> gens;
    std::int64_t cap;
    bool expect_member;
  };
  std::vector<Instance> corpus = {
      {PolyVec{P("x^2 + x*y")}, {PolyVec{P("x")}}, 2, true},
      {PolyVec{P("x^3")}, {PolyVec{P("x^2")}, PolyVec{P("x*y")}}, 1, true},
      {PolyVec{P("x*y^2 - x^2*y")}, {PolyVec{P("x*y")}}, 1, true},
      {PolyVec{P("y")}, {PolyVec{P("x")}}, 3, false},
      {PolyVec{P("x + y^2")}, {PolyVec{P("x^2")}, PolyVec{P("y^2")}}, 2, false},
      {PolyVec{P("x^2 + y^2 + x*y")}, {PolyVec{P("x^2")}, PolyVec{P("y^2")}, PolyVec{P("x*y")}}, 1,
       true},
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    INFO("instance " << i);
    const Instance& inst = corpus[i];
    auto solved = hermann_solve(inst.f, inst.gens, inst.cap);
    CHECK(solved.has_value() == inst.expect_member);
    if (solved) {
      PolyVec acc(inst.f.size(), Poly<Rational>(2));
      for (std::size_t gi = 0; gi < inst.gens.size(); ++gi)
        for (std::size_t c = 0; c < inst.f.size(); ++c)
          acc[c] += (*solved)[gi] * inst.gens[gi][c];
      for (std::size_t c = 0; c < inst.f.size(); ++c) CHECK(acc[c] == inst.f[c]);
      for (const auto& a : *solved) CHECK(a.degree() <= inst.cap);
    }
    // grid oracle must agree whenever it can see a witness
    auto grid = oracles::grid_membership(inst.f, inst.gens, std::min<std::int64_t>(inst.cap, 1), 2);
    if (grid.has_value()) CHECK(solved.has_value());
    // monomial instances also get the divisibility oracle
    bool monomial = true;
    std::vector<Exponent> lead;
    for (const auto& g : inst.gens) {
      if (g[0].nterms() != 1) { monomial = false; break; }
      lead.push_back(g[0].terms().begin()->first);
    }
    if (monomial)
      CHECK(oracles::monomial_ideal_member(inst.f[0], lead) == solved.has_value());
  }
}

TEST_CASE("Hilbert-Samuel Psi for (x,y)^2 in three variables") {
  std::vector<Poly<Rational>> gens = {P("x^2", kXYZ), P("x*y", kXYZ), P("y^2", kXYZ)};
  CHECK(hilbert_samuel_psi(gens, 3, 3) == 7);
  std::vector<std::pair<std::int64_t, std::int64_t>> values;
  for (std::int64_t d = 2; d <= 10; ++d) {
    std::int64_t v = hilbert_samuel_psi(gens, 3, d);
    CHECK(v == 3 * d - 2);
    values.emplace_back(d, v);
  }
  HSProfile prof = hs_profile(values);
  CHECK(prof.fitted_degree == 1);  // dim R = n - ht(I) = 3 - 2
}

TEST_CASE("Hilbert-Samuel Phi for the zero ideal is the simplex count") {
  std::vector<std::pair<std::int64_t, std::int64_t>> values;
  for (std::int64_t d = 0; d <= 10; ++d) {
    std::int64_t v = hilbert_samuel_phi({}, 2, d);
    CHECK(v == oracles::simplex_count(d, 2));
    values.emplace_back(d, v);
  }
  HSProfile prof = hs_profile(values);
  CHECK(prof.fitted_degree == 2);
}

TEST_CASE("Phi against brute-force dimension counts on small ideals") {
  // J = (x^2) in one variable: Phi(d) = 2 for d >= 2
  std::vector<Poly<Rational>> j1 = {parse_poly("x^2", VarTable::of({"x"}))};
  CHECK(hilbert_samuel_phi(j1, 1, 1) == 2);
  CHECK(hilbert_samuel_phi(j1, 1, 2) == 2);
  CHECK(hilbert_samuel_phi(j1, 1, 5) == 2);
  // J = (x, y): Phi(d) = 1
  std::vector<Poly<Rational>> j2 = {P("x"), P("y")};
  for (std::int64_t d = 1; d <= 5; ++d) CHECK(hilbert_samuel_phi(j2, 2, d) == 1);
  // J = (x*y) homogeneous: Phi(d) = C(d+2,2) - C(d,2) = 2d + 1
  std::vector<Poly<Rational>> j3 = {P("x*y")};
  for (std::int64_t d = 2; d <= 8; ++d)
    CHECK(hilbert_samuel_phi(j3, 2, d) == oracles::simplex_count(d, 2) - oracles::simplex_count(d - 2, 2));
}

TEST_CASE("Psi of the Q' harness counts the surviving monomials 1, z^k, y z^k") {
  // x z^k is eliminated by (x + fhat y) z^k and x^2, y^2, xy kill the rest,
  // so dim C[[x,y,z]]/(Q' + (x,y,z)^d) = d + (d-1) = 2d - 1.
  auto gens_vec = q_prime();
  std::vector<Poly<Rational>> gens;
  for (auto& g : gens_vec) gens.push_back(g[0]);
  for (std::int64_t d = 2; d <= 8; ++d) CHECK(hilbert_samuel_psi(gens, 3, d) == 2 * d - 1);
}

TEST_CASE("Hilbert matrix determinants match the Cauchy closed form") {
  HilbertMatrixCheck d2 = hilbert_matrix_check(2);
  CHECK(d2.det == Rational(-1, 12));
  CHECK(d2.nonsingular);

  HilbertMatrixCheck d1 = hilbert_matrix_check(1);
  CHECK(d1.det == Rational(1));

  for (std::int64_t d = 1; d <= 8; ++d) {
    HilbertMatrixCheck r = hilbert_matrix_check(d);
    CHECK(r.det == oracles::cauchy_hilbert_det(d));
    CHECK(r.nonsingular);
  }
  CHECK(hilbert_matrix_check(10).nonsingular);
}

TEST_CASE("zero-estimate scan over the zero ideal: every monomial ratio is 1") {
  TruncatedSubmodule zero(std::vector<PolyVec>{}, 2, 1, 12);
  ZeroEstimateReport rep = zero_estimate_scan(zero, 5);
  REQUIRE(rep.max_ratio.has_value());
  CHECK(*rep.max_ratio == Rational(1));
  CHECK(rep.saturated.empty());
  CHECK(rep.members_skipped == 0);
}

TEST_CASE("zero-estimate scan of the KG ideal finds the sharpness family") {
  TruncatedSubmodule N(ideal({kg_divisor(2)}), 2, 1, 50);
  std::vector<Poly<Rational>> extras = {kg_fn_symmetric(2, 0), kg_fn_symmetric(2, 1),
                                        kg_fn_symmetric(2, 2)};
  ZeroEstimateReport rep = zero_estimate_scan(N, 12, 10, 42, extras);
  REQUIRE(rep.max_ratio.has_value());
  CHECK(*rep.max_ratio == Rational(2));
  REQUIRE(rep.witness.has_value());
  // witness ord/deg = 2 comes from the family f_n (deg 3*2^n, ord 3*2^(n+1))
  CHECK(rep.witness->ord == 2 * rep.witness->degree);
  CHECK(rep.seed == 42);
}

TEST_CASE("log-series harness scan: every monomial of degree <= 5 obeys ord <= 2 deg") {
  TruncatedSubmodule N(q_prime(), 3, 1, 12);
  ZeroEstimateReport rep = zero_estimate_scan(N, 5, 5, 7);
  REQUIRE(rep.max_ratio.has_value());
  CHECK(*rep.max_ratio == Rational(2));
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->degree == 1);
  CHECK(rep.witness->ord == 2);
  CHECK(rep.saturated.empty());
}

TEST_CASE("frozen basis supports concurrent read-only queries") {
  TruncatedSubmodule N(ideal({kg_divisor(2)}), 2, 1, 30);
  auto worker = [&](int lo) {
    std::vector<std::int64_t> vals;
    for (int k = lo; k < lo + 6; ++k) {
      Poly<Rational> f = kg_fn_symmetric(2, k % 3);
      OrdResult o = N.ord_quotient(f);
      vals.push_back(o.kind == OrdResult::Kind::exact ? o.value : -1);
    }
    return vals;
  };
  auto fut1 = std::async(std::launch::async, worker, 0);
  auto fut2 = std::async(std::launch::async, worker, 0);
  CHECK(fut1.get() == fut2.get());
}
