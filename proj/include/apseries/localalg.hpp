#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "jet.hpp"
#include "linsolve.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace aps {

/// Monomials of total degree < D in n variables, ranked by degree with a
/// fixed tie-break inside each degree. This ranking is the column order of
/// all truncated-quotient linear algebra; ranks are monotone in degree, so a
/// row's leading column directly encodes its order.
class MonomialTable {
 public:
  MonomialTable() = default;
  MonomialTable(std::size_t nvars, std::int64_t max_degree_excl) : nvars_(nvars) {
    for (std::int64_t d = 0; d < max_degree_excl; ++d) {
      Exponent cur(nvars_, 0);
      fill_degree(cur, 0, d);
    }
  }

  std::size_t size() const { return list_.size(); }
  const Exponent& operator[](std::size_t i) const { return list_[i]; }
  std::int64_t degree_of(std::size_t i) const { return total_degree(list_[i]); }

  std::optional<std::size_t> index(const Exponent& e) const {
    auto it = rank_.find(e);
    if (it == rank_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void fill_degree(Exponent& cur, std::size_t pos, std::int64_t remaining) {
    if (pos + 1 == nvars_) {
      cur[pos] = static_cast<std::uint32_t>(remaining);
      rank_.emplace(cur, list_.size());
      list_.push_back(cur);
      cur[pos] = 0;
      return;
    }
    for (std::int64_t k = remaining; k >= 0; --k) {
      cur[pos] = static_cast<std::uint32_t>(k);
      fill_degree(cur, pos + 1, remaining - k);
    }
    cur[pos] = 0;
  }

  std::size_t nvars_ = 0;
  std::vector<Exponent> list_;
  std::map<Exponent, std::size_t, ExpLexLess> rank_;
};

using PolyVec = std::vector<Poly<Rational>>;  // element of k[x]^s

struct MembershipResult {
  bool member = false;
  PolyVec normal_form;                                       // nf(f), support of degree < D
  std::optional<std::vector<Poly<Rational>>> certificate;    // a_i with f = sum a_i g_i + nf (mod (x)^D)
};

/// Image of a finitely generated submodule N of k[[x]]^s in the
/// finite-dimensional quotient k[[x]]^s / (x)^D, held as an echelon basis of
/// the rows {x^beta g_i mod (x)^D} over the (degree, lex)-ranked monomial
/// basis. Since reduction replaces a leading monomial by strictly later ones
/// (same or higher degree), the normal form of f has minimal total degree
/// exactly the largest c <= D with f in N + (x)^c. Queries against the frozen
/// basis are read-only and safe to run concurrently.
class TruncatedSubmodule {
 public:
  TruncatedSubmodule(std::vector<PolyVec> generators, std::size_t nvars, std::size_t rank_s,
                     std::int64_t trunc_degree, bool track_certificates = false)
      : gens_(std::move(generators)),
        nvars_(nvars),
        s_(rank_s),
        D_(trunc_degree),
        table_(nvars, trunc_degree),
        track_(track_certificates) {
    require(D_ >= 1, errc::precondition, "truncation degree must be >= 1");
    require(s_ >= 1, errc::dimension, "module rank must be >= 1");
    for (const auto& g : gens_)
      require(g.size() == s_, errc::dimension, "generator rank mismatch");
    build();
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t rank_s() const { return s_; }
  std::int64_t trunc_degree() const { return D_; }
  const MonomialTable& table() const { return table_; }
  std::size_t basis_rank() const { return echelon_.rank(); }
  const std::vector<PolyVec>& generators() const { return gens_; }

  /// Canonical normal form of f modulo the basis, truncated below D.
  PolyVec normal_form(const PolyVec& f) const { return from_row(echelon_.reduce(to_row(f))); }

  /// Largest c <= D with f in N + (x)^c: the least degree in nf(f),
  /// or ">= D" when the normal form vanishes.
  OrdResult ord_quotient(const PolyVec& f) const {
    SparseRow<Rational> red = echelon_.reduce(to_row(f));
    if (red.empty()) return OrdResult::at_least(D_);
    return OrdResult::exact(table_.degree_of(red.front().first / s_));
  }

  OrdResult ord_quotient(const Poly<Rational>& f) const { return ord_quotient(PolyVec{f}); }

  /// Decide f in N + (x)^c exactly (c <= D; exact because (x)^D lies inside
  /// (x)^c). Returns the coefficient certificate when tracking is enabled.
  MembershipResult membership_mod(const PolyVec& f, std::int64_t c) const {
    require(c >= 0 && c <= D_, errc::precondition,
            "membership threshold must satisfy 0 <= c <= D");
    MembershipResult out;
    if (track_) {
      std::vector<Poly<Rational>> mult(gens_.size(), Poly<Rational>(nvars_));
      SparseRow<Rational> red = reduce_tracked(to_row(f), mult);
      out.member = red.empty() || table_.degree_of(red.front().first / s_) >= c;
      out.normal_form = from_row(red);
      if (out.member) out.certificate = std::move(mult);
    } else {
      SparseRow<Rational> red = echelon_.reduce(to_row(f));
      out.member = red.empty() || table_.degree_of(red.front().first / s_) >= c;
      out.normal_form = from_row(red);
    }
    return out;
  }

  MembershipResult membership_mod(const Poly<Rational>& f, std::int64_t c) const {
    return membership_mod(PolyVec{f}, c);
  }

  /// Jet entry points: bodies must be exact below D in total degree.
  MembershipResult membership_mod(const VectorJet<Rational>& f, std::int64_t c) const {
    return membership_mod(vec_bodies(f), c);
  }

  OrdResult ord_quotient(const VectorJet<Rational>& f) const {
    return ord_quotient(vec_bodies(f));
  }

  SparseRow<Rational> to_row(const PolyVec& f) const {
    require(f.size() == s_, errc::dimension, "vector rank mismatch");
    std::map<std::size_t, Rational> acc;
    for (std::size_t comp = 0; comp < s_; ++comp) {
      for (const auto& [e, cf] : f[comp].terms()) {
        auto idx = table_.index(e);
        if (!idx) continue;  // at or beyond truncation
        acc[*idx * s_ + comp] += cf;
      }
    }
    SparseRow<Rational> row;
    row.reserve(acc.size());
    for (auto& [col, cf] : acc)
      if (!cf.is_zero()) row.emplace_back(col, cf);
    return row;
  }

  PolyVec from_row(const SparseRow<Rational>& row) const {
    PolyVec f(s_, Poly<Rational>(nvars_));
    for (const auto& [col, cf] : row) f[col % s_].add_term(table_[col / s_], cf);
    return f;
  }

 private:
  PolyVec vec_bodies(const VectorJet<Rational>& f) const {
    require(f.size() == s_, errc::dimension, "vector rank mismatch");
    PolyVec out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      require(f[i].weight >= D_, errc::precondition,
              "jet truncation weight below the module truncation degree");
      out.push_back(f[i].body);
    }
    return out;
  }

  void build() {
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      OrdResult go = vec_ord(gens_[gi]);
      if (go.kind == OrdResult::Kind::infinite) continue;
      for (std::size_t mi = 0; mi < table_.size(); ++mi) {
        if (table_.degree_of(mi) + go.value >= D_) continue;
        PolyVec shifted(s_, Poly<Rational>(nvars_));
        for (std::size_t comp = 0; comp < s_; ++comp)
          shifted[comp] = gens_[gi][comp].shifted(table_[mi], Rational(1)).truncate_total(D_);
        if (!track_) {
          echelon_.insert(to_row(shifted));
          continue;
        }
        std::vector<Poly<Rational>> mult(gens_.size(), Poly<Rational>(nvars_));
        SparseRow<Rational> red = reduce_tracked(to_row(shifted), mult);
        if (red.empty()) continue;
        // red = x^beta g_gi - sum mult_i g_i, so its certificate is
        // (delta_gi x^beta - mult), scaled with the row normalization.
        std::vector<Poly<Rational>> cert(gens_.size(), Poly<Rational>(nvars_));
        for (std::size_t i = 0; i < mult.size(); ++i) cert[i] = -mult[i];
        cert[gi] += Poly<Rational>::monomial(nvars_, table_[mi], Rational(1));
        Rational lead = red.front().second;
        if (!lead.is_one()) {
          Rational inv = lead.inverse();
          for (auto& [col, v] : red) v *= inv;
          for (auto& m : cert) m = m.scaled(inv);
        }
        cert_rows_.emplace(red.front().first, std::move(cert));
        bool fresh = echelon_.insert(std::move(red));
        require(fresh, errc::internal, "reduced row vanished on insertion");
      }
    }
    if (!track_) echelon_.canonicalize();
  }

  static OrdResult vec_ord(const PolyVec& f) {
    OrdResult best = OrdResult::infinite();
    for (const auto& p : f) {
      OrdResult o = p.ord();
      if (o.kind == OrdResult::Kind::infinite) continue;
      if (best.kind == OrdResult::Kind::infinite || o.value < best.value) best = o;
    }
    return best;
  }

  /// reduce() with bookkeeping: on return, input = result + sum mult_i g_i
  /// modulo (x)^D.
  SparseRow<Rational> reduce_tracked(const SparseRow<Rational>& row,
                                     std::vector<Poly<Rational>>& mult) const {
    std::map<std::size_t, Rational> acc(row.begin(), row.end());
    SparseRow<Rational> out;
    while (!acc.empty()) {
      auto it = acc.begin();
      std::size_t col = it->first;
      Rational c = it->second;
      acc.erase(it);
      if (c.is_zero()) continue;
      auto p = echelon_.rows().find(col);
      if (p == echelon_.rows().end()) {
        out.emplace_back(col, c);
        continue;
      }
      const SparseRow<Rational>& pr = p->second;
      for (std::size_t k = 1; k < pr.size(); ++k) {
        Rational& slot = acc[pr[k].first];
        slot -= c * pr[k].second;
        if (slot.is_zero()) acc.erase(pr[k].first);
      }
      auto cr = cert_rows_.find(col);
      require(cr != cert_rows_.end(), errc::internal, "missing certificate row");
      for (std::size_t gi = 0; gi < mult.size(); ++gi)
        mult[gi] += cr->second[gi].scaled(c);
    }
    return out;
  }

  std::vector<PolyVec> gens_;
  std::size_t nvars_, s_;
  std::int64_t D_;
  MonomialTable table_;
  bool track_;
  SparseEchelon<Rational> echelon_;
  std::map<std::size_t, std::vector<Poly<Rational>>> cert_rows_;
};

// ---------------------------------------------------------------------------
// Polynomial membership with degree caps (Hermann-style solving).
// ---------------------------------------------------------------------------

/// Solve f = sum a_i f_i with deg(a_i) <= degree_cap by exact linear algebra.
/// nullopt means no solution with coefficients under the cap exists; this is
/// a genuine non-membership certificate only when the cap is at least the
/// Hermann bound for the instance.
inline std::optional<std::vector<Poly<Rational>>> hermann_solve(
    const PolyVec& f, const std::vector<PolyVec>& gens, std::int64_t degree_cap,
    std::size_t max_unknowns = 20000) {
  require(!gens.empty(), errc::precondition, "empty generator list");
  require(degree_cap >= 0, errc::precondition, "degree cap must be >= 0");
  std::size_t q = f.size();
  std::size_t nv = 0;
  for (const auto& p : f) nv = std::max(nv, p.nvars());
  for (const auto& g : gens)
    for (const auto& p : g) nv = std::max(nv, p.nvars());

  std::int64_t dmax = 0;
  for (const auto& g : gens)
    for (const auto& p : g) dmax = std::max(dmax, p.degree());
  for (const auto& p : f) dmax = std::max(dmax, p.degree());

  MonomialTable unknowns(nv, degree_cap + 1);          // coefficient monomials
  MonomialTable rows(nv, degree_cap + dmax + 1);       // equation monomials
  std::size_t ncols = unknowns.size() * gens.size();
  require(ncols <= max_unknowns, errc::resource, "membership system too large");

  Matrix<Rational> A(rows.size() * q, ncols);
  std::vector<Rational> b(rows.size() * q);
  for (std::size_t comp = 0; comp < q; ++comp) {
    const Poly<Rational>& fc = comp < f.size() ? f[comp] : Poly<Rational>(nv);
    for (const auto& [e, c] : fc.terms()) {
      auto ridx = rows.index(e);
      require(ridx.has_value(), errc::internal, "rhs monomial out of table");
      b[*ridx * q + comp] = c;
    }
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const Poly<Rational>& gc = gens[gi][comp];
      for (std::size_t ui = 0; ui < unknowns.size(); ++ui) {
        for (const auto& [e, c] : gc.terms()) {
          auto ridx = rows.index(exp_add(e, unknowns[ui]));
          require(ridx.has_value(), errc::internal, "product monomial out of table");
          A.at(*ridx * q + comp, gi * unknowns.size() + ui) += c;
        }
      }
    }
  }
  auto x = solve(A, b);
  if (!x) return std::nullopt;
  std::vector<Poly<Rational>> a(gens.size(), Poly<Rational>(nv));
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::size_t ui = 0; ui < unknowns.size(); ++ui)
      a[gi].add_term(unknowns[ui], (*x)[gi * unknowns.size() + ui]);
  return a;
}

/// Degree cap from the Hermann bound of the instance: deg(f) + (p d)^(2^n).
/// Resource error when it does not fit a machine word; callers then pick an
/// explicit cap.
inline std::int64_t hermann_default_cap(const PolyVec& f, const std::vector<PolyVec>& gens) {
  require(!gens.empty(), errc::precondition, "empty generator list");
  std::size_t nv = 0;
  std::int64_t d = 1, degf = 0;
  for (const auto& p : f) {
    nv = std::max(nv, p.nvars());
    degf = std::max(degf, p.degree());
  }
  for (const auto& g : gens)
    for (const auto& p : g) {
      nv = std::max(nv, p.nvars());
      d = std::max(d, p.degree());
    }
  BigNat bound = b_hermann(BigNat(nv), BigNat(gens.size()), BigNat(static_cast<unsigned long long>(d)),
                           BigNat(static_cast<unsigned long long>(std::max<std::int64_t>(degf, 0))));
  require(bound.value().fits_slong_p(), errc::resource, "Hermann bound exceeds machine range");
  return static_cast<std::int64_t>(bound.value().get_si());
}

/// Same solver with the cap defaulted to the instance's Hermann bound, making
/// a nullopt a genuine non-membership certificate.
inline std::optional<std::vector<Poly<Rational>>> hermann_solve(
    const PolyVec& f, const std::vector<PolyVec>& gens) {
  return hermann_solve(f, gens, hermann_default_cap(f, gens));
}

// ---------------------------------------------------------------------------
// Hilbert-Samuel functions.
// ---------------------------------------------------------------------------

/// Phi(d) = dim(k[x]_{<=d} / J_{<=d}) with J_{<=d} approximated by the span of
/// {x^beta g_i : total degree <= d}; exact for monomial and homogeneous ideals.
inline std::int64_t hilbert_samuel_phi(const std::vector<Poly<Rational>>& gens, std::size_t nvars,
                                       std::int64_t d) {
  require(d >= 0, errc::precondition, "degree must be >= 0");
  MonomialTable table(nvars, d + 1);
  SparseEchelon<Rational> ech;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    std::int64_t dg = g.degree();
    for (std::size_t mi = 0; mi < table.size(); ++mi) {
      if (table.degree_of(mi) + dg > d) continue;
      SparseRow<Rational> row;
      Poly<Rational> shifted = g.shifted(table[mi], Rational(1));
      std::map<std::size_t, Rational> acc;
      for (const auto& [e, c] : shifted.terms()) {
        auto idx = table.index(e);
        require(idx.has_value(), errc::internal, "monomial out of table");
        acc[*idx] += c;
      }
      for (auto& [col, cf] : acc)
        if (!cf.is_zero()) row.emplace_back(col, cf);
      if (!row.empty()) ech.insert(std::move(row));
    }
  }
  return static_cast<std::int64_t>(table.size() - ech.rank());
}

/// Psi(d) = dim(R / (x)^d) for R = k[[x]]/I: the codimension of the image of
/// I in k[[x]]/(x)^d.
inline std::int64_t hilbert_samuel_psi(const std::vector<Poly<Rational>>& gens, std::size_t nvars,
                                       std::int64_t d) {
  require(d >= 1, errc::precondition, "degree must be >= 1");
  std::vector<PolyVec> g;
  g.reserve(gens.size());
  for (const auto& p : gens) g.push_back(PolyVec{p});
  TruncatedSubmodule mod(std::move(g), nvars, 1, d);
  return static_cast<std::int64_t>(mod.table().size() - mod.basis_rank());
}

/// Sampled Hilbert-Samuel values with the degree at which forward differences
/// stabilize (the eventual polynomial degree).
struct HSProfile {
  std::vector<std::pair<std::int64_t, std::int64_t>> values;
  std::int64_t fitted_degree = -1;  // -1 when the window never stabilizes
};

inline HSProfile hs_profile(std::vector<std::pair<std::int64_t, std::int64_t>> values) {
  HSProfile out;
  out.values = std::move(values);
  std::vector<std::int64_t> seq;
  seq.reserve(out.values.size());
  for (auto& [d, v] : out.values) seq.push_back(v);
  for (std::int64_t k = 0; seq.size() >= 2; ++k) {
    bool constant = true;
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] != seq[0]) { constant = false; break; }
    if (constant) {
      out.fitted_degree = k;
      return out;
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) seq[i] = seq[i + 1] - seq[i];
    seq.pop_back();
  }
  return out;
}

// ---------------------------------------------------------------------------
// The Hilbert-type matrix of the counterexample harness.
// ---------------------------------------------------------------------------

struct HilbertMatrixCheck {
  Rational det;
  bool nonsingular = false;
};

/// d x d matrix with entry (i,j) = 1/(d+i-j): first row 1/d, 1/(d-1), .., 1.
inline HilbertMatrixCheck hilbert_matrix_check(std::int64_t d) {
  require(d >= 1, errc::precondition, "dimension must be >= 1");
  Matrix<Rational> m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(1, d + i - j);
  Rational det = determinant(std::move(m));
  return {det, !det.is_zero()};
}

// ---------------------------------------------------------------------------
// Zero-estimate scan.
// ---------------------------------------------------------------------------

struct ZeroEstimateWitness {
  Poly<Rational> poly;
  std::int64_t degree = 0;
  std::int64_t ord = 0;
};

struct ZeroEstimateReport {
  std::optional<Rational> max_ratio;           // max ord/deg over scanned non-members
  std::optional<ZeroEstimateWitness> witness;  // argmax
  std::vector<Poly<Rational>> saturated;       // ord reported ">= D", no finite ratio
  std::size_t scanned = 0;
  std::size_t members_skipped = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// Scan all monomials of degree <= deg_cap plus `samples` random polynomials
/// (coefficients uniform in {-3..3}, degree <= deg_cap) plus any caller-chosen
/// extra candidates against N; for each p not in N (at truncation scale)
/// record ord_quotient(p)/deg(p). Evidence only: reports ratios and
/// witnesses, never a structural verdict.
inline ZeroEstimateReport zero_estimate_scan(const TruncatedSubmodule& N, std::int64_t deg_cap,
                                             std::size_t samples = 0, std::uint64_t seed = 1,
                                             const std::vector<Poly<Rational>>& extras = {}) {
  require(deg_cap >= 1 && deg_cap < N.trunc_degree(), errc::precondition,
          "degree cap must satisfy 1 <= cap < D");
  require(N.rank_s() == 1, errc::precondition, "scan expects an ideal (rank 1)");
  ZeroEstimateReport rep;
  rep.seed = seed;
  rep.samples = samples;

  auto consider = [&](const Poly<Rational>& p) {
    if (p.is_zero()) return;
    std::int64_t deg = p.degree();
    if (deg == 0) return;
    ++rep.scanned;
    OrdResult o = N.ord_quotient(p);
    if (o.kind == OrdResult::Kind::at_least) {
      rep.saturated.push_back(p);
      return;
    }
    // ord 0 with nonzero nf constant term means p is a unit modulo N: ratio 0.
    Rational ratio(o.value, deg);
    if (!rep.max_ratio || ratio > *rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.witness = ZeroEstimateWitness{p, deg, o.value};
    }
  };

  MonomialTable table(N.nvars(), deg_cap + 1);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.degree_of(i) == 0) continue;
    Poly<Rational> p = Poly<Rational>::monomial(N.nvars(), table[i], Rational(1));
    // Membership filter: monomials inside N (at truncation scale) are skipped.
    if (N.normal_form(PolyVec{p})[0].is_zero()) {
      ++rep.members_skipped;
      continue;
    }
    consider(p);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t k = 0; k < samples; ++k) {
    Poly<Rational> p(N.nvars());
    for (std::size_t i = 0; i < table.size(); ++i) {
      int c = coeff(rng);
      if (c != 0) p.add_term(table[i], Rational(c));
    }
    if (p.is_zero() || p.degree() == 0) continue;
    if (N.normal_form(PolyVec{p})[0].is_zero()) {
      ++rep.members_skipped;
      continue;
    }
    consider(p);
  }
  for (const auto& p : extras) {
    if (p.is_zero() || p.degree() == 0) continue;
    if (N.normal_form(PolyVec{p})[0].is_zero()) {
      ++rep.members_skipped;
      continue;
    }
    consider(p);
  }
  return rep;
}

}  // namespace aps
