// Temperedness and discrete-series cone tests, the parameter maps between
// the affine and graded sides, Langlands-datum validation, and the
// count-level comparison between parameter k and parameter 0.
//
// All logarithms are carried as exact rationals in units of log q_F.

#pragma once

#include "heckeforge/decompose.hpp"
#include "heckeforge/laurent.hpp"

#include <algorithm>
#include <set>

namespace heckeforge {

// weights against a basis of root vectors inside an ambient rational space
struct WeightSet {
  // affine weights enter through their logmag vectors; graded weights are
  // the vectors themselves
  std::vector<RatVec> weights;
  std::vector<RatVec> basis_roots; // the root vectors spanning the cone
  std::size_t ambient = 0;
  bool allow_perp_tempered = false; // relax the span condition for "tempered"

  static WeightSet affine(const std::vector<TorusPoint>& pts, std::vector<RatVec> basis,
                          std::size_t ambient) {
    WeightSet ws;
    ws.ambient = ambient;
    ws.basis_roots = std::move(basis);
    for (auto& p : pts) {
      check_rank(p.rank(), ambient, "weight");
      ws.weights.push_back(p.logmag);
    }
    return ws;
  }
  static WeightSet graded(std::vector<RatVec> ws_in, std::vector<RatVec> basis,
                          std::size_t ambient) {
    WeightSet ws;
    ws.ambient = ambient;
    ws.basis_roots = std::move(basis);
    ws.weights = std::move(ws_in);
    return ws;
  }
};

namespace detail_cone {

struct ConeCoords {
  RatVec basis_part;  // coefficients against the basis roots
  bool perp_zero = true;
};

inline ConeCoords solve_cone(const RatVec& w, const std::vector<RatVec>& basis,
                             std::size_t ambient) {
  // express w = sum x_a alpha_a + perp with perp orthogonal to the span
  RatMat cols(ambient, RatVec(basis.size(), Rat(0)));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < ambient; ++i) cols[i][j] = basis[j][i];
  // least-squares-free exact: solve the normal equations of the projection
  // (gram) x = (basis . w)
  RatMat gram(basis.size(), RatVec(basis.size(), Rat(0)));
  RatVec rhs(basis.size(), Rat(0));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (std::size_t i = 0; i < ambient; ++i) gram[a][b] += basis[a][i] * basis[b][i];
    for (std::size_t i = 0; i < ambient; ++i) rhs[a] += basis[a][i] * w[i];
  }
  auto x = solve_linear(gram, rhs);
  if (!x) throw Error("RankMismatch", "cone solve failed");
  ConeCoords out;
  out.basis_part = *x;
  // perp component: w - sum x_a alpha_a
  RatVec perp = w;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t i = 0; i < ambient; ++i) perp[i] -= (*x)[a] * basis[a][i];
  for (auto& v : perp)
    if (v != 0) out.perp_zero = false;
  return out;
}

} // namespace detail_cone

// weight in the obtuse negative cone (x_a <= 0), with the span condition
inline bool is_tempered(const WeightSet& ws) {
  for (auto& w : ws.weights) {
    if (ws.basis_roots.empty()) {
      bool zero = true;
      for (auto& v : w) zero = zero && v == 0;
      if (!zero && !ws.allow_perp_tempered) return false;
      continue;
    }
    auto c = detail_cone::solve_cone(w, ws.basis_roots, ws.ambient);
    for (auto& x : c.basis_part)
      if (x > 0) return false;
    if (!c.perp_zero && !ws.allow_perp_tempered) return false;
  }
  return true;
}

// strict cone with arbitrary perp component
inline bool is_essentially_ds(const WeightSet& ws) {
  // the strict cone over an empty basis is {0} and the perp part is the
  // whole space, so everything qualifies
  if (ws.basis_roots.empty()) return true;
  for (auto& w : ws.weights) {
    auto c = detail_cone::solve_cone(w, ws.basis_roots, ws.ambient);
    for (auto& x : c.basis_part)
      if (x >= 0) return false;
  }
  return true;
}

// strict cone and the roots span the ambient space
inline bool is_discrete_series(const WeightSet& ws) {
  if (!is_essentially_ds(ws)) return false;
  RatMat rows;
  for (auto& b : ws.basis_roots) rows.push_back(b);
  return rat_rank(rows) == ws.ambient;
}

// ---- parameter maps ----

struct KValue {
  Rat q_value;                   // q or q*, the number whose log this is
  std::optional<Rat> log_qF;     // exponent in units of log q_F when available
};

// k_alpha = log q if X_alpha(u) = 1, log q* if X_alpha(u) = -1
inline KValue k_from_params(const RootDatum& d, const ParamFunction& p, const TorusPoint& u,
                            int root, std::optional<Rat> base_qF = std::nullopt) {
  if (!u.is_unitary()) throw Error("NonUnitaryPoint", "k map needs a unitary point");
  auto v = monomial_eval(d.coroots[root], u);
  Rat q;
  if (v.is_plus_one())
    q = p.q[root];
  else if (v.is_minus_one() && p.qstar[root] > 1)
    q = p.qstar[root];
  else
    throw Error("RootNotInSubsystem", "root " + std::to_string(root) + " is not in the point subsystem");
  KValue out;
  out.q_value = q;
  if (base_qF) {
    auto e = rational_log_base(q, *base_qF);
    if (!e) throw Error("NotAPowerOfBase", rat_str(q) + " is not a rational power of " + rat_str(*base_qF));
    out.log_qF = *e;
  }
  return out;
}

// labels lambda = log(q q*)/log qF and lambda* = log(q/q*)/log qF
inline std::pair<Rat, Rat> lambda_from_q(const ParamFunction& p, int root, const Rat& base_qF) {
  auto l1 = rational_log_base(p.q[root] * p.qstar[root], base_qF);
  auto l2 = rational_log_base(p.q[root] / p.qstar[root], base_qF);
  if (!l1 || !l2)
    throw Error("NotAPowerOfBase", "parameters at root " + std::to_string(root) +
                                       " are not rational powers of the base");
  return {*l1, *l2};
}

// graded weight (real, in log q_F units) to the torus point u exp(lambda)
inline TorusPoint phi_u_weight(const TorusPoint& u, const RatVec& lambda) {
  if (!u.is_unitary()) throw Error("NonUnitaryPoint", "phi_u needs a unitary base point");
  check_rank(u.rank(), lambda.size(), "phi_u_weight");
  return TorusPoint(u.angle, lambda);
}

// ---- Langlands data ----

struct LanglandsDatum {
  std::vector<int> p_subset;   // positions into the basis
  WeightSet tempered_weights;  // weights of the tempered module, P-basis view
  RatVec t;                    // element of the perp-P part
};

inline void langlands_validate(const DegenerateRootDatum& d, const LanglandsDatum& dat) {
  for (int pos : dat.p_subset)
    if (pos < 0 || std::size_t(pos) >= d.basis.size())
      throw Error("ParseError", "P must index into the basis");
  std::set<int> pset(dat.p_subset.begin(), dat.p_subset.end());
  // t must pair to zero with the coroots of P
  for (int pos : dat.p_subset) {
    int root = d.basis[std::size_t(pos)];
    if (DegenerateRootDatum::dot(d.coroots[root], dat.t) != 0)
      throw Error("NotOrthogonal", "t is not orthogonal to P");
  }
  // strictly positive against the complement of P
  for (std::size_t pos = 0; pos < d.basis.size(); ++pos) {
    if (pset.count(int(pos))) continue;
    int root = d.basis[pos];
    if (!(DegenerateRootDatum::dot(d.coroots[root], dat.t) > 0))
      throw Error("NotStrictlyPositive", "t fails strict positivity at a basis root");
  }
  if (!is_tempered(dat.tempered_weights))
    throw Error("NotTempered", "the module of the datum is not tempered for P");
}

// ---- the k -> 0 comparison ----

struct ZetaSideReport {
  std::size_t irreducibles = 0;
  std::size_t tempered = 0;
  std::vector<std::size_t> dims;
};

struct ZetaCompareReport {
  ZetaSideReport at_k, at_zero;
  bool counts_equal = false;
  bool tempered_equal = false;
};

// Candidate Langlands projections of a composition factor: for each
// weight w and basis subset P, split w = c + t with c in the span of the
// P-roots and t orthogonal to the P-coroots; keep the t's with c in the
// closed negative P-cone and t strictly positive against the rest of the
// basis. The shadows drive saturation of zeta-closed character families.
inline std::vector<RatVec> langlands_shadows(const GradedHecke& alg,
                                             const CompositionFactor& factor) {
  const auto& d = alg.datum;
  std::size_t nb = d.basis.size();
  std::vector<RatVec> out;
  for (auto& [w, mult] : factor.weights) {
    for (std::size_t mask = 0; mask < (std::size_t(1) << nb); ++mask) {
      std::vector<int> proots, pco;
      for (std::size_t i = 0; i < nb; ++i)
        if ((mask >> i) & 1) proots.push_back(d.basis[i]);
      // solve w = sum_{a in P} x_a root_a + t with <coroot_a, t> = 0
      std::size_t k = proots.size();
      RatMat sys(k, RatVec(k, Rat(0)));
      RatVec rhs(k, Rat(0));
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b)
          sys[a][b] = DegenerateRootDatum::dot(d.coroots[proots[a]], d.roots[proots[b]]);
        rhs[a] = DegenerateRootDatum::dot(d.coroots[proots[a]], w);
      }
      auto x = solve_linear(sys, rhs);
      if (!x) continue;
      bool cone_ok = true;
      for (auto& v : *x) cone_ok = cone_ok && v <= 0;
      if (!cone_ok) continue;
      RatVec t = w;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < d.dim; ++i) t[i] -= (*x)[a] * d.roots[proots[a]][i];
      bool positive = true;
      for (std::size_t i = 0; i < nb; ++i)
        if (!((mask >> i) & 1))
          positive = positive && DegenerateRootDatum::dot(d.coroots[d.basis[i]], t) > 0;
      if (!positive) continue;
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  }
  return out;
}

namespace detail_zeta {

// collect the distinct composition factors of the principal series at
// every character in the list, deduplicated by (dim, weights, traces)
inline std::vector<CompositionFactor> irreducibles_at(const GradedHecke& alg,
                                                      const std::vector<RatVec>& chars,
                                                      std::uint64_t seed) {
  std::vector<CompositionFactor> found;
  for (auto& lam : chars) {
    auto m = principal_series(alg, lam);
    for (auto& f : decompose_numeric(m, seed)) {
      bool dup = false;
      for (auto& g : found)
        if (factors_equivalent(f, g)) dup = true;
      if (!dup) found.push_back(f);
    }
  }
  return found;
}

inline bool factor_tempered(const GradedHecke& alg, const CompositionFactor& f) {
  std::vector<RatVec> ws;
  for (auto& [w, mult] : f.weights)
    for (std::size_t i = 0; i < mult; ++i) ws.push_back(w);
  std::vector<RatVec> basis;
  for (int b : alg.datum.basis) basis.push_back(alg.datum.roots[b]);
  return is_tempered(WeightSet::graded(std::move(ws), std::move(basis), alg.datum.dim));
}

} // namespace detail_zeta

// both sides run over the same list of central characters (a zeta-closed
// family); the theorem-level check is equality of the aggregate counts
inline ZetaCompareReport zeta_count_compare(const GradedHecke& alg_k,
                                            const std::vector<RatVec>& chars, std::uint64_t seed) {
  GradedHecke alg_0(alg_k.datum, alg_k.group, std::vector<Rat>(alg_k.k.size(), Rat(0)),
                    alg_k.cocycle);
  ZetaCompareReport rep;
  auto run = [&](const GradedHecke& alg, ZetaSideReport& side) {
    auto irr = detail_zeta::irreducibles_at(alg, chars, seed);
    side.irreducibles = irr.size();
    for (auto& f : irr) {
      side.dims.push_back(f.dim);
      if (detail_zeta::factor_tempered(alg, f)) ++side.tempered;
    }
    std::sort(side.dims.begin(), side.dims.end());
  };
  run(alg_k, rep.at_k);
  run(alg_0, rep.at_zero);
  rep.counts_equal = rep.at_k.irreducibles == rep.at_zero.irreducibles;
  rep.tempered_equal = rep.at_k.tempered == rep.at_zero.tempered;
  return rep;
}

} // namespace heckeforge
