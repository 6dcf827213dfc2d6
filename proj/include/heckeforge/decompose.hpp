// Composition-series splitting of graded-Hecke modules. The seeded
// commutant scheme separates direct summands; a spin splitter in the
// style of the meataxe then refines indecomposable pieces into
// composition factors, seeding from kernels of h - weight on both the
// module and its transpose. Factor weights are matched back to the exact
// candidate set at the fixed tolerance.

#pragma once

#include "heckeforge/graded_hecke.hpp"
#include "heckeforge/numeric.hpp"

#include <algorithm>

namespace heckeforge {

struct CompositionFactor {
  std::size_t dim = 0;
  std::vector<std::pair<RatVec, std::size_t>> weights; // exact weight -> multiplicity
  std::vector<std::complex<double>> n_traces;          // trace of each N_g on the factor
};

inline CMat to_complex(const RatMat& m) {
  CMat out(Eigen::Index(m.size()), Eigen::Index(m.empty() ? 0 : m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      out(Eigen::Index(i), Eigen::Index(j)) = rat_to_double(m[i][j]);
  return out;
}

namespace numeric {

// orthonormal span of the vectors reachable from seed under the generators
inline CMat spin(const CVec& seed, const std::vector<CMat>& gens) {
  Eigen::Index n = seed.size();
  double scale = std::max(1.0, seed.norm());
  for (auto& g : gens) scale = std::max(scale, g.norm());
  CMat basis(n, 0);
  auto try_add = [&](CVec v) {
    CVec r = v - basis * (basis.adjoint() * v);
    // re-orthogonalize once for stability
    r = r - basis * (basis.adjoint() * r);
    if (r.norm() > 1e-9 * scale) {
      basis.conservativeResize(n, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r / r.norm();
      return true;
    }
    return false;
  };
  try_add(seed);
  for (Eigen::Index c = 0; c < basis.cols() && basis.cols() < n; ++c)
    for (auto& g : gens) try_add(g * basis.col(c));
  return basis;
}

// quotient action on the orthogonal complement of an invariant subspace
inline std::vector<CMat> quotient_action(const std::vector<CMat>& gens, const CMat& sub,
                                         CMat& complement_out) {
  Eigen::Index n = sub.rows(), d = sub.cols();
  // complete sub to a unitary basis via QR of [sub | I]
  CMat full(n, n + d);
  full.leftCols(d) = sub;
  full.rightCols(n) = CMat::Identity(n, n);
  Eigen::HouseholderQR<CMat> qr(full);
  CMat q = qr.householderQ();
  complement_out = q.rightCols(n - d);
  std::vector<CMat> out;
  for (auto& g : gens) out.push_back(complement_out.adjoint() * g * complement_out);
  return out;
}

} // namespace numeric

namespace detail_decomp {

struct Piece {
  std::vector<CMat> gens; // restricted generators (h's first, then n's)
  std::size_t nh = 0;
};

// candidate separation weights shared across one decomposition
struct WeightMixer {
  std::vector<double> gamma;
  const std::vector<RatVec>* candidates;
  double value(const RatVec& lam) const {
    double v = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i) v += gamma[i] * rat_to_double(lam[i]);
    return v;
  }
  void tune(std::size_t nh, const std::vector<RatVec>& cands) {
    candidates = &cands;
    gamma.resize(nh);
    double base = 0.7310585786300049;
    for (int attempt = 0; attempt < 64; ++attempt) {
      double p = 1.0;
      for (std::size_t i = 0; i < nh; ++i) {
        p *= base;
        gamma[i] = p;
      }
      bool distinct = true;
      for (std::size_t a = 0; a < cands.size(); ++a)
        for (std::size_t b = a + 1; b < cands.size(); ++b)
          if (std::abs(value(cands[a]) - value(cands[b])) < kClusterGap) distinct = false;
      if (distinct) return;
      base = base * 0.831 + 0.0731;
    }
    throw Error("ToleranceAmbiguity", "cannot separate candidate weights");
  }
};

inline CMat mixed_h(const Piece& p, const WeightMixer& mix) {
  Eigen::Index d = p.gens.empty() ? 0 : p.gens[0].rows();
  CMat h = CMat::Zero(d, d);
  for (std::size_t i = 0; i < p.nh; ++i) h += mix.gamma[i] * p.gens[i];
  return h;
}

// recursive composition splitting of one piece
inline void refine(const Piece& p, const WeightMixer& mix, std::vector<Piece>& out) {
  Eigen::Index d = p.gens.empty() ? 0 : p.gens[0].rows();
  if (d == 0) return;
  if (d == 1) {
    out.push_back(p);
    return;
  }
  CMat h = mixed_h(p, mix);
  double scale = std::max(1.0, h.norm());
  auto kernel_seeds = [&](const CMat& op) {
    Eigen::JacobiSVD<CMat> svd(op, Eigen::ComputeFullV);
    std::vector<CVec> seeds;
    auto sv = svd.singularValues();
    for (Eigen::Index c = 0; c < op.cols(); ++c)
      if (c >= sv.size() || sv(c) < 1e-8 * scale) seeds.push_back(svd.matrixV().col(c));
    // a submodule may only meet the kernel in special directions; probe a
    // few fixed combinations of the kernel basis as well
    std::size_t base = seeds.size();
    static const std::complex<double> mixers[] = {{1, 0}, {-1, 0}, {2, 0}, {0, 1}, {1, 1}};
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = i + 1; j < base; ++j)
        for (auto& t : mixers) seeds.push_back(seeds[i] + t * seeds[j]);
    return seeds;
  };
  for (auto& lam : *mix.candidates) {
    CMat shifted = h - mix.value(lam) * CMat::Identity(d, d);
    // direct side: a proper spin gives a submodule
    for (auto& v : kernel_seeds(shifted)) {
      CMat w = numeric::spin(v, p.gens);
      if (w.cols() > 0 && w.cols() < d) {
        Piece sub{{}, p.nh}, quo{{}, p.nh};
        for (auto& g : p.gens) sub.gens.push_back(numeric::restrict_to(g, w));
        CMat comp;
        quo.gens = numeric::quotient_action(p.gens, w, comp);
        refine(sub, mix, out);
        refine(quo, mix, out);
        return;
      }
    }
    // transpose side: a proper transpose-spin's perp is a submodule
    std::vector<CMat> tgens;
    for (auto& g : p.gens) tgens.push_back(g.transpose());
    for (auto& v : kernel_seeds(shifted.transpose())) {
      CMat wt = numeric::spin(v, tgens);
      if (wt.cols() > 0 && wt.cols() < d) {
        // the bilinear annihilator {x : y^T x = 0, y in wt} is invariant;
        // it is the hermitian complement of conj(wt)
        CMat wconj = wt.conjugate();
        Eigen::HouseholderQR<CMat> qr(wconj);
        CMat q = qr.householderQ();
        CMat sub = q.rightCols(d - wt.cols());
        Piece subp{{}, p.nh}, quo{{}, p.nh};
        for (auto& g : p.gens) subp.gens.push_back(numeric::restrict_to(g, sub));
        CMat comp;
        quo.gens = numeric::quotient_action(p.gens, sub, comp);
        refine(subp, mix, out);
        refine(quo, mix, out);
        return;
      }
    }
  }
  out.push_back(p); // no proper submodule found from any weight seed
}

} // namespace detail_decomp

inline std::vector<CompositionFactor> decompose_numeric(const GHModule& m, std::uint64_t seed) {
  if (m.dim > 200) throw Error("ParseError", "module dimension above the supported bound");
  std::vector<CMat> gens;
  for (auto& h : m.h) gens.push_back(to_complex(h));
  for (auto& nmat : m.n) gens.push_back(to_complex(nmat));

  detail_decomp::WeightMixer mix;
  mix.tune(m.h.size(), m.candidates);

  // stage 1: summands via the seeded commutant element
  auto pieces = numeric::split_by_commutant(gens, Eigen::Index(m.dim), seed);
  // stage 2: composition refinement per summand
  std::vector<detail_decomp::Piece> flat;
  for (auto& piece : pieces) {
    for (auto& gmat : gens)
      if (numeric::invariance_residual(gmat, piece.basis) > kMatchTol * 100 * double(m.dim))
        throw Error("ToleranceAmbiguity", "commutant eigenspace is not invariant");
    detail_decomp::Piece p{{}, m.h.size()};
    for (auto& gmat : gens) p.gens.push_back(numeric::restrict_to(gmat, piece.basis));
    detail_decomp::refine(p, mix, flat);
  }

  std::vector<CompositionFactor> out;
  for (auto& p : flat) {
    CompositionFactor f;
    f.dim = std::size_t(p.gens.empty() ? 0 : p.gens[0].rows());
    // weight multiplicities through Newton trace sums: tr(comb^j) =
    // sum_c mult_c v_c^j; eigenvalues of defective restrictions are far
    // too inaccurate to cluster, trace powers are stable
    CMat comb = detail_decomp::mixed_h(p, mix);
    Eigen::Index dd = Eigen::Index(f.dim);
    std::size_t nc = m.candidates.size();
    Eigen::MatrixXcd vand(nc, nc);
    Eigen::VectorXcd traces(nc);
    CMat power = CMat::Identity(dd, dd);
    for (std::size_t j = 0; j < nc; ++j) {
      for (std::size_t c = 0; c < nc; ++c)
        vand(Eigen::Index(j), Eigen::Index(c)) = std::pow(mix.value(m.candidates[c]), double(j));
      traces(Eigen::Index(j)) = power.trace();
      power = power * comb;
    }
    Eigen::VectorXcd sol = vand.fullPivLu().solve(traces);
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < nc; ++c) {
      double re = sol(Eigen::Index(c)).real();
      long rounded = std::llround(re);
      if (std::abs(sol(Eigen::Index(c)) - std::complex<double>(double(rounded), 0.0)) > 1e-4 ||
          rounded < 0)
        throw Error("ToleranceAmbiguity", "weight multiplicity does not round to an integer");
      if (rounded > 0) {
        f.weights.push_back({m.candidates[c], std::size_t(rounded)});
        assigned += std::size_t(rounded);
      }
    }
    if (assigned != f.dim)
      throw Error("ToleranceAmbiguity", "weights match " + std::to_string(assigned) + " of " +
                                            std::to_string(f.dim) + " dimensions");
    for (std::size_t g = m.h.size(); g < p.gens.size(); ++g) f.n_traces.push_back(p.gens[g].trace());
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const CompositionFactor& a, const CompositionFactor& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.weights < b.weights;
  });
  std::size_t total = 0;
  for (auto& f : out) total += f.dim;
  if (total != m.dim) throw Error("ToleranceAmbiguity", "factor dimensions do not sum up");
  return out;
}

// isomorphism-class signature used when collecting factors across several
// induced modules: exact weights plus rounded traces
inline bool factors_equivalent(const CompositionFactor& a, const CompositionFactor& b) {
  if (a.dim != b.dim || a.weights != b.weights) return false;
  if (a.n_traces.size() != b.n_traces.size()) return false;
  for (std::size_t i = 0; i < a.n_traces.size(); ++i)
    if (std::abs(a.n_traces[i] - b.n_traces[i]) > kClusterGap) return false;
  return true;
}

} // namespace heckeforge
