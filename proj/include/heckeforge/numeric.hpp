// Seeded deterministic numerical splitting of finite-dimensional modules
// and finite algebras. Two schemes:
//  - commutant splitting for a module given by generator matrices: a
//    pseudo-random element of the commutant is diagonalized and its
//    eigenvalue clusters are invariant subspaces, irreducible for a
//    generic choice;
//  - central splitting for an algebra spanned by a projective group of
//    basis units: averaging a random element over unit conjugation lands
//    in the centre, whose eigenvalue clusters on the regular module are
//    the matrix blocks.
// Tolerances are fixed: clusters are separated at 1e-6 and matches to
// exact candidates accepted at 1e-8.

#pragma once

#include "heckeforge/rational.hpp"

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace heckeforge {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kClusterGap = 1e-6;
inline constexpr double kMatchTol = 1e-8;

namespace numeric {

// orthonormal basis of the joint commutant {X : X A = A X for all A}
inline std::vector<CMat> commutant_basis(const std::vector<CMat>& gens, Eigen::Index n) {
  Eigen::Index n2 = n * n;
  CMat sys(gens.size() * n2, n2);
  sys.setZero();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const CMat& a = gens[g];
    // row index (i,j): sum_k X_ik A_kj - A_ik X_kj
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index row = Eigen::Index(g) * n2 + i * n + j;
        for (Eigen::Index k = 0; k < n; ++k) {
          sys(row, i * n + k) += a(k, j);
          sys(row, k * n + j) -= a(i, k);
        }
      }
  }
  Eigen::JacobiSVD<CMat> svd(sys, Eigen::ComputeFullV);
  auto sv = svd.singularValues();
  double tol = 1e-10 * (sv.size() ? sv(0) : 1.0) * double(n);
  std::vector<CMat> basis;
  for (Eigen::Index c = 0; c < sys.cols(); ++c) {
    if (c < sv.size() && sv(c) > std::max(tol, 1e-12)) continue;
    CMat x(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) x(i, j) = svd.matrixV()(i * n + j, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

// cluster complex values with the fixed gap; throws when two values sit
// between the match and gap thresholds
inline std::vector<std::vector<int>> cluster_values(const std::vector<std::complex<double>>& vals) {
  std::vector<std::vector<int>> clusters;
  std::vector<int> rep;
  for (int i = 0; i < int(vals.size()); ++i) {
    int found = -1;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      double dist = std::abs(vals[std::size_t(rep[c])] - vals[std::size_t(i)]);
      if (dist < kClusterGap) {
        if (found >= 0) throw Error("ToleranceAmbiguity", "eigenvalue clusters overlap");
        found = int(c);
      }
    }
    if (found < 0) {
      clusters.push_back({i});
      rep.push_back(i);
    } else {
      clusters[std::size_t(found)].push_back(i);
    }
  }
  // gap sanity: representatives pairwise separated
  for (std::size_t a = 0; a < rep.size(); ++a)
    for (std::size_t b = a + 1; b < rep.size(); ++b)
      if (std::abs(vals[std::size_t(rep[a])] - vals[std::size_t(rep[b])]) < kClusterGap)
        throw Error("ToleranceAmbiguity", "cluster representatives too close");
  return clusters;
}

struct Subspace {
  CMat basis; // columns span the subspace
};

// invariant subspaces from a generic commutant element (seeded)
inline std::vector<Subspace> split_by_commutant(const std::vector<CMat>& gens, Eigen::Index n,
                                                std::uint64_t seed) {
  if (n == 0) return {};
  auto basis = commutant_basis(gens, n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CMat c = CMat::Zero(n, n);
  for (auto& b : basis) c += std::complex<double>(dist(rng), dist(rng)) * b;
  // nudge towards normality for numerical stability: project c + c^H back
  // onto the commutant span
  CMat h = c + c.adjoint();
  CMat proj = CMat::Zero(n, n);
  for (auto& b : basis) {
    std::complex<double> coeff = (b.adjoint() * h).trace() / (b.adjoint() * b).trace();
    proj += coeff * b;
  }
  c = 0.5 * (c + proj);
  Eigen::ComplexEigenSolver<CMat> es(c);
  if (es.info() != Eigen::Success) throw Error("ToleranceAmbiguity", "eigen decomposition failed");
  std::vector<std::complex<double>> vals;
  vals.resize(std::size_t(n));
  for (Eigen::Index i = 0; i < n; ++i) vals[std::size_t(i)] = es.eigenvalues()(i);
  auto clusters = cluster_values(vals);
  std::vector<Subspace> out;
  for (auto& cl : clusters) {
    CMat sub(n, Eigen::Index(cl.size()));
    for (std::size_t j = 0; j < cl.size(); ++j) sub.col(Eigen::Index(j)) = es.eigenvectors().col(cl[j]);
    // orthonormalize
    Eigen::HouseholderQR<CMat> qr(sub);
    CMat q = qr.householderQ() * CMat::Identity(n, Eigen::Index(cl.size()));
    out.push_back({std::move(q)});
  }
  return out;
}

// restriction of an operator to a subspace with orthonormal columns
inline CMat restrict_to(const CMat& op, const CMat& basis) {
  return basis.adjoint() * op * basis;
}

// residual of invariance: || (1 - P) A P ||
inline double invariance_residual(const CMat& op, const CMat& basis) {
  CMat img = op * basis;
  CMat proj = basis * (basis.adjoint() * img);
  return (img - proj).norm();
}

} // namespace numeric

// ---- structure-constant algebras spanned by projective units ----

// A finite algebra with a basis of invertible elements closed under
// multiplication up to scalars: mul(i,j) = (index, complex unit scalar).
struct UnitBasisAlgebra {
  int n = 0;
  std::vector<std::vector<int>> prod;                      // basis index table
  std::vector<std::vector<std::complex<double>>> scalar;   // matching unit scalars
  std::vector<int> inv;                                    // basis inverse index
  std::vector<std::complex<double>> inv_scalar;            // u_i * u_{inv} = scalar * 1

  void validate() const {
    for (int i = 0; i < n; ++i) {
      if (prod[0][i] != i || prod[i][0] != i) throw Error("NotAGroup", "unit basis identity fails");
      if (prod[i][inv[i]] != 0) throw Error("NotAGroup", "unit basis inverse fails");
    }
  }
};

struct BlockSplit {
  std::vector<std::size_t> dims;                     // block dimensions d_i
  std::vector<numeric::Subspace> isotypic;           // subspaces of the regular module, dim d_i^2
};

// centre-driven splitting of the regular module of a unit-basis algebra
inline BlockSplit split_regular_module(const UnitBasisAlgebra& a, std::uint64_t seed) {
  a.validate();
  int n = a.n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  // random element, then average over unit conjugation -> centre
  std::vector<std::complex<double>> x;
  x.resize(std::size_t(n));
  for (auto& v : x) v = {dist(rng), dist(rng)};
  std::vector<std::complex<double>> z;
  z.resize(std::size_t(n));
  for (int u = 0; u < n; ++u) {
    // z += u * x * u^{-1}
    for (int b = 0; b < n; ++b) {
      if (x[std::size_t(b)] == std::complex<double>(0)) continue;
      int ub = a.prod[std::size_t(u)][std::size_t(b)];
      auto s1 = a.scalar[std::size_t(u)][std::size_t(b)];
      int tgt = a.prod[std::size_t(ub)][std::size_t(a.inv[std::size_t(u)])];
      auto s2 = a.scalar[std::size_t(ub)][std::size_t(a.inv[std::size_t(u)])];
      z[std::size_t(tgt)] += x[std::size_t(b)] * s1 * s2 / a.inv_scalar[std::size_t(u)];
    }
  }
  for (auto& v : z) v /= double(n);
  // left multiplication by z on the regular module
  CMat lz = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      if (z[std::size_t(i)] == std::complex<double>(0)) continue;
      lz(a.prod[std::size_t(i)][std::size_t(b)], b) += z[std::size_t(i)] * a.scalar[std::size_t(i)][std::size_t(b)];
    }
  Eigen::ComplexEigenSolver<CMat> es(lz);
  if (es.info() != Eigen::Success) throw Error("ToleranceAmbiguity", "eigen decomposition failed");
  std::vector<std::complex<double>> vals;
  vals.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) vals[std::size_t(i)] = es.eigenvalues()(i);
  auto clusters = numeric::cluster_values(vals);
  BlockSplit out;
  std::size_t total = 0;
  for (auto& cl : clusters) {
    std::size_t sz = cl.size();
    std::size_t d = std::size_t(std::llround(std::sqrt(double(sz))));
    if (d * d != sz)
      throw Error("ToleranceAmbiguity", "isotypic cluster size is not a perfect square");
    CMat sub(n, Eigen::Index(sz));
    for (std::size_t j = 0; j < sz; ++j) sub.col(Eigen::Index(j)) = es.eigenvectors().col(cl[j]);
    Eigen::HouseholderQR<CMat> qr(sub);
    CMat q = qr.householderQ() * CMat::Identity(n, Eigen::Index(sz));
    out.dims.push_back(d);
    out.isotypic.push_back({std::move(q)});
    total += sz;
  }
  if (total != std::size_t(n)) throw Error("ToleranceAmbiguity", "cluster sizes do not add up");
  // deterministic order: by dimension, then by real part of the cluster value
  std::vector<std::size_t> order(out.dims.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::complex<double>> reps(out.dims.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) reps[i] = vals[std::size_t(clusters[i][0])];
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (out.dims[x] != out.dims[y]) return out.dims[x] < out.dims[y];
    if (std::abs(reps[x].real() - reps[y].real()) > kClusterGap) return reps[x].real() < reps[y].real();
    return reps[x].imag() < reps[y].imag();
  });
  BlockSplit sorted;
  for (auto i : order) {
    sorted.dims.push_back(out.dims[i]);
    sorted.isotypic.push_back(std::move(out.isotypic[i]));
  }
  return sorted;
}

} // namespace heckeforge
