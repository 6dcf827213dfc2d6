// Dense exact linear algebra over the rationals: solve, nullspace, inverse,
// plus integer matrices for lattice automorphisms and a small Smith normal
// form used by the cocycle-coboundary solver.

#pragma once

#include "heckeforge/rational.hpp"

#include <vector>

namespace heckeforge {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row-major
using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

inline RatMat rat_identity(std::size_t n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat c(n, RatVec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline RatVec rat_mul_vec(const RatMat& a, const RatVec& v) {
  RatVec r(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

// Row-reduce [A | rhs...] in place; returns pivot column per row.
inline std::vector<std::size_t> row_reduce(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Solve A x = b exactly; nullopt when inconsistent. Free variables are 0.
inline std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  RatMat aug(rows, RatVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = row_reduce(aug);
  for (std::size_t i = pivots.size(); i < rows; ++i)
    if (aug[i][cols] != 0) return std::nullopt;
  // pivot rows may reference the rhs column as pivot -> inconsistent
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == cols) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

inline RatMat nullspace(const RatMat& a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  RatMat m = a;
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMat basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<RatMat> rat_inverse(const RatMat& a) {
  std::size_t n = a.size();
  RatMat aug(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline std::size_t rat_rank(RatMat m) { return row_reduce(m).size(); }

// --- integer matrices (lattice automorphisms) ---

inline IntMat int_identity(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
  std::size_t n = a.size();
  IntMat c(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline IntVec int_mul_vec(const IntMat& a, const IntVec& v) {
  IntVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

inline RatMat to_rat(const IntMat& a) {
  RatMat m(a.size(), RatVec(a.empty() ? 0 : a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j];
  return m;
}

// Inverse of an element of GL_n(Z).
inline IntMat int_inverse(const IntMat& a) {
  auto inv = rat_inverse(to_rat(a));
  if (!inv) throw Error("NotInvertible", "lattice matrix is singular");
  IntMat r(a.size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      r[i][j] = rat_to_ll((*inv)[i][j], "inverse entry");
  return r;
}

inline IntMat int_transpose(const IntMat& a) {
  std::size_t n = a.size(), m = n ? a[0].size() : 0;
  IntMat t(m, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

// Smith normal form over Z: returns (U, S, V) with U*A*V = S diagonal,
// U, V unimodular. Sizes stay small here (cocycle coboundary systems).
struct SmithForm {
  IntMat u, s, v;
};

inline SmithForm smith_normal_form(IntMat a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  IntMat u = int_identity(rows), v = int_identity(cols);
  auto row_op = [&](std::size_t i, std::size_t j, long long f) { // row_i -= f*row_j
    for (std::size_t c = 0; c < cols; ++c) a[i][c] -= f * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] -= f * u[j][c];
  };
  auto col_op = [&](std::size_t i, std::size_t j, long long f) { // col_i -= f*col_j
    for (std::size_t r = 0; r < rows; ++r) a[r][i] -= f * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] -= f * v[r][j];
  };
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find smallest nonzero entry in the remaining block
    std::size_t pi = t, pj = t;
    long long best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (best == 0 || std::abs(a[i][j]) < std::abs(best))) {
          best = a[i][j];
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    std::swap(a[t], a[pi]);
    std::swap(u[t], u[pi]);
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][pj]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(v[r][t], v[r][pj]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i)
      if (a[i][t] != 0) {
        row_op(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
    for (std::size_t j = t + 1; j < cols; ++j)
      if (a[t][j] != 0) {
        col_op(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
    if (!clean) continue; // remainders left; repeat with smaller pivot
    if (a[t][t] < 0) {
      for (std::size_t c = 0; c < cols; ++c) a[t][c] = -a[t][c];
      for (std::size_t c = 0; c < rows; ++c) u[t][c] = -u[t][c];
    }
    ++t;
  }
  return {u, a, v};
}

} // namespace heckeforge
