// Finite group tables and 2-cocycles with values in roots of unity,
// written additively as rational angles mod 1.

#pragma once

#include "heckeforge/linalg.hpp"

#include <numeric>
#include <vector>

namespace heckeforge {

struct GroupTable {
  std::vector<std::vector<int>> mul; // identity is index 0
  std::vector<int> inv;

  int size() const { return int(mul.size()); }

  static GroupTable trivial() { return {{{0}}, {0}}; }

  static GroupTable cyclic(int n) {
    GroupTable g;
    g.mul.assign(n, std::vector<int>(n));
    g.inv.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.mul[i][j] = (i + j) % n;
    for (int i = 0; i < n; ++i) g.inv[i] = (n - i) % n;
    return g;
  }

  static GroupTable product(const GroupTable& a, const GroupTable& b) {
    int n = a.size() * b.size();
    GroupTable g;
    g.mul.assign(n, std::vector<int>(n));
    g.inv.assign(n, 0);
    auto id = [&](int x, int y) { return x * b.size() + y; };
    for (int x1 = 0; x1 < a.size(); ++x1)
      for (int y1 = 0; y1 < b.size(); ++y1)
        for (int x2 = 0; x2 < a.size(); ++x2)
          for (int y2 = 0; y2 < b.size(); ++y2)
            g.mul[id(x1, y1)][id(x2, y2)] = id(a.mul[x1][x2], b.mul[y1][y2]);
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < b.size(); ++y) g.inv[id(x, y)] = id(a.inv[x], b.inv[y]);
    return g;
  }

  // symmetric group on 3 letters, for test fixtures
  static GroupTable s3();

  void validate() const {
    int n = size();
    for (int i = 0; i < n; ++i) {
      if (mul[0][i] != i || mul[i][0] != i) throw Error("NotAGroup", "identity fails");
      if (mul[i][inv[i]] != 0) throw Error("NotAGroup", "inverse fails");
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (mul[mul[i][j]][k] != mul[i][mul[j][k]]) throw Error("NotAGroup", "associativity fails");
    }
  }
};

inline GroupTable GroupTable::s3() {
  // permutations of {0,1,2} listed as id, (01), (02), (12), (012), (021)
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto compose = [&](int a, int b) { // apply b first, then a
    std::array<int, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
    for (int k = 0; k < 6; ++k)
      if (perms[k] == c) return k;
    return -1;
  };
  GroupTable g;
  g.mul.assign(6, std::vector<int>(6));
  g.inv.assign(6, 0);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) g.mul[a][b] = compose(a, b);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (g.mul[a][b] == 0) g.inv[a] = b;
  return g;
}

struct TwoCocycle {
  std::vector<std::vector<Rat>> angle; // angle[a][b] mod 1

  static TwoCocycle trivial(int n) {
    TwoCocycle c;
    c.angle.assign(n, std::vector<Rat>(n, Rat(0)));
    return c;
  }

  int size() const { return int(angle.size()); }
  Rat operator()(int a, int b) const { return angle[a][b]; }

  TwoCocycle inverted() const {
    TwoCocycle c = *this;
    for (auto& row : c.angle)
      for (auto& x : row) x = mod1(-x);
    return c;
  }

  // restriction to a subgroup given by element indices
  TwoCocycle restricted(const std::vector<int>& elems) const {
    TwoCocycle c;
    c.angle.assign(elems.size(), std::vector<Rat>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) c.angle[i][j] = angle[elems[i]][elems[j]];
    return c;
  }

  bool is_trivial() const {
    for (auto& row : angle)
      for (auto& x : row)
        if (mod1(x) != 0) return false;
    return true;
  }
};

inline void validate_cocycle(const GroupTable& g, const TwoCocycle& c) {
  int n = g.size();
  if (c.size() != n) throw Error("CocycleViolation", "table size mismatch");
  for (int a = 0; a < n; ++a)
    if (mod1(c(0, a)) != 0 || mod1(c(a, 0)) != 0)
      throw Error("CocycleViolation", "cocycle not normalized at the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        if (mod1(c(a, b) + c(g.mul[a][b], d)) != mod1(c(b, d) + c(a, g.mul[b][d])))
          throw Error("CocycleViolation", "identity fails at triple (" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(d) + ")");
}

// common denominator of all cocycle values
inline long cocycle_level(const TwoCocycle& c) {
  long l = 1;
  for (auto& row : c.angle)
    for (auto& x : row) l = std::lcm(l, denominator(mod1(x)).convert_to<long>());
  return l;
}

// Search for a 1-cochain beta with (d beta)(a,b) = beta(a)+beta(b)-beta(ab)
// equal to c1 - c2 mod 1. Exact solve over Z/N via Smith normal form.
inline std::optional<std::vector<Rat>> cohomologous(const GroupTable& g, const TwoCocycle& c1,
                                                    const TwoCocycle& c2) {
  int n = g.size();
  long N = std::lcm(cocycle_level(c1), cocycle_level(c2));
  // rows: one per pair (a,b); cols: beta(x) integer mod N scaled by 1/N
  IntMat d;
  IntVec rhs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      IntVec row(n, 0);
      row[a] += 1;
      row[b] += 1;
      row[g.mul[a][b]] -= 1;
      d.push_back(std::move(row));
      Rat target = mod1(c1(a, b) - c2(a, b)) * Rat(N);
      rhs.push_back(rat_to_ll(target, "scaled cocycle value"));
    }
  auto snf = smith_normal_form(d);
  std::size_t rows = d.size(), cols = std::size_t(n);
  // solve S y = U rhs (mod N), then beta = V y
  IntVec urhs(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) urhs[i] += snf.u[i][j] * rhs[j];
  IntVec y(cols, 0);
  auto modN = [&](long long v) {
    long long m = v % N;
    return m < 0 ? m + N : m;
  };
  for (std::size_t i = 0; i < rows; ++i) {
    long long s = i < cols ? snf.s[i][i] : 0;
    long long r = modN(urhs[i]);
    if (s == 0) {
      if (r != 0) return std::nullopt;
      continue;
    }
    long long gg = std::gcd(s, (long long)N);
    if (r % gg != 0) return std::nullopt;
    // solve s * y = r (mod N)
    long long s1 = s / gg, n1 = N / gg, r1 = r / gg;
    // inverse of s1 mod n1
    long long t = 0, newt = 1, rr = n1, newr = modN(s1) % (n1 == 0 ? 1 : n1);
    if (n1 == 1) {
      y[i] = 0;
      continue;
    }
    while (newr != 0) {
      long long qq = rr / newr;
      std::swap(t -= qq * newt, newt);
      std::swap(rr -= qq * newr, newr);
    }
    if (rr != 1) return std::nullopt;
    long long inv = ((t % n1) + n1) % n1;
    y[i] = (r1 % n1) * inv % n1;
  }
  std::vector<Rat> beta(cols, Rat(0));
  for (std::size_t i = 0; i < cols; ++i) {
    long long v = 0;
    for (std::size_t j = 0; j < cols; ++j) v += snf.v[i][j] * y[j];
    beta[i] = mod1(Rat(modN(v), N));
  }
  // verify
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mod1(beta[a] + beta[b] - beta[g.mul[a][b]]) != mod1(c1(a, b) - c2(a, b)))
        return std::nullopt;
  return beta;
}

} // namespace heckeforge
