// Twisted graded Hecke algebras: a degenerate root datum, the finite
// group W(Sigma) x| R acting on it, a nonnegative parameter k per orbit,
// and a 2-cocycle inflated from R. Elements are sums poly * N_g in the
// poly-left normal form; the rewriting rules are
//   N_s f = (s.f) N_s + k_s (f - s.f)/h_s      (exact division)
//   N_r f = (r.f) N_r
//   N_g N_h = sign(cocycle(pi g, pi h)) N_{gh}
// Principal series modules are induced from characters of the polynomial
// part and carry exact rational matrices.

#pragma once

#include "heckeforge/cocycle.hpp"
#include "heckeforge/cyclotomic.hpp"
#include "heckeforge/polynomial.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace heckeforge {

struct DegenerateRootDatum {
  std::size_t dim = 0;
  std::vector<RatVec> coroots; // h_a, live in a_M
  std::vector<RatVec> roots;   // a#, live in a_M^*
  std::vector<int> basis;

  static Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  int index_of(const RatVec& v) const {
    for (std::size_t i = 0; i < coroots.size(); ++i)
      if (coroots[i] == v) return int(i);
    return -1;
  }

  void validate() const {
    if (coroots.size() != roots.size()) throw Error("ParseError", "coroot/root length mismatch");
    for (std::size_t i = 0; i < coroots.size(); ++i)
      if (dot(coroots[i], roots[i]) != 2)
        throw Error("PairingNotTwo", "degenerate pairing at root " + std::to_string(i));
    for (std::size_t r = 0; r < coroots.size(); ++r)
      for (std::size_t j = 0; j < coroots.size(); ++j) {
        RatVec img = coroots[j];
        Rat c = dot(coroots[j], roots[r]);
        for (std::size_t i = 0; i < dim; ++i) img[i] -= c * coroots[r][i];
        if (index_of(img) < 0)
          throw Error("ReflectionNotClosed", "degenerate reflection escapes the root set");
      }
  }

  // x -> x - <x, a#> h_a on a_M
  RatMat reflection(int root_index) const {
    RatMat m = rat_identity(dim);
    for (std::size_t col = 0; col < dim; ++col)
      for (std::size_t row = 0; row < dim; ++row)
        m[row][col] -= roots[root_index][col] * coroots[root_index][row];
    return m;
  }
};

// finite group of rational matrices acting on a_M, with the R |x W shape:
// every element is written as one R letter followed by simple letters
struct GradedGroup {
  std::vector<RatMat> mats;
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;
  std::vector<int> simple;            // element index per basis position
  std::vector<int> r_of;              // element -> position of its R component
  std::vector<int> r_elems;           // R position -> element index
  std::vector<std::vector<int>> word; // leftmost-first; -1-r for R letters, s >= 0 for simples

  int size() const { return int(mats.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const { return inverse[a]; }
};

inline GradedGroup build_graded_group(const DegenerateRootDatum& d,
                                      const std::vector<RatMat>& extra_gens, long cap = 100000) {
  GradedGroup g;
  std::vector<RatMat> gens;
  for (int b : d.basis) gens.push_back(d.reflection(b));
  for (auto& x : extra_gens) gens.push_back(x);
  g.mats.push_back(rat_identity(d.dim));
  auto find = [&](const RatMat& m) {
    for (int i = 0; i < g.size(); ++i)
      if (g.mats[i] == m) return i;
    return -1;
  };
  for (std::size_t i = 0; i < g.mats.size(); ++i)
    for (auto& x : gens) {
      if (long(g.mats.size()) > cap) throw Error("NotFinite", "graded group closure exceeds cap");
      auto p = rat_mul(g.mats[i], x);
      if (find(p) < 0) g.mats.push_back(p);
      auto p2 = rat_mul(x, g.mats[i]);
      if (find(p2) < 0) g.mats.push_back(p2);
    }

  std::vector<std::vector<int>> perm(g.size(), std::vector<int>(d.coroots.size()));
  for (int e = 0; e < g.size(); ++e)
    for (std::size_t i = 0; i < d.coroots.size(); ++i) {
      int j = d.index_of(rat_mul_vec(g.mats[e], d.coroots[i]));
      if (j < 0) throw Error("NotPreservingRoots", "graded group element moves a coroot out");
      perm[e][i] = j;
    }

  std::set<int> positive;
  if (!d.basis.empty()) {
    RatMat bmat(d.dim, RatVec(d.basis.size()));
    for (std::size_t j = 0; j < d.basis.size(); ++j)
      for (std::size_t i = 0; i < d.dim; ++i) bmat[i][j] = d.coroots[d.basis[j]][i];
    for (std::size_t i = 0; i < d.coroots.size(); ++i) {
      auto sol = solve_linear(bmat, d.coroots[i]);
      if (!sol) throw Error("InvalidBasis", "degenerate root outside basis span");
      bool nonneg = true;
      for (auto& x : *sol) nonneg = nonneg && x >= 0;
      if (nonneg) positive.insert(int(i));
    }
  }
  auto length = [&](int e) {
    int len = 0;
    for (int i : positive)
      if (!positive.count(perm[e][i])) ++len;
    return len;
  };

  g.table.assign(g.size(), std::vector<int>(g.size()));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      int k = find(rat_mul(g.mats[i], g.mats[j]));
      if (k < 0) throw Error("NotClosed", "graded product escapes closure");
      g.table[i][j] = k;
    }
  g.inverse.assign(g.size(), -1);
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (g.table[i][j] == 0) g.inverse[i] = j;
  for (int b : d.basis) {
    int idx = find(d.reflection(b));
    if (idx < 0) throw Error("Internal", "simple reflection missing");
    g.simple.push_back(idx);
  }

  // factor each element as r * (simple word) by stripping right descents
  g.r_of.assign(g.size(), -1);
  g.word.assign(g.size(), {});
  std::map<int, int> rpos;
  for (int e = 0; e < g.size(); ++e) {
    int x = e;
    std::vector<int> letters; // collected from the right
    while (length(x) > 0) {
      bool moved = false;
      for (std::size_t s = 0; s < d.basis.size(); ++s)
        if (!positive.count(perm[x][d.basis[s]])) {
          letters.push_back(int(s));
          x = g.table[x][g.simple[s]];
          moved = true;
          break;
        }
      if (!moved) throw Error("Internal", "graded element with length but no descent");
    }
    if (!rpos.count(x)) {
      rpos[x] = int(rpos.size());
      g.r_elems.push_back(x);
    }
    std::vector<int> w{-1 - rpos[x]};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.push_back(*it);
    g.word[e] = std::move(w);
    g.r_of[e] = rpos[x];
  }
  // words rebuild their elements
  for (int e = 0; e < g.size(); ++e) {
    int acc = g.r_elems[-1 - g.word[e][0]];
    for (std::size_t i = 1; i < g.word[e].size(); ++i)
      acc = g.table[acc][g.simple[std::size_t(g.word[e][i])]];
    if (acc != e) throw Error("Internal", "graded word does not rebuild its element");
  }
  return g;
}

class GradedHecke {
public:
  DegenerateRootDatum datum;
  GradedGroup group;
  std::vector<Rat> k; // per root index, constant on group orbits
  TwoCocycle cocycle; // on the R positions

  GradedHecke(DegenerateRootDatum d, GradedGroup g, std::vector<Rat> k_in, TwoCocycle c)
      : datum(std::move(d)), group(std::move(g)), k(std::move(k_in)), cocycle(std::move(c)) {
    datum.validate();
    if (k.size() != datum.coroots.size())
      throw Error("ParseError", "k must assign a value to every root");
    for (auto& v : k)
      if (v < 0) throw Error("ParameterOrder", "k must be nonnegative");
    for (int e = 0; e < group.size(); ++e)
      for (std::size_t i = 0; i < datum.coroots.size(); ++i) {
        int j = datum.index_of(rat_mul_vec(group.mats[e], datum.coroots[i]));
        if (k[i] != k[j]) throw Error("OrbitConstancy", "k is not constant on orbits");
      }
    int n = int(group.r_elems.size());
    r_table_.mul.assign(n, std::vector<int>(n));
    r_table_.inv.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r_table_.mul[i][j] = group.r_of[group.mul(group.r_elems[i], group.r_elems[j])];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r_table_.mul[i][j] == 0) r_table_.inv[i] = j;
    validate_cocycle(r_table_, cocycle);
    for (auto& row : cocycle.angle)
      for (auto& x : row)
        if (!scalar_ops<Rat>::unit(x))
          throw Error("UnrepresentableScalar",
                      "graded cocycle values must be of order at most two");
  }

  const GroupTable& r_table() const { return r_table_; }

  Rat cocycle_sign(int g1, int g2) const {
    return *scalar_ops<Rat>::unit(cocycle(group.r_of[g1], group.r_of[g2]));
  }

  struct Elem {
    std::map<int, Poly> terms; // group index -> left polynomial
    void add(int g, const Poly& p) {
      if (p.is_zero()) return;
      auto [it, fresh] = terms.emplace(g, p);
      if (!fresh) {
        it->second = it->second + p;
        if (it->second.is_zero()) terms.erase(it);
      }
    }
    bool is_zero() const { return terms.empty(); }
    friend Elem operator+(Elem a, const Elem& b) {
      for (auto& [g, p] : b.terms) a.add(g, p);
      return a;
    }
    friend Elem operator-(Elem a, const Elem& b) {
      for (auto& [g, p] : b.terms) a.add(g, -p);
      return a;
    }
    friend bool operator==(const Elem& a, const Elem& b) { return a.terms == b.terms; }
  };

  Elem from_poly(const Poly& p) const {
    Elem e;
    e.add(0, p);
    return e;
  }
  Elem one() const { return from_poly(Poly::one(datum.dim)); }
  Elem n_basis(int g) const {
    Elem e;
    e.add(g, Poly::one(datum.dim));
    return e;
  }

  Poly act(int g, const Poly& p) const { return p.substituted(group.mats[g]); }

  // (f - s.f)/h_s at basis position s
  Poly delta(std::size_t basis_pos, const Poly& f) const {
    int root = datum.basis[basis_pos];
    Poly diff = f - f.substituted(group.mats[group.simple[basis_pos]]);
    if (diff.is_zero()) return Poly(datum.dim);
    return diff.divided_by_linear(datum.coroots[root]);
  }

  // N_g f = sum_h out[h] N_h; letters act right-to-left
  std::map<int, Poly> push_left(int g, const Poly& f) const {
    std::map<int, Poly> cur;
    if (f.is_zero()) return cur;
    cur.emplace(0, f);
    const auto& w = group.word[g];
    auto add = [](std::map<int, Poly>& m, int key, const Poly& val) {
      if (val.is_zero()) return;
      auto [it, fresh] = m.emplace(key, val);
      if (!fresh) {
        it->second = it->second + val;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int letter = *it;
      int t = letter < 0 ? group.r_elems[-1 - letter] : group.simple[std::size_t(letter)];
      std::map<int, Poly> next;
      for (auto& [h, q] : cur) {
        add(next, group.mul(t, h), act(t, q).scaled(cocycle_sign(t, h)));
        if (letter >= 0) {
          int root = datum.basis[std::size_t(letter)];
          add(next, h, delta(std::size_t(letter), q).scaled(k[root]));
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  // f N_g = sum_h N_h out[h]; letters act left-to-right
  std::map<int, Poly> push_right(int g, const Poly& f) const {
    std::map<int, Poly> cur;
    if (f.is_zero()) return cur;
    cur.emplace(0, f);
    auto add = [](std::map<int, Poly>& m, int key, const Poly& val) {
      if (val.is_zero()) return;
      auto [it, fresh] = m.emplace(key, val);
      if (!fresh) {
        it->second = it->second + val;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (int letter : group.word[g]) {
      int t = letter < 0 ? group.r_elems[-1 - letter] : group.simple[std::size_t(letter)];
      std::map<int, Poly> next;
      for (auto& [h, q] : cur) {
        // q N_t = N_t (t^{-1}.q) + k delta(q) when t is simple
        add(next, group.mul(h, t), act(group.inv(t), q).scaled(cocycle_sign(h, t)));
        if (letter >= 0) {
          int root = datum.basis[std::size_t(letter)];
          add(next, h, delta(std::size_t(letter), q).scaled(k[root]));
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  Elem multiply(const Elem& a, const Elem& b) const {
    Elem out;
    for (auto& [g1, p1] : a.terms)
      for (auto& [g2, p2] : b.terms)
        for (auto& [h, q] : push_left(g1, p2))
          out.add(group.mul(h, g2), (p1 * q).scaled(cocycle_sign(h, g2)));
    return out;
  }

private:
  GroupTable r_table_;
};

// opposite algebra: inverse cocycle; the anti-isomorphism sends a basis
// element N_g f of the N-left normal form to f N_{g^{-1}}, so poly-left
// elements are first rewritten through push_right
inline GradedHecke opposite_algebra(const GradedHecke& alg) {
  return GradedHecke(alg.datum, alg.group, alg.k, alg.cocycle.inverted());
}

inline GradedHecke::Elem opposite_map(const GradedHecke& alg, const GradedHecke::Elem& e) {
  GradedHecke::Elem out;
  for (auto& [g, p] : e.terms)
    for (auto& [h, q] : alg.push_right(g, p)) out.add(alg.group.inv(h), q);
  return out;
}

// ---- finite dimensional modules ----

struct GHModule {
  std::size_t dim = 0;
  std::vector<RatMat> h;          // one matrix per coordinate of a_M
  std::vector<RatMat> n;          // one matrix per group element
  std::vector<RatVec> candidates; // candidate weights in dual coordinates
};

// induced module with basis N_g (x) 1_lambda over the full group
inline GHModule principal_series(const GradedHecke& alg, const RatVec& lambda) {
  const auto& gp = alg.group;
  std::size_t n = std::size_t(gp.size()), dim = alg.datum.dim;
  GHModule m;
  m.dim = n;
  m.n.assign(n, RatMat(n, RatVec(n, Rat(0))));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t g = 0; g < n; ++g)
      m.n[t][std::size_t(gp.mul(int(t), int(g)))][g] = alg.cocycle_sign(int(t), int(g));

  // h N_g (x) 1 = (g^{-1} h)(lambda) e_g + sum over dropped simple
  // letters of k <moved h, a#> e_{word with that letter removed}
  m.h.assign(dim, RatMat(n, RatVec(n, Rat(0))));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t g = 0; g < n; ++g) {
      const auto& word = gp.word[g];
      RatVec v(dim, Rat(0));
      v[i] = 1;
      for (std::size_t pos = 0; pos < word.size(); ++pos) {
        int letter = word[pos];
        if (letter < 0) {
          int r = gp.r_elems[-1 - letter];
          v = rat_mul_vec(gp.mats[gp.inv(r)], v);
        } else {
          int root = alg.datum.basis[std::size_t(letter)];
          Rat corr = alg.k[root] * DegenerateRootDatum::dot(v, alg.datum.roots[root]);
          if (corr != 0) {
            int target = 0;
            for (std::size_t q = 0; q < word.size(); ++q) {
              if (q == pos) continue;
              int l2 = word[q];
              int t2 = l2 < 0 ? gp.r_elems[-1 - l2] : gp.simple[std::size_t(l2)];
              target = gp.mul(target, t2);
            }
            m.h[i][std::size_t(target)][g] += corr;
          }
          v = rat_mul_vec(gp.mats[gp.simple[std::size_t(letter)]], v);
        }
      }
      Rat diag(0);
      for (std::size_t t = 0; t < dim; ++t) diag += v[t] * lambda[t];
      m.h[i][g][g] += diag;
    }

  // candidate weights: the orbit of lambda under the dual action
  std::set<RatVec> cands;
  for (int e = 0; e < gp.size(); ++e) {
    auto minv = rat_inverse(gp.mats[e]);
    RatVec img(dim, Rat(0));
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) img[a] += (*minv)[b][a] * lambda[b];
    cands.insert(img);
  }
  m.candidates.assign(cands.begin(), cands.end());
  return m;
}

// every defining relation as an exact matrix identity
inline void verify_module(const GradedHecke& alg, const GHModule& m) {
  const auto& gp = alg.group;
  std::size_t dim = alg.datum.dim;
  auto eq = [&](const RatMat& a, const RatMat& b, const char* what) {
    if (a != b) throw Error("ModuleRelation", std::string("relation fails: ") + what);
  };
  auto add = [&](const RatMat& a, const RatMat& b) {
    RatMat c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) c[i][j] += b[i][j];
    return c;
  };
  auto scale = [&](RatMat a, const Rat& f) {
    for (auto& row : a)
      for (auto& x : row) x *= f;
    return a;
  };
  // commuting h part
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      eq(rat_mul(m.h[i], m.h[j]), rat_mul(m.h[j], m.h[i]), "h commute");
  // group part with cocycle
  for (int a = 0; a < gp.size(); ++a)
    for (int b = 0; b < gp.size(); ++b)
      eq(rat_mul(m.n[std::size_t(a)], m.n[std::size_t(b)]),
         scale(m.n[std::size_t(gp.mul(a, b))], alg.cocycle_sign(a, b)), "twisted group law");
  // cross relations for each simple reflection and coordinate
  for (std::size_t s = 0; s < gp.simple.size(); ++s) {
    int root = alg.datum.basis[s];
    int sel = gp.simple[s];
    const RatMat& ns = m.n[std::size_t(sel)];
    for (std::size_t i = 0; i < dim; ++i) {
      // h_i N_s - N_s (s.h_i) = k <e_i, a#> id
      RatVec ei(dim, Rat(0));
      ei[i] = 1;
      RatVec moved = rat_mul_vec(gp.mats[sel], ei);
      RatMat rhs(m.dim, RatVec(m.dim, Rat(0)));
      for (std::size_t t = 0; t < m.dim; ++t)
        rhs[t][t] = alg.k[root] * alg.datum.roots[root][i];
      RatMat shi(m.dim, RatVec(m.dim, Rat(0)));
      for (std::size_t t = 0; t < dim; ++t) shi = add(shi, scale(m.h[t], moved[t]));
      RatMat lhs = rat_mul(m.h[i], ns);
      RatMat mid = rat_mul(ns, shi);
      for (std::size_t r2 = 0; r2 < m.dim; ++r2)
        for (std::size_t c2 = 0; c2 < m.dim; ++c2) lhs[r2][c2] -= mid[r2][c2];
      eq(lhs, rhs, "cross relation");
    }
  }
  // R part: N_r h_i = (r.h_i) N_r
  for (std::size_t rp = 0; rp < alg.group.r_elems.size(); ++rp) {
    int rel = alg.group.r_elems[rp];
    for (std::size_t i = 0; i < dim; ++i) {
      RatVec ei(dim, Rat(0));
      ei[i] = 1;
      RatVec moved = rat_mul_vec(gp.mats[rel], ei);
      RatMat rhi(m.dim, RatVec(m.dim, Rat(0)));
      for (std::size_t t = 0; t < dim; ++t)
        rhi = add(rhi, scale(m.h[t], moved[t]));
      eq(rat_mul(m.n[std::size_t(rel)], m.h[i]), rat_mul(rhi, m.n[std::size_t(rel)]),
         "R commutation");
    }
  }
}

// exact generalized weight multiplicities over a candidate set; the
// multiplicities must exhaust the dimension
inline std::vector<std::pair<RatVec, std::size_t>> module_weights(const GHModule& m) {
  if (m.candidates.empty()) throw Error("IrrationalWeights", "no candidate weights supplied");
  std::size_t dim = m.dim, n = m.h.size();
  std::vector<std::pair<RatVec, std::size_t>> out;
  std::size_t total = 0;
  for (auto& lam : m.candidates) {
    // joint generalized kernel of (h_i - lam_i)^dim
    // realized by iterated restriction
    RatMat basis = rat_identity(dim); // rows span the current subspace
    for (std::size_t i = 0; i < n && !basis.empty(); ++i) {
      // operator on the subspace: rows of basis mapped through (h_i - lam)
      RatMat op = m.h[i];
      for (std::size_t t = 0; t < dim; ++t) op[t][t] -= lam[i];
      // power up to subspace dimension
      RatMat power = rat_identity(dim);
      for (std::size_t t = 0; t < basis.size(); ++t) power = rat_mul(power, op);
      // solve power * (x in span basis) = 0: rows = power * basis^T columns
      // coordinates: subspace vectors x = sum c_j basis_j
      RatMat sys(dim, RatVec(basis.size(), Rat(0)));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        RatVec img = rat_mul_vec(power, basis[j]);
        for (std::size_t t = 0; t < dim; ++t) sys[t][j] = img[t];
      }
      auto null = nullspace(sys);
      RatMat next;
      for (auto& coeff : null) {
        RatVec v(dim, Rat(0));
        for (std::size_t j = 0; j < basis.size(); ++j)
          for (std::size_t t = 0; t < dim; ++t) v[t] += coeff[j] * basis[j][t];
        next.push_back(std::move(v));
      }
      basis = std::move(next);
    }
    if (!basis.empty()) {
      out.push_back({lam, basis.size()});
      total += basis.size();
    }
  }
  if (total != dim)
    throw Error("IrrationalWeights", "candidates cover " + std::to_string(total) + " of " +
                                         std::to_string(dim) + " dimensions");
  return out;
}

} // namespace heckeforge
