// Root data, Weyl groups, the length-zero complement R, parameter
// functions with their constraints, point-dependent subsystems and
// adapted bases.
//
// Conventions: coroots h_a live in the lattice, roots a# in the dual,
// <h_a, a#> = 2. A Weyl element stores the integer matrix of its action
// on the lattice; the dual action on roots is tracked through the root
// index permutation. Lengths are |w(positive) meet negative|, which extends
// the Coxeter length to the full automorphism group.

#pragma once

#include "heckeforge/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace heckeforge {

struct WeylElement {
  IntMat matrix;              // action on the coroot lattice
  std::vector<int> root_perm; // index i -> index of w(h_i)
  int length = 0;

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.matrix == b.matrix; }
};

class RootDatum {
public:
  int rank = 0;
  std::vector<LatticeVector> coroots; // h_a
  std::vector<LatticeVector> roots;   // a#, parallel to coroots
  std::vector<int> basis;             // indices of the simple roots
  std::vector<int> positive;          // indices of the positive roots

  std::size_t num_roots() const { return coroots.size(); }
  bool is_positive(int i) const { return positive_mask_[i]; }

  int index_of_coroot(const LatticeVector& v) const {
    auto it = coroot_index_.find(v);
    return it == coroot_index_.end() ? -1 : it->second;
  }
  // index of -alpha
  int negative_of(int i) const { return negative_[i]; }

  friend RootDatum build_root_datum(std::vector<LatticeVector> coroots,
                                    std::vector<LatticeVector> roots, std::vector<int> basis);

private:
  std::vector<bool> positive_mask_;
  std::vector<int> negative_;
  std::map<LatticeVector, int> coroot_index_;
};

// the lattice reflection x -> x - <x, a#> h_a
inline IntMat reflection_matrix(const RootDatum& d, int root_index) {
  IntMat m = int_identity(d.rank);
  const auto& h = d.coroots[root_index];
  const auto& a = d.roots[root_index];
  for (int col = 0; col < d.rank; ++col)
    for (int row = 0; row < d.rank; ++row) m[row][col] -= a.c[col] * h.c[row];
  return m;
}

// Root permutation induced by a lattice matrix; -1 when the coroot set is
// not preserved. Dual consistency (<Mx, perm(y)> = <x, y>) is implied
// because the pairing table determines the dual action.
inline std::vector<int> induced_root_perm(const RootDatum& d, const IntMat& m) {
  std::vector<int> perm(d.num_roots());
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    int j = d.index_of_coroot(apply_matrix(m, d.coroots[i]));
    if (j < 0) return {};
    perm[i] = j;
  }
  // must be injective
  std::vector<bool> seen(d.num_roots(), false);
  for (int j : perm) {
    if (seen[j]) return {};
    seen[j] = true;
  }
  return perm;
}

inline int length_of_perm(const RootDatum& d, const std::vector<int>& perm) {
  int len = 0;
  for (int i : d.positive)
    if (!d.is_positive(perm[i])) ++len;
  return len;
}

inline WeylElement make_element(const RootDatum& d, const IntMat& m) {
  auto perm = induced_root_perm(d, m);
  if (perm.empty()) throw Error("NotPreservingRoots", "matrix does not permute the coroot set");
  return {m, perm, length_of_perm(d, perm)};
}

inline RootDatum build_root_datum(std::vector<LatticeVector> coroots,
                                  std::vector<LatticeVector> roots, std::vector<int> basis) {
  RootDatum d;
  if (coroots.size() != roots.size())
    throw Error("ParseError", "coroot and root lists differ in length");
  if (coroots.empty()) throw Error("ParseError", "empty root datum");
  d.rank = int(coroots[0].rank());
  d.coroots = std::move(coroots);
  d.roots = std::move(roots);
  d.basis = std::move(basis);

  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    check_rank(d.coroots[i].rank(), d.rank, "coroot");
    check_rank(d.roots[i].rank(), d.rank, "root");
    long long p = pair(d.coroots[i], d.roots[i]);
    if (p != 2)
      throw Error("PairingNotTwo",
                  "pairing of coroot " + std::to_string(i) + " with its root is " + std::to_string(p));
    if (!d.coroot_index_.emplace(d.coroots[i], int(i)).second)
      throw Error("NonReduced", "duplicate coroot at index " + std::to_string(i));
  }
  for (int b : d.basis)
    if (b < 0 || b >= int(d.num_roots())) throw Error("ParseError", "basis index out of range");

  // reduced: proportional coroots only come in +/- pairs
  d.negative_.assign(d.num_roots(), -1);
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    int j = d.index_of_coroot(-d.coroots[i]);
    if (j < 0) throw Error("NonReduced", "coroot set not closed under negation at " + std::to_string(i));
    d.negative_[int(i)] = j;
    for (std::size_t k = 0; k < d.num_roots(); ++k) {
      if (k == i || int(k) == j) continue;
      // proportional?
      const auto& a = d.coroots[i].c;
      const auto& b = d.coroots[k].c;
      bool prop = true;
      long long pn = 0, pd = 0; // b = (pn/pd) * a
      for (int t = 0; t < d.rank && prop; ++t) {
        if (a[t] == 0) {
          if (b[t] != 0) prop = false;
        } else if (pd == 0) {
          pn = b[t];
          pd = a[t];
        } else if (b[t] * pd != a[t] * pn) {
          prop = false;
        }
      }
      if (prop && pd != 0) throw Error("NonReduced", "proportional coroots " + std::to_string(i) + "," + std::to_string(k));
    }
  }

  // closure under every reflection, checked dually through the permutation
  for (std::size_t r = 0; r < d.num_roots(); ++r) {
    IntMat m = reflection_matrix(d, int(r));
    auto perm = induced_root_perm(d, m);
    if (perm.empty())
      throw Error("ReflectionNotClosed", "reflection at root " + std::to_string(r) + " does not permute coroots");
    for (std::size_t j = 0; j < d.num_roots(); ++j) {
      // dual action must send root_j to root_{perm[j]}
      LatticeVector img = d.roots[j] - pair(d.coroots[r], d.roots[j]) * d.roots[r];
      if (!(img == d.roots[perm[j]]))
        throw Error("ReflectionNotClosed",
                    "dual reflection at root " + std::to_string(r) + " breaks root " + std::to_string(j));
    }
  }

  // positive system spanned by the basis with nonnegative coordinates
  if (!d.basis.empty()) {
    RatMat bmat(d.rank, RatVec(d.basis.size()));
    for (std::size_t j = 0; j < d.basis.size(); ++j)
      for (int i = 0; i < d.rank; ++i) bmat[i][j] = d.coroots[d.basis[j]].c[i];
    d.positive_mask_.assign(d.num_roots(), false);
    for (std::size_t i = 0; i < d.num_roots(); ++i) {
      RatVec rhs(d.rank);
      for (int t = 0; t < d.rank; ++t) rhs[t] = d.coroots[i].c[t];
      auto sol = solve_linear(bmat, rhs);
      if (!sol) throw Error("InvalidBasis", "root " + std::to_string(i) + " outside basis span");
      bool nonneg = true, nonpos = true;
      for (auto& x : *sol) {
        if (x < 0) nonneg = false;
        if (x > 0) nonpos = false;
      }
      if (!nonneg && !nonpos)
        throw Error("InvalidBasis", "root " + std::to_string(i) + " has mixed basis coordinates");
      if (nonneg && !d.coroots[i].is_zero()) {
        d.positive.push_back(int(i));
        d.positive_mask_[i] = true;
      }
    }
    if (2 * d.positive.size() != d.num_roots())
      throw Error("InvalidBasis", "positive system is not half of the root set");
  } else {
    d.positive_mask_.assign(d.num_roots(), false);
  }
  return d;
}

// ---- Weyl group and its extension ----

struct WeylGroup {
  std::vector<WeylElement> elements; // elements[0] = identity
  std::vector<std::vector<int>> table; // table[i][j] = index of e_i * e_j
  std::vector<int> inverse;
  std::vector<int> simple; // element index of each simple reflection (basis order)

  int size() const { return int(elements.size()); }
  int mul(int i, int j) const { return table[i][j]; }
  int inv(int i) const { return inverse[i]; }
};

namespace detail {

inline std::string matrix_key(const IntMat& m) {
  std::string k;
  for (auto& row : m)
    for (auto x : row) k += std::to_string(x) + ",";
  return k;
}

// closure of a generating set of lattice automorphisms preserving the roots
inline std::vector<WeylElement> closure(const RootDatum& d, std::vector<IntMat> gens, long cap,
                                        const char* cap_error) {
  std::vector<WeylElement> elems;
  std::map<std::string, int> seen;
  auto push = [&](const IntMat& m) -> bool {
    auto key = matrix_key(m);
    if (seen.count(key)) return false;
    seen[key] = int(elems.size());
    elems.push_back(make_element(d, m));
    return true;
  };
  push(int_identity(d.rank));
  for (auto& g : gens) push(g);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto& g : gens) {
      if (long(elems.size()) > cap) throw Error(cap_error, "group closure exceeds cap");
      push(int_mul(elems[i].matrix, g));
      push(int_mul(g, elems[i].matrix));
    }
  }
  if (long(elems.size()) > cap) throw Error(cap_error, "group closure exceeds cap");
  return elems;
}

inline void sort_elements(std::vector<WeylElement>& elems) {
  std::sort(elems.begin(), elems.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.root_perm < b.root_perm || (a.root_perm == b.root_perm && a.matrix < b.matrix);
  });
}

inline WeylGroup finish_group(const RootDatum& d, std::vector<WeylElement> elems) {
  sort_elements(elems);
  WeylGroup g;
  g.elements = std::move(elems);
  std::map<std::string, int> index;
  for (int i = 0; i < g.size(); ++i) index[matrix_key(g.elements[i].matrix)] = i;
  g.table.assign(g.size(), std::vector<int>(g.size()));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      auto it = index.find(matrix_key(int_mul(g.elements[i].matrix, g.elements[j].matrix)));
      if (it == index.end()) throw Error("NotClosed", "product escapes the generated set");
      g.table[i][j] = it->second;
    }
  g.inverse.assign(g.size(), -1);
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (g.table[i][j] == 0) g.inverse[i] = j;
  for (int b : d.basis) {
    auto key = matrix_key(reflection_matrix(d, b));
    auto it = index.find(key);
    if (it == index.end()) throw Error("Internal", "simple reflection missing from group");
    g.simple.push_back(it->second);
  }
  return g;
}

} // namespace detail

inline WeylGroup generate_weyl(const RootDatum& d, long cap = 100000) {
  if (cap < 1) throw Error("ParseError", "cap must be positive");
  std::vector<IntMat> gens;
  for (int b : d.basis) gens.push_back(reflection_matrix(d, b));
  return detail::finish_group(d, detail::closure(d, gens, cap, "CapExceeded"));
}

// W(M,O) = R |x W(Sigma) with R the length-zero complement. Extra
// generators beyond the simple reflections supply the R part.
struct ExtendedGroupSpec {
  RootDatum datum;
  WeylGroup weyl;  // W(Sigma) alone
  WeylGroup full;  // the whole extended group
  std::vector<int> r_part;                  // full-group indices with length 0
  std::vector<std::pair<int, int>> factor;  // full index -> (r index in full, weyl index in full)
  std::vector<int> weyl_in_full;            // weyl group index -> full index

  int full_index_of_weyl(int w) const { return weyl_in_full[w]; }
};

inline ExtendedGroupSpec decompose_extended(const RootDatum& d, const std::vector<IntMat>& extra_gens,
                                            long cap = 100000) {
  ExtendedGroupSpec spec;
  spec.datum = d;
  spec.weyl = generate_weyl(d, cap);
  std::vector<IntMat> gens;
  for (int b : d.basis) gens.push_back(reflection_matrix(d, b));
  for (auto& g : extra_gens) {
    if (induced_root_perm(d, g).empty())
      throw Error("NotPreservingRoots", "extra generator does not permute the coroot set");
    gens.push_back(g);
  }
  spec.full = detail::finish_group(d, detail::closure(d, gens, cap, "NotClosed"));

  std::map<std::string, int> full_index;
  for (int i = 0; i < spec.full.size(); ++i)
    full_index[detail::matrix_key(spec.full.elements[i].matrix)] = i;
  spec.weyl_in_full.resize(spec.weyl.size());
  for (int w = 0; w < spec.weyl.size(); ++w) {
    auto it = full_index.find(detail::matrix_key(spec.weyl.elements[w].matrix));
    if (it == full_index.end()) throw Error("Internal", "Weyl element missing from extended group");
    spec.weyl_in_full[w] = it->second;
  }

  // factor every element as r * v by stripping descents on the right
  std::set<int> weyl_set(spec.weyl_in_full.begin(), spec.weyl_in_full.end());
  spec.factor.assign(spec.full.size(), {-1, -1});
  for (int i = 0; i < spec.full.size(); ++i) {
    int x = i, v = 0; // v in full-group indices, stays inside W(Sigma)
    while (spec.full.elements[x].length > 0) {
      bool moved = false;
      for (std::size_t s = 0; s < d.basis.size(); ++s) {
        int alpha = d.basis[s];
        if (!d.is_positive(spec.full.elements[x].root_perm[alpha])) {
          int sf = spec.weyl_in_full[spec.weyl.simple[s]];
          x = spec.full.mul(x, sf);
          v = spec.full.mul(sf, v);
          moved = true;
          break;
        }
      }
      if (!moved) throw Error("NotClosed", "element has positive length but no descent");
    }
    if (!weyl_set.count(v)) throw Error("NotClosed", "Weyl factor escapes W(Sigma)");
    // x has length 0; check it permutes the basis
    for (int b : d.basis) {
      int img = spec.full.elements[x].root_perm[b];
      if (std::find(d.basis.begin(), d.basis.end(), img) == d.basis.end())
        throw Error("Internal", "length-zero element does not permute the basis");
    }
    spec.factor[i] = {x, v};
    if (spec.full.mul(x, v) != i) throw Error("Internal", "factorization does not multiply back");
  }
  for (int i = 0; i < spec.full.size(); ++i)
    if (spec.full.elements[i].length == 0) spec.r_part.push_back(i);
  if (spec.r_part.size() * weyl_set.size() != std::size_t(spec.full.size()))
    throw Error("NotClosed", "R x W(Sigma) does not cover the extended group");
  return spec;
}

// ---- parameters ----

struct ParamFunction {
  // per root index; validated to be constant on full-group orbits
  std::vector<Rat> q, qstar, cprime;
};

inline void validate_params(const RootDatum& d, const ExtendedGroupSpec& ext, const ParamFunction& p) {
  if (p.q.size() != d.num_roots() || p.qstar.size() != d.num_roots() || p.cprime.size() != d.num_roots())
    throw Error("ParseError", "parameter lists must cover every root");
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    if (!(p.q[i] > 1)) throw Error("ParameterOrder", "q must exceed 1 at root " + std::to_string(i));
    if (!(p.qstar[i] >= 1)) throw Error("ParameterOrder", "q* must be at least 1 at root " + std::to_string(i));
    if (!(p.q[i] >= p.qstar[i]))
      throw Error("ParameterOrder", "q < q* at root " + std::to_string(i));
    if (!(p.cprime[i] > 0)) throw Error("ParameterOrder", "c' must be positive at root " + std::to_string(i));
  }
  for (auto& e : ext.full.elements)
    for (std::size_t i = 0; i < d.num_roots(); ++i) {
      int j = e.root_perm[i];
      if (p.q[i] != p.q[j] || p.qstar[i] != p.qstar[j] || p.cprime[i] != p.cprime[j])
        throw Error("OrbitConstancy", "parameters not constant on the orbit of root " + std::to_string(i));
    }
}

// Whenever q* > 1 the -1 zero of the mu-function exists and the root must
// pair evenly with the whole lattice (short-root-in-B_n shape); this is
// also exactly the condition that keeps the commutation corrections
// polynomial.
inline void validate_parity(const RootDatum& d, const ParamFunction& p) {
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    if (!(p.qstar[i] > 1)) continue;
    for (auto entry : d.roots[i].c)
      if (entry % 2 != 0)
        throw Error("ParityViolation", "root " + std::to_string(i) +
                                           " pairs oddly with the lattice while q* > 1");
  }
}

// ---- the subsystem attached to a unitary point ----

struct PointSubsystem {
  std::vector<int> roots;      // indices into the ambient datum
  std::vector<int> sub_basis;  // indices into the ambient datum
  std::vector<int> stabilizer; // full-group indices fixing the point
  std::vector<int> weyl_part;  // stabilizer elements in W(Sigma_{point})
  std::vector<int> r_part;     // stabilizer elements of sub-length 0
  std::vector<std::pair<int, int>> factor; // per stabilizer element: (r, w) full indices
};

// torus points transform by the inverse transpose of the lattice action
inline TorusPoint apply_to_point(const IntMat& lattice_matrix, const TorusPoint& chi) {
  IntMat a = int_transpose(int_inverse(lattice_matrix));
  std::size_t n = chi.rank();
  std::vector<Rat> ang(n, Rat(0)), mag(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ang[i] += Rat(a[i][j]) * chi.angle[j];
      mag[i] += Rat(a[i][j]) * chi.logmag[j];
    }
  return TorusPoint(std::move(ang), std::move(mag));
}

inline PointSubsystem subsystem_at_point(const RootDatum& d, const ExtendedGroupSpec& ext,
                                         const ParamFunction& p, const TorusPoint& u) {
  if (!u.is_unitary()) throw Error("NonUnitaryPoint", "subsystem requires a unitary point");
  check_rank(u.rank(), std::size_t(d.rank), "subsystem_at_point");
  PointSubsystem s;
  std::set<int> members;
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    auto v = monomial_eval(d.coroots[i], u);
    if (v.is_plus_one() || (v.is_minus_one() && p.qstar[i] > 1)) {
      s.roots.push_back(int(i));
      members.insert(int(i));
    }
  }
  // induced positive system; basis = indecomposable positives
  std::vector<int> pos;
  for (int i : s.roots)
    if (d.is_positive(i)) pos.push_back(i);
  for (int i : pos) {
    bool decomposable = false;
    for (int a : pos) {
      if (decomposable) break;
      for (int b : pos)
        if (d.coroots[a] + d.coroots[b] == d.coroots[i]) {
          decomposable = true;
          break;
        }
    }
    if (!decomposable) s.sub_basis.push_back(i);
  }
  // stabilizer of u in the extended group (linear action)
  for (int g = 0; g < ext.full.size(); ++g)
    if (apply_to_point(ext.full.elements[g].matrix, u) == u) s.stabilizer.push_back(g);
  std::set<int> stab_set(s.stabilizer.begin(), s.stabilizer.end());
  // a stabilizer element permutes the subsystem
  for (int g : s.stabilizer)
    for (int i : s.roots)
      if (!members.count(ext.full.elements[g].root_perm[i]))
        throw Error("Internal", "stabilizer does not preserve the point subsystem");
  auto sub_length = [&](int g) {
    int len = 0;
    for (int i : pos)
      if (!d.is_positive(ext.full.elements[g].root_perm[i])) ++len;
    return len;
  };
  // full-group indices of the sub-simple reflections
  std::vector<int> sub_simple;
  for (int b : s.sub_basis) {
    IntMat m = reflection_matrix(d, b);
    int idx = -1;
    for (int g = 0; g < ext.full.size(); ++g)
      if (ext.full.elements[g].matrix == m) {
        idx = g;
        break;
      }
    if (idx < 0) throw Error("Internal", "sub-reflection missing from extended group");
    sub_simple.push_back(idx);
  }
  // factor each stabilizer element as r * v with v in W(Sigma_sub)
  for (int g : s.stabilizer) {
    int x = g, v = 0;
    while (sub_length(x) > 0) {
      bool moved = false;
      for (std::size_t t = 0; t < s.sub_basis.size(); ++t) {
        int img = ext.full.elements[x].root_perm[s.sub_basis[t]];
        if (!d.is_positive(img)) {
          x = ext.full.mul(x, sub_simple[t]);
          v = ext.full.mul(sub_simple[t], v);
          moved = true;
          break;
        }
      }
      if (!moved) throw Error("Internal", "positive sub-length without a sub-descent");
    }
    if (!stab_set.count(x) || !stab_set.count(v))
      throw Error("Internal", "stabilizer factorization escapes the stabilizer");
    s.factor.push_back({x, v});
    if (std::find(s.r_part.begin(), s.r_part.end(), x) == s.r_part.end()) s.r_part.push_back(x);
  }
  // W(Sigma_sub) = closure of the sub-simple reflections
  {
    std::set<int> wset{0};
    std::vector<int> queue{0};
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (int t : sub_simple) {
        int y = ext.full.mul(x, t);
        if (wset.insert(y).second) queue.push_back(y);
      }
    }
    s.weyl_part.assign(wset.begin(), wset.end());
  }
  std::sort(s.r_part.begin(), s.r_part.end());
  return s;
}

// ---- adapted bases ----

namespace detail {

// lexicographic tuple functional used to realize the layered ordering
struct LayerFunctional {
  RatVec t_small, t_mid, t_big;
  std::vector<Rat> eval(const LatticeVector& v) const {
    auto dot = [&](const RatVec& f) {
      Rat s(0);
      for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * Rat(v.c[i]);
      return s;
    };
    return {dot(t_big), dot(t_mid), dot(t_small)};
  }
  bool positive(const LatticeVector& v) const {
    for (auto& x : eval(v)) {
      if (x > 0) return true;
      if (x < 0) return false;
    }
    return false;
  }
};

// smallest grid vector (by max-norm then lex) in the span of `space_basis`
// that is nonzero on every target vector
inline RatVec generic_functional(const RatMat& space_basis, const std::vector<LatticeVector>& targets,
                                 std::size_t dim) {
  std::size_t k = space_basis.size();
  if (targets.empty() || k == 0) return RatVec(dim, Rat(0));
  for (long bound = 1; bound <= 64; ++bound) {
    // enumerate coefficient vectors with entries in [-bound, bound]
    std::vector<long> coef(k, -bound);
    while (true) {
      bool in_shell = false;
      for (auto c : coef)
        if (c == bound || c == -bound) in_shell = true;
      if (in_shell) {
        RatVec f(dim, Rat(0));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < dim; ++j) f[j] += Rat(coef[i]) * space_basis[i][j];
        bool ok = true;
        for (auto& v : targets) {
          Rat s(0);
          for (std::size_t j = 0; j < dim; ++j) s += f[j] * Rat(v.c[j]);
          if (s == 0) {
            ok = false;
            break;
          }
        }
        if (ok) return f;
      }
      std::size_t i = 0;
      while (i < k && coef[i] == bound) coef[i++] = -bound;
      if (i == k) break;
      ++coef[i];
    }
  }
  throw Error("Internal", "no generic functional found within the grid");
}

inline RatMat span_complement_functionals(const std::vector<LatticeVector>& span_of,
                                          std::size_t dim) {
  // basis of functionals vanishing on span_of = nullspace of the matrix
  // whose rows are the spanning vectors
  RatMat rows;
  for (auto& v : span_of) {
    RatVec r(dim);
    for (std::size_t j = 0; j < dim; ++j) r[j] = v.c[j];
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return rat_identity(dim);
  return nullspace(rows);
}

} // namespace detail

// Is `sub` a parabolic subsystem of `big` (its intersection with the
// subspace it spans)?
inline bool is_parabolic(const std::vector<LatticeVector>& big, const std::vector<LatticeVector>& sub,
                         std::size_t dim) {
  RatMat rows;
  for (auto& v : sub) {
    RatVec r(dim);
    for (std::size_t j = 0; j < dim; ++j) r[j] = v.c[j];
    rows.push_back(std::move(r));
  }
  std::set<LatticeVector> sub_set(sub.begin(), sub.end());
  for (auto& v : big) {
    if (sub_set.count(v)) continue;
    RatMat m(dim, RatVec(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m[j][i] = rows[i][j];
    RatVec rhs(dim);
    for (std::size_t j = 0; j < dim; ++j) rhs[j] = v.c[j];
    if (solve_linear(m, rhs)) return false; // inside the span but not in sub
  }
  return true;
}

// Basis of `big` adapted to the chain small <= mid <= big of parabolic
// subsystems: the returned basis contains a basis of mid and of small.
inline std::vector<LatticeVector> adapted_basis(const std::vector<LatticeVector>& big,
                                                const std::vector<LatticeVector>& mid,
                                                const std::vector<LatticeVector>& small) {
  if (big.empty()) return {};
  std::size_t dim = big[0].rank();
  std::set<LatticeVector> big_set(big.begin(), big.end()), mid_set(mid.begin(), mid.end()),
      small_set(small.begin(), small.end());
  for (auto& v : small)
    if (!mid_set.count(v)) throw Error("NotParabolic", "small system not contained in mid");
  for (auto& v : mid)
    if (!big_set.count(v)) throw Error("NotParabolic", "mid system not contained in big");
  if (!is_parabolic(big, mid, dim) || !is_parabolic(mid, small, dim) ||
      !is_parabolic(big, small, dim))
    throw Error("NotParabolic", "layers are not parabolic subsystems");

  std::vector<LatticeVector> layer_small(small.begin(), small.end());
  std::vector<LatticeVector> layer_mid, layer_big;
  for (auto& v : mid)
    if (!small_set.count(v)) layer_mid.push_back(v);
  for (auto& v : big)
    if (!mid_set.count(v)) layer_big.push_back(v);

  detail::LayerFunctional t;
  t.t_small = detail::generic_functional(rat_identity(dim), layer_small, dim);
  t.t_mid = detail::generic_functional(detail::span_complement_functionals(layer_small, dim),
                                       layer_mid, dim);
  t.t_big = detail::generic_functional(detail::span_complement_functionals(
                                           std::vector<LatticeVector>(mid.begin(), mid.end()), dim),
                                       layer_big, dim);

  std::vector<LatticeVector> positives;
  for (auto& v : big)
    if (t.positive(v)) positives.push_back(v);
  std::set<LatticeVector> pos_set(positives.begin(), positives.end());
  std::vector<LatticeVector> result;
  for (auto& v : positives) {
    bool decomposable = false;
    for (auto& a : positives) {
      if (decomposable) break;
      for (auto& b : positives)
        if (a + b == v) {
          decomposable = true;
          break;
        }
    }
    if (!decomposable) result.push_back(v);
  }
  std::sort(result.begin(), result.end());
  return result;
}

} // namespace heckeforge
