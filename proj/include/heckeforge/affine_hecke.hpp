// The twisted affine Hecke algebra in Bernstein normal form. Elements are
// sums theta_p T_w N_r with p a Laurent polynomial, w in the finite Weyl
// group and r in the length-zero complement; multiplication rewrites
// products into this form through
//   T_s theta_b = theta_{s.b} T_s + theta_{BL(b)}     (commutation)
//   T_w T_s = T_{ws}  or  qq* T_{ws} + (qq*-1) T_w    (quadratic)
//   N_r theta = theta^r N_r,  N_r T_w = T_{rwr^{-1}} N_r,
//   N_r N_r' = unit(cocycle(r,r')) N_{rr'}
// where BL(b) is the exact polynomial f_alpha (b - s.b). The same engine
// runs with rational-function coefficients for the localized algebra,
// which is where the intertwiners tau live.

#pragma once

#include "heckeforge/cocycle.hpp"
#include "heckeforge/laurent.hpp"

#include <functional>
#include <map>
#include <utility>

namespace heckeforge {

template <class C, class V>
struct HeckeTerms {
  // (weyl index, r position) -> coefficient
  std::map<std::pair<int, int>, V> terms;

  void add(int w, int r, const V& v) {
    if (v.is_zero()) return;
    auto key = std::make_pair(w, r);
    auto [it, fresh] = terms.emplace(key, v);
    if (!fresh) {
      it->second = it->second + v;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
  friend HeckeTerms operator+(HeckeTerms a, const HeckeTerms& b) {
    for (auto& [k, v] : b.terms) a.add(k.first, k.second, v);
    return a;
  }
  friend HeckeTerms operator-(HeckeTerms a, const HeckeTerms& b) {
    for (auto& [k, v] : b.terms) a.add(k.first, k.second, -v);
    return a;
  }
  friend bool operator==(const HeckeTerms& a, const HeckeTerms& b) { return a.terms == b.terms; }
};

template <class C>
using HeckeElement = HeckeTerms<C, LaurentPoly<C>>;
template <class C>
using LocalizedElement = HeckeTerms<C, RationalFunction<C>>;

template <class C>
class AffineHecke {
public:
  RootDatum datum;
  ParamFunction params;
  ExtendedGroupSpec ext;
  TwoCocycle cocycle; // on the R part, indexed by position in ext.r_part

  AffineHecke(RootDatum d, ParamFunction p, ExtendedGroupSpec e, TwoCocycle c)
      : datum(std::move(d)), params(std::move(p)), ext(std::move(e)), cocycle(std::move(c)) {
    validate_params(datum, ext, params);
    validate_parity(datum, params);
    r_table_ = r_group_table();
    validate_cocycle(r_table_, cocycle);
    build_caches();
  }

  static AffineHecke untwisted(RootDatum d, ParamFunction p) {
    auto e = decompose_extended(d, {});
    auto c = TwoCocycle::trivial(1);
    return AffineHecke(std::move(d), std::move(p), std::move(e), c);
  }

  int weyl_size() const { return ext.weyl.size(); }
  int r_size() const { return int(ext.r_part.size()); }
  const GroupTable& r_table() const { return r_table_; }

  // ---- element constructors ----
  HeckeElement<C> zero() const { return {}; }
  HeckeElement<C> one() const { return from_poly(LaurentPoly<C>::one(datum.rank)); }
  HeckeElement<C> from_poly(const LaurentPoly<C>& p) const {
    HeckeElement<C> e;
    e.add(0, 0, p);
    return e;
  }
  HeckeElement<C> t_basis(int weyl_index) const {
    HeckeElement<C> e;
    e.add(weyl_index, 0, LaurentPoly<C>::one(datum.rank));
    return e;
  }
  HeckeElement<C> t_simple(std::size_t basis_pos) const {
    return t_basis(ext.weyl.simple[basis_pos]);
  }
  HeckeElement<C> n_basis(int r_pos) const {
    HeckeElement<C> e;
    e.add(0, r_pos, LaurentPoly<C>::one(datum.rank));
    return e;
  }

  // ---- multiplication ----
  HeckeElement<C> multiply(const HeckeElement<C>& a, const HeckeElement<C>& b) const {
    PolyOps ops{this};
    return multiply_impl<LaurentPoly<C>, PolyOps>(a, b, ops);
  }
  LocalizedElement<C> multiply(const LocalizedElement<C>& a, const LocalizedElement<C>& b) const {
    FracOps ops{this};
    return multiply_impl<RationalFunction<C>, FracOps>(a, b, ops);
  }

  LocalizedElement<C> localize(const HeckeElement<C>& a) const {
    LocalizedElement<C> out;
    for (auto& [k, v] : a.terms) out.add(k.first, k.second, RationalFunction<C>(v));
    return out;
  }

  // quadratic parameter q_alpha q_alpha* of a simple reflection
  Rat qq(std::size_t basis_pos) const {
    int root = datum.basis[basis_pos];
    return params.q[root] * params.qstar[root];
  }

  // T_w T_v expanded over the T basis with rational constants
  const std::vector<std::pair<int, Rat>>& t_product(int w, int v) const {
    return t_mul_[std::size_t(w) * ext.weyl.size() + std::size_t(v)];
  }

  int conj_weyl(int r_pos, int w) const { return rconj_[r_pos][w]; }
  const TorusTransformation& r_transform(int r_pos) const { return r_transforms_[r_pos]; }
  const TorusTransformation& s_transform(std::size_t basis_pos) const {
    return s_transforms_[basis_pos];
  }

private:
  GroupTable r_table_;
  std::vector<TorusTransformation> r_transforms_; // per r position
  std::vector<TorusTransformation> s_transforms_; // per basis position
  std::vector<std::vector<std::pair<int, Rat>>> t_mul_;
  std::vector<std::vector<int>> rconj_;
  std::vector<int> right_descent_;     // basis position, -1 for identity
  std::vector<int> left_descent_;
  std::vector<std::vector<int>> wmul_; // weyl table shortcut

  GroupTable r_group_table() const {
    GroupTable t;
    int n = int(ext.r_part.size());
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[ext.r_part[i]] = i;
    t.mul.assign(n, std::vector<int>(n));
    t.inv.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int prod = ext.full.mul(ext.r_part[i], ext.r_part[j]);
        auto it = pos.find(prod);
        if (it == pos.end()) throw Error("NotClosed", "R part is not a subgroup");
        t.mul[i][j] = it->second;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (t.mul[i][j] == 0) t.inv[i] = j;
    return t;
  }

  void build_caches() {
    const auto& w = ext.weyl;
    int n = w.size();
    wmul_.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) wmul_[i][j] = w.mul(i, j);

    right_descent_.assign(n, -1);
    left_descent_.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (std::size_t s = 0; s < w.simple.size(); ++s) {
        if (right_descent_[i] < 0 && w.elements[wmul_[i][w.simple[s]]].length < w.elements[i].length)
          right_descent_[i] = int(s);
        if (left_descent_[i] < 0 && w.elements[wmul_[w.simple[s]][i]].length < w.elements[i].length)
          left_descent_[i] = int(s);
      }

    // T_x T_s single steps, then the full product table by recursion on
    // the left descent of the second factor
    t_mul_.assign(std::size_t(n) * n, {});
    for (int x = 0; x < n; ++x) t_mul_[std::size_t(x) * n + 0] = {{x, Rat(1)}};
    std::function<const std::vector<std::pair<int, Rat>>&(int, int)> compute =
        [&](int x, int v) -> const std::vector<std::pair<int, Rat>>& {
      auto& slot = t_mul_[std::size_t(x) * n + v];
      if (!slot.empty() || v == 0) {
        if (slot.empty()) slot = {{x, Rat(1)}};
        return slot;
      }
      int s = left_descent_[v];
      int sfull = ext.weyl.simple[s];
      int vprime = wmul_[sfull][v]; // v = s * v'
      // T_x T_s first
      std::map<int, Rat> acc;
      int xs = wmul_[x][sfull];
      if (w.elements[xs].length > w.elements[x].length) {
        acc[xs] += 1;
      } else {
        Rat qqs = qq(std::size_t(s));
        acc[xs] += qqs;
        acc[x] += qqs - 1;
      }
      std::map<int, Rat> out;
      for (auto& [y, c] : acc)
        for (auto& [z, c2] : compute(y, vprime)) {
          out[z] += c * c2;
        }
      slot.clear();
      for (auto& [z, c] : out)
        if (c != 0) slot.push_back({z, c});
      return slot;
    };
    for (int x = 0; x < n; ++x)
      for (int v = 0; v < n; ++v) compute(x, v);

    // conjugation of the Weyl part by R elements
    std::map<std::string, int> weyl_index;
    for (int i = 0; i < n; ++i)
      weyl_index[detail::matrix_key(w.elements[i].matrix)] = i;
    rconj_.assign(ext.r_part.size(), std::vector<int>(n));
    for (std::size_t rp = 0; rp < ext.r_part.size(); ++rp) {
      int rf = ext.r_part[rp];
      for (int i = 0; i < n; ++i) {
        int wf = ext.weyl_in_full[i];
        int conj = ext.full.mul(ext.full.mul(rf, wf), ext.full.inv(rf));
        auto it = weyl_index.find(detail::matrix_key(ext.full.elements[conj].matrix));
        if (it == weyl_index.end())
          throw Error("NotClosed", "conjugation by R leaves the Weyl group");
        rconj_[rp][i] = it->second;
      }
    }

    r_transforms_.clear();
    for (int rf : ext.r_part)
      r_transforms_.push_back(TorusTransformation::linear_only(ext.full.elements[rf].matrix));
    s_transforms_.clear();
    for (int b : datum.basis)
      s_transforms_.push_back(TorusTransformation::linear_only(reflection_matrix(datum, b)));
  }

  // coefficient-ring adapters
  struct PolyOps {
    const AffineHecke* alg;
    LaurentPoly<C> act(const TorusTransformation& t, const LaurentPoly<C>& v) const {
      return v.acted(t);
    }
    LaurentPoly<C> bl(std::size_t basis_pos, const LaurentPoly<C>& v) const {
      return twisted_divide(alg->datum, alg->params, alg->datum.basis[basis_pos], v);
    }
    LaurentPoly<C> scale(const LaurentPoly<C>& v, const C& c) const { return v.scaled(c); }
    LaurentPoly<C> mul(const LaurentPoly<C>& a, const LaurentPoly<C>& b) const { return a * b; }
  };
  struct FracOps {
    const AffineHecke* alg;
    RationalFunction<C> act(const TorusTransformation& t, const RationalFunction<C>& v) const {
      return v.acted(t);
    }
    RationalFunction<C> bl(std::size_t basis_pos, const RationalFunction<C>& v) const {
      int root = alg->datum.basis[basis_pos];
      auto f = f_alpha<C>(alg->datum, alg->params, root);
      return f * (v - v.acted(alg->s_transform(basis_pos)));
    }
    RationalFunction<C> scale(const RationalFunction<C>& v, const C& c) const {
      return v * RationalFunction<C>::constant(v.rank(), c);
    }
    RationalFunction<C> mul(const RationalFunction<C>& a, const RationalFunction<C>& b) const {
      return a * b;
    }
  };

  // normal form of T_w * theta_b as a map weyl index -> coefficient
  template <class V, class Ops>
  std::map<int, V> theta_push(int w, const V& b, const Ops& ops) const {
    std::map<int, V> out;
    if (b.is_zero()) return out;
    if (w == 0) {
      out.emplace(0, b);
      return out;
    }
    int s = right_descent_[w];
    int wprime = wmul_[w][ext.weyl.simple[s]]; // w = w' s
    // T_w b = (T_w' (s.b)) T_s + T_w' BL_s(b)
    auto a = theta_push(wprime, ops.act(s_transform(std::size_t(s)), b), ops);
    for (auto& [y, p] : a) {
      int ys = wmul_[y][ext.weyl.simple[s]];
      if (ext.weyl.elements[ys].length > ext.weyl.elements[y].length) {
        add_to(out, ys, p);
      } else {
        Rat qqs = qq(std::size_t(s));
        add_to(out, ys, ops.scale(p, scalar_ops<C>::from_rational(qqs)));
        add_to(out, y, ops.scale(p, scalar_ops<C>::from_rational(qqs - 1)));
      }
    }
    auto blb = ops.bl(std::size_t(s), b);
    if (!blb.is_zero())
      for (auto& [y, p] : theta_push(wprime, blb, ops)) add_to(out, y, p);
    return out;
  }

  template <class V>
  static void add_to(std::map<int, V>& m, int k, const V& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = m.emplace(k, v);
    if (!fresh) {
      it->second = it->second + v;
      if (it->second.is_zero()) m.erase(it);
    }
  }

  template <class V, class Ops>
  HeckeTerms<C, V> multiply_impl(const HeckeTerms<C, V>& a, const HeckeTerms<C, V>& b,
                                 const Ops& ops) const {
    HeckeTerms<C, V> out;
    for (auto& [k1, p1] : a.terms)
      for (auto& [k2, p2] : b.terms) {
        auto [w1, r1] = k1;
        auto [w2, r2] = k2;
        // N_{r1} theta_{p2} = theta_{r1 . p2} N_{r1}
        V moved = ops.act(r_transform(r1), p2);
        // N_{r1} T_{w2} = T_{r1 w2 r1^{-1}} N_{r1};  N_{r1} N_{r2}
        int w2c = conj_weyl(r1, w2);
        int r3 = r_table_.mul[r1][r2];
        auto unit = scalar_ops<C>::unit(cocycle(r1, r2));
        if (!unit)
          throw Error("UnrepresentableScalar", "cocycle value outside the coefficient field");
        // theta_{p1} [T_{w1} theta_moved] T_{w2c}
        for (auto& [y, q] : theta_push(w1, moved, ops)) {
          V coeff = ops.scale(ops.mul(p1, q), *unit);
          for (auto& [z, c] : t_product(y, w2c))
            out.add(z, r3, ops.scale(coeff, scalar_ops<C>::from_rational(c)));
        }
      }
    return out;
  }
};

// ---- derived operations ----

struct BraidReport {
  struct Entry {
    std::size_t i, j;
    int order;
    bool ok;
  };
  std::vector<Entry> pairs;
  bool all_ok() const {
    for (auto& e : pairs)
      if (!e.ok) return false;
    return true;
  }
};

// order of s_i s_j and the two alternating products of length m
template <class C>
BraidReport braid_check(const AffineHecke<C>& alg) {
  BraidReport rep;
  const auto& w = alg.ext.weyl;
  for (std::size_t i = 0; i < w.simple.size(); ++i)
    for (std::size_t j = i + 1; j < w.simple.size(); ++j) {
      int prod = w.mul(w.simple[i], w.simple[j]);
      int m = 1, x = prod;
      while (x != 0) {
        x = w.mul(x, prod);
        ++m;
      }
      auto word = [&](std::size_t a, std::size_t b) {
        auto e = alg.t_simple(a);
        for (int t = 1; t < m; ++t) e = alg.multiply(e, alg.t_simple(t % 2 ? b : a));
        return e;
      };
      bool ok = word(i, j) == word(j, i);
      rep.pairs.push_back({i, j, m, ok});
    }
  return rep;
}

template <class C>
bool quadratic_check(const AffineHecke<C>& alg, std::size_t basis_pos) {
  auto t = alg.t_simple(basis_pos);
  auto lhs = alg.multiply(t + alg.one(), t - alg.from_poly(LaurentPoly<C>::constant(
                                                 alg.datum.rank, scalar_ops<C>::from_rational(
                                                                     alg.qq(basis_pos)))));
  return lhs.is_zero();
}

// tau_s = (T_s + 1)(1 + f_alpha)^{-1} - 1 in the localized algebra;
// clearing the denominator P = num(1 + f) gives the polynomial element
// (T_s + 1) theta_Q - theta_P with Q = den(1 + f).
template <class C>
struct Intertwiner {
  LocalizedElement<C> tau;
  HeckeElement<C> cleared; // tau * theta_P
  LaurentPoly<C> den;      // P
};

template <class C>
Intertwiner<C> intertwiner_tau(const AffineHecke<C>& alg, std::size_t basis_pos) {
  int root = alg.datum.basis[basis_pos];
  auto one_plus_f = RationalFunction<C>::one(alg.datum.rank) + f_alpha<C>(alg.datum, alg.params, root);
  LocalizedElement<C> ts_plus_one = alg.localize(alg.t_simple(basis_pos) + alg.one());
  LocalizedElement<C> inv;
  inv.add(0, 0, one_plus_f.inverse());
  Intertwiner<C> out;
  out.tau = alg.multiply(ts_plus_one, inv) - alg.localize(alg.one());
  out.den = one_plus_f.num();
  auto theta_q = alg.from_poly(one_plus_f.den());
  auto theta_p = alg.from_poly(one_plus_f.num());
  out.cleared = alg.multiply(alg.t_simple(basis_pos) + alg.one(), theta_q) - theta_p;
  return out;
}

template <class C>
bool center_check(const AffineHecke<C>& alg, const LaurentPoly<C>& z) {
  auto tz = alg.from_poly(z);
  for (std::size_t s = 0; s < alg.ext.weyl.simple.size(); ++s) {
    auto g = alg.t_simple(s);
    if (!(alg.multiply(tz, g) == alg.multiply(g, tz))) return false;
  }
  for (int r = 1; r < alg.r_size(); ++r) {
    auto g = alg.n_basis(r);
    if (!(alg.multiply(tz, g) == alg.multiply(g, tz))) return false;
  }
  return true;
}

// one-dimensional characters: T_s -> -1 or qq*, constant on conjugation
// classes of simple reflections; each choice pins X_alpha(chi) to the two
// roots of (qX - 1)(q*X + 1) or (X - q)(X + q*).
struct OneDimFamily {
  std::vector<Rat> t_value;                 // per basis position: -1 or qq*
  std::vector<std::vector<Rat>> x_values;   // allowed X_alpha(chi) per basis position
  std::vector<bool> requires_fixed;         // degenerate q = q* = 1 case
  std::optional<std::vector<Rat>> r_character; // angles per r position, when solvable
};

template <class C>
std::vector<OneDimFamily> one_dim_modules(const AffineHecke<C>& alg) {
  const auto& w = alg.ext.weyl;
  std::size_t k = w.simple.size();
  // linked simple positions: braid order odd forces equal values
  std::vector<int> comp(k);
  for (std::size_t i = 0; i < k; ++i) comp[i] = int(i);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      int prod = w.mul(w.simple[i], w.simple[j]);
      int m = 1, x = prod;
      while (x != 0) {
        x = w.mul(x, prod);
        ++m;
      }
      if (m % 2 == 1) comp[find(int(i))] = find(int(j));
    }
  // R-conjugation also links classes
  for (int r = 0; r < alg.r_size(); ++r)
    for (std::size_t i = 0; i < k; ++i) {
      int conj = alg.conj_weyl(r, w.simple[i]);
      for (std::size_t j = 0; j < k; ++j)
        if (w.simple[j] == conj) comp[find(int(i))] = find(int(j));
    }
  std::vector<int> reps;
  for (std::size_t i = 0; i < k; ++i)
    if (find(int(i)) == int(i)) reps.push_back(int(i));

  // character of the twisted R part, when one exists
  std::optional<std::vector<Rat>> r_char;
  {
    auto beta = cohomologous(alg.r_table(), alg.cocycle, TwoCocycle::trivial(alg.r_size()));
    // d beta = cocycle, so N_r -> e^{2 pi i beta(r)} respects the twisted product
    if (beta) r_char = *beta;
  }

  std::vector<OneDimFamily> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << reps.size()); ++mask) {
    OneDimFamily fam;
    fam.t_value.resize(k);
    fam.x_values.resize(k);
    fam.requires_fixed.assign(k, false);
    for (std::size_t i = 0; i < k; ++i) {
      int rep = find(int(i));
      std::size_t pos = std::find(reps.begin(), reps.end(), rep) - reps.begin();
      bool steinberg = (mask >> pos) & 1; // T -> -1
      Rat qqv = alg.qq(i);
      fam.t_value[i] = steinberg ? Rat(-1) : qqv;
      int root = alg.datum.basis[i];
      const Rat& q = alg.params.q[root];
      const Rat& qs = alg.params.qstar[root];
      if (qqv == 1) {
        fam.requires_fixed[i] = true;
      } else if (steinberg) {
        fam.x_values[i] = {Rat(1) / q, Rat(-1) / qs};
      } else {
        fam.x_values[i] = {q, -qs};
      }
    }
    fam.r_character = r_char;
    out.push_back(std::move(fam));
  }
  return out;
}

} // namespace heckeforge
