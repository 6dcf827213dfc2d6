// Twisted group algebras through the central-extension device, Clifford
// induction for finite crossed products, the twisted extended quotient,
// and the brute-force irreducible counter that backs it.

#pragma once

#include "heckeforge/cocycle.hpp"
#include "heckeforge/ext_weyl.hpp"
#include "heckeforge/numeric.hpp"

#include <algorithm>

namespace heckeforge {

// Gamma = mu_N x G with (a,g)(b,h) = (a + b + N c(g,h), gh); associativity
// of the table is one more proof of the cocycle identity
struct CentralExtension {
  GroupTable gamma;
  long level = 1;
  int base_size = 0;

  int index(long z, int g) const { return int(z) * base_size + g; }
};

inline CentralExtension central_extension(const GroupTable& g, const TwoCocycle& c) {
  validate_cocycle(g, c);
  CentralExtension ext;
  ext.level = cocycle_level(c);
  ext.base_size = g.size();
  long N = ext.level;
  int total = int(N) * g.size();
  ext.gamma.mul.assign(total, std::vector<int>(total));
  ext.gamma.inv.assign(total, 0);
  for (long a = 0; a < N; ++a)
    for (int x = 0; x < g.size(); ++x)
      for (long b = 0; b < N; ++b)
        for (int y = 0; y < g.size(); ++y) {
          Rat zshift = mod1(c(x, y)) * Rat(N);
          long z = (a + b + rat_to_ll(zshift, "cocycle shift")) % N;
          ext.gamma.mul[std::size_t(ext.index(a, x))][std::size_t(ext.index(b, y))] =
              ext.index(z, g.mul[x][y]);
        }
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      if (ext.gamma.mul[std::size_t(i)][std::size_t(j)] == 0) ext.gamma.inv[std::size_t(i)] = j;
  ext.gamma.validate();
  return ext;
}

// the p-block of C[Gamma] on which the centre mu_N acts by its defining
// character: concretely the twisted regular module with unit basis {N_g}
inline UnitBasisAlgebra twisted_unit_algebra(const GroupTable& g, const TwoCocycle& c) {
  UnitBasisAlgebra a;
  a.n = g.size();
  a.prod.assign(a.n, std::vector<int>(a.n));
  a.scalar.assign(a.n, std::vector<std::complex<double>>(a.n));
  a.inv.assign(a.n, 0);
  a.inv_scalar.assign(a.n, 1.0);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      a.prod[std::size_t(x)][std::size_t(y)] = g.mul[x][y];
      a.scalar[std::size_t(x)][std::size_t(y)] = unit_to_complex(c(x, y));
    }
  for (int x = 0; x < a.n; ++x) {
    a.inv[std::size_t(x)] = g.inv[x];
    a.inv_scalar[std::size_t(x)] = unit_to_complex(c(x, g.inv[x]));
  }
  return a;
}

struct TwistedIrreps {
  std::vector<std::size_t> dims;           // one entry per irreducible
  std::vector<std::vector<CMat>> models;   // per irreducible: matrix per group element
};

inline TwistedIrreps twisted_irreps(const GroupTable& g, const TwoCocycle& c, std::uint64_t seed) {
  if (g.size() > 64) throw Error("ParseError", "group too large for the twisted-irrep oracle");
  if (cocycle_level(c) > 12) throw Error("ParseError", "cocycle order above the supported bound");
  // the central extension realizes the twisted algebra as p C[Gamma]
  auto ext = central_extension(g, c);
  (void)ext;
  auto algebra = twisted_unit_algebra(g, c);
  auto split = split_regular_module(algebra, seed);
  // regular-module bookkeeping: sum of squares is the group order
  std::size_t total = 0;
  for (auto d : split.dims) total += d * d;
  if (total != std::size_t(g.size()))
    throw Error("ToleranceAmbiguity", "block dimensions do not exhaust the algebra");

  TwistedIrreps out;
  out.dims = split.dims;
  // matrix models: split one isotypic block (dim d^2) into d irreducible
  // columns via the commutant and restrict the left action
  for (std::size_t b = 0; b < split.dims.size(); ++b) {
    std::size_t d = split.dims[b];
    // left regular matrices restricted to the isotypic subspace
    std::vector<CMat> lmats;
    for (int h = 0; h < g.size(); ++h) {
      CMat l = CMat::Zero(g.size(), g.size());
      for (int x = 0; x < g.size(); ++x)
        l(g.mul[h][x], x) = unit_to_complex(c(h, x));
      lmats.push_back(numeric::restrict_to(l, split.isotypic[b].basis));
    }
    if (d * d == 1) {
      out.models.push_back(lmats);
      continue;
    }
    auto sub = numeric::split_by_commutant(lmats, Eigen::Index(d * d), seed + 1);
    // any piece of dimension d is an irreducible copy
    bool found = false;
    for (auto& piece : sub)
      if (std::size_t(piece.basis.cols()) == d) {
        std::vector<CMat> model;
        for (auto& l : lmats) model.push_back(numeric::restrict_to(l, piece.basis));
        out.models.push_back(std::move(model));
        found = true;
        break;
      }
    if (!found) throw Error("ToleranceAmbiguity", "no irreducible copy inside an isotypic block");
  }
  return out;
}

// ---- finite crossed products C[T] x| C[group, cocycle] ----

// monomial indices live in (Z/n)^rank; an affine transformation sends the
// monomial X^m to phase * X^{l m} with phase = e^{-2 pi i <l m, shift>}
struct MonomialAction {
  std::vector<long> index;
  Rat phase_angle;
};

inline MonomialAction act_on_monomial(const TorusTransformation& t, const std::vector<long>& m,
                                      long n) {
  std::size_t rank = m.size();
  MonomialAction out;
  out.index.assign(rank, 0);
  for (std::size_t i = 0; i < rank; ++i) {
    long v = 0;
    for (std::size_t j = 0; j < rank; ++j) v += t.linear[i][j] * m[j];
    out.index[i] = ((v % n) + n) % n;
  }
  Rat angle(0);
  for (std::size_t i = 0; i < rank; ++i) {
    long vi = 0;
    for (std::size_t j = 0; j < rank; ++j) vi += t.linear[i][j] * m[j];
    angle += Rat(vi) * t.shift.angle[i];
  }
  out.phase_angle = mod1(-angle);
  return out;
}

// torsion points with angle denominators dividing n
inline std::vector<TorusPoint> torsion_points(std::size_t rank, long n) {
  std::vector<TorusPoint> pts;
  std::vector<long> idx(rank, 0);
  while (true) {
    std::vector<Rat> ang(rank);
    for (std::size_t i = 0; i < rank; ++i) ang[i] = Rat(idx[i], n);
    pts.push_back(TorusPoint::unitary(ang));
    std::size_t i = 0;
    while (i < rank && idx[i] == n - 1) idx[i++] = 0;
    if (i == rank) break;
    ++idx[i];
  }
  return pts;
}

// the finite crossed product as a unit-basis algebra; basis theta_m N_w
inline UnitBasisAlgebra crossed_product_algebra(const ExtWeylGroup& g, long n,
                                                const TwoCocycle& c) {
  std::size_t rank = g.elements[0].shift.rank();
  long tsize = 1;
  for (std::size_t i = 0; i < rank; ++i) tsize *= n;
  long total = tsize * g.size();
  if (total > 4096) throw Error("ParseError", "crossed product dimension above the bound");
  for (auto& e : g.elements)
    for (auto& a : e.shift.angle)
      if (mod1(a * Rat(n)) != 0)
        throw Error("ParseError", "group shifts are not torsion of the requested level");

  auto mono_index = [&](const std::vector<long>& m) {
    long idx = 0;
    for (std::size_t i = rank; i-- > 0;) idx = idx * n + m[i];
    return idx;
  };
  auto basis_index = [&](long m, int w) { return int(m * g.size() + w); };

  UnitBasisAlgebra a;
  a.n = int(total);
  a.prod.assign(a.n, std::vector<int>(a.n));
  a.scalar.assign(a.n, std::vector<std::complex<double>>(a.n));
  a.inv.assign(a.n, 0);
  a.inv_scalar.assign(a.n, 1.0);

  std::vector<std::vector<long>> monos(tsize, std::vector<long>(rank, 0));
  {
    std::vector<long> idx(rank, 0);
    for (long t = 0; t < tsize; ++t) {
      monos[std::size_t(t)] = idx;
      std::size_t i = 0;
      while (i < rank && idx[i] == n - 1) idx[i++] = 0;
      if (i < rank) ++idx[i];
    }
  }
  for (long m1 = 0; m1 < tsize; ++m1)
    for (int w1 = 0; w1 < g.size(); ++w1)
      for (long m2 = 0; m2 < tsize; ++m2)
        for (int w2 = 0; w2 < g.size(); ++w2) {
          // theta_{m1} N_{w1} theta_{m2} N_{w2}
          auto moved = act_on_monomial(g.elements[w1], monos[std::size_t(m2)], n);
          std::vector<long> sum(rank);
          for (std::size_t i = 0; i < rank; ++i)
            sum[i] = (monos[std::size_t(m1)][i] + moved.index[i]) % n;
          Rat angle = mod1(moved.phase_angle + c(w1, w2));
          int i1 = basis_index(m1, w1), i2 = basis_index(m2, w2);
          a.prod[std::size_t(i1)][std::size_t(i2)] = basis_index(mono_index(sum), g.mul(w1, w2));
          a.scalar[std::size_t(i1)][std::size_t(i2)] = unit_to_complex(angle);
        }
  for (int i = 0; i < a.n; ++i) {
    // inverse basis element and the unit scalar it multiplies to
    for (int j = 0; j < a.n; ++j)
      if (a.prod[std::size_t(i)][std::size_t(j)] == 0) {
        a.inv[std::size_t(i)] = j;
        a.inv_scalar[std::size_t(i)] = a.scalar[std::size_t(i)][std::size_t(j)];
        break;
      }
  }
  return a;
}

struct CrossedProductCount {
  std::size_t count = 0;
  std::vector<std::size_t> dims;
};

inline CrossedProductCount crossed_product_count(const ExtWeylGroup& g, long n, const TwoCocycle& c,
                                                 std::uint64_t seed) {
  auto algebra = crossed_product_algebra(g, n, c);
  auto split = split_regular_module(algebra, seed);
  std::size_t total = 0;
  for (auto d : split.dims) total += d * d;
  if (total != std::size_t(algebra.n))
    throw Error("ToleranceAmbiguity", "crossed product blocks do not exhaust the algebra");
  return {split.dims.size(), split.dims};
}

// ---- the twisted extended quotient ----

struct ExtendedQuotientPoint {
  TorusPoint rep;                 // lexicographically least point of its orbit
  std::size_t orbit_size = 0;
  std::size_t stabilizer_size = 0;
  std::vector<std::size_t> irrep_dims; // projective irreps of the stabilizer
};

struct ExtendedQuotient {
  std::vector<ExtendedQuotientPoint> points;
  std::size_t total_irreps = 0;
};

// cocycle family: global cocycle on the group, restricted to stabilizers
inline ExtendedQuotient extended_quotient(const ExtWeylGroup& g, long n, const TwoCocycle& c,
                                          std::uint64_t seed) {
  validate_cocycle(GroupTable{g.table, g.inverse}, c);
  std::size_t rank = g.elements[0].shift.rank();
  auto pts = torsion_points(rank, n);
  std::set<TorusPoint> seen;
  ExtendedQuotient out;
  for (auto& p : pts) {
    if (seen.count(p)) continue;
    auto orb = orbit(g, p);
    for (auto& q : orb) seen.insert(q);
    ExtendedQuotientPoint eq;
    eq.rep = *std::min_element(orb.begin(), orb.end());
    eq.orbit_size = orb.size();
    auto stab = stabilizer(g, eq.rep);
    eq.stabilizer_size = stab.size();
    // stabilizer subgroup table with indices remapped
    GroupTable st;
    st.mul.assign(stab.size(), std::vector<int>(stab.size()));
    st.inv.assign(stab.size(), 0);
    auto pos = [&](int e) {
      for (std::size_t i = 0; i < stab.size(); ++i)
        if (stab[i] == e) return int(i);
      throw Error("Internal", "stabilizer is not closed");
    };
    for (std::size_t i = 0; i < stab.size(); ++i)
      for (std::size_t j = 0; j < stab.size(); ++j)
        st.mul[i][j] = pos(g.mul(stab[std::size_t(i)], stab[std::size_t(j)]));
    for (std::size_t i = 0; i < stab.size(); ++i)
      for (std::size_t j = 0; j < stab.size(); ++j)
        if (st.mul[i][j] == 0) st.inv[i] = int(j);
    auto irr = twisted_irreps(st, c.restricted(stab), seed);
    eq.irrep_dims = irr.dims;
    out.total_irreps += irr.dims.size();
    out.points.push_back(std::move(eq));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const ExtendedQuotientPoint& a, const ExtendedQuotientPoint& b) {
              return a.rep < b.rep;
            });
  return out;
}

// ---- Clifford induction ----

struct InducedModule {
  std::size_t dim = 0;
  std::vector<CMat> theta;   // one per coordinate monomial X_{e_i}
  std::vector<CMat> n_mats;  // one per group element
};

inline InducedModule clifford_induce(const ExtWeylGroup& g, long n, const TwoCocycle& c,
                                     const TorusPoint& chi, const std::vector<CMat>& rho) {
  std::size_t rank = chi.rank();
  auto stab = stabilizer(g, chi);
  // validate rho against the restricted cocycle
  if (rho.size() != std::size_t(g.size()) && rho.size() != stab.size())
    throw Error("WrongCocycleBlock", "model must list one matrix per stabilizer element");
  auto stab_pos = [&](int e) {
    for (std::size_t i = 0; i < stab.size(); ++i)
      if (stab[i] == e) return int(i);
    return -1;
  };
  std::size_t dr = std::size_t(rho[0].rows());
  for (std::size_t i = 0; i < stab.size(); ++i)
    for (std::size_t j = 0; j < stab.size(); ++j) {
      int prod = g.mul(stab[i], stab[j]);
      CMat expect = unit_to_complex(c(stab[i], stab[j])) * rho[std::size_t(stab_pos(prod))];
      if ((rho[i] * rho[j] - expect).norm() > kMatchTol * 100)
        throw Error("WrongCocycleBlock", "model does not satisfy the restricted cocycle relations");
    }

  auto orb = orbit(g, chi);
  std::size_t no = orb.size();
  // coset representatives: the least group element mapping chi to each point
  std::vector<int> reps(no, -1);
  for (std::size_t j = 0; j < no; ++j)
    for (int e = 0; e < g.size() && reps[j] < 0; ++e)
      if (g.elements[e](chi) == orb[j]) reps[j] = e;

  InducedModule m;
  m.dim = no * dr;
  auto block = [&](std::size_t j, std::size_t a) { return Eigen::Index(j * dr + a); };

  // theta action: diagonal by the monomial value at the orbit point
  for (std::size_t i = 0; i < rank; ++i) {
    CMat t = CMat::Zero(Eigen::Index(m.dim), Eigen::Index(m.dim));
    for (std::size_t j = 0; j < no; ++j) {
      LatticeVector e(std::vector<long long>(rank, 0));
      e.c[i] = 1;
      auto v = monomial_eval(e, orb[j]);
      for (std::size_t a = 0; a < dr; ++a) t(block(j, a), block(j, a)) = unit_to_complex(v.angle);
    }
    m.theta.push_back(std::move(t));
  }
  // N_w action: j -> j' with w x_j = x_{j'} s, s in the stabilizer
  for (int w = 0; w < g.size(); ++w) {
    CMat nm = CMat::Zero(Eigen::Index(m.dim), Eigen::Index(m.dim));
    for (std::size_t j = 0; j < no; ++j) {
      int wx = g.mul(w, reps[j]);
      // find j' with orbit[j'] = image point
      auto img = g.elements[wx](chi);
      std::size_t jp = 0;
      while (jp < no && !(orb[jp] == img)) ++jp;
      int s = g.mul(g.inv(reps[jp]), wx);
      int sp = stab_pos(s);
      if (sp < 0) throw Error("Internal", "coset decomposition escaped the stabilizer");
      // N_w N_{x_j} = n(w, x_j) N_{w x_j}; N_{x_j'} N_s = n(x_j', s) N_{w x_j}
      std::complex<double> scalar =
          unit_to_complex(c(w, reps[j])) / unit_to_complex(c(reps[jp], s));
      for (std::size_t a = 0; a < dr; ++a)
        for (std::size_t b = 0; b < dr; ++b)
          nm(block(jp, a), block(j, b)) = scalar * rho[std::size_t(sp)](Eigen::Index(a), Eigen::Index(b));
    }
    m.n_mats.push_back(std::move(nm));
  }

  // crossed-product relations as a numerical sanity net
  for (int w = 0; w < g.size(); ++w)
    for (std::size_t i = 0; i < rank; ++i) {
      std::vector<long> mono(rank, 0);
      mono[i] = 1;
      auto moved = act_on_monomial(g.elements[w], mono, n);
      CMat lhs = m.n_mats[std::size_t(w)] * m.theta[i];
      CMat rhs = CMat::Identity(Eigen::Index(m.dim), Eigen::Index(m.dim));
      rhs *= unit_to_complex(moved.phase_angle);
      for (std::size_t t = 0; t < rank; ++t)
        for (long rep = 0; rep < moved.index[t]; ++rep) rhs = m.theta[t] * rhs;
      rhs = rhs * m.n_mats[std::size_t(w)];
      if ((lhs - rhs).norm() > kMatchTol * 100 * double(m.dim))
        throw Error("Internal", "induced module violates the crossed-product relations");
    }
  return m;
}

} // namespace heckeforge
