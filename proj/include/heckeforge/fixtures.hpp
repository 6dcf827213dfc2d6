// Standard small root data used by the test suites and shipped configs.
// Coroot/root pairs are generated from the simple pairs by reflection
// closure, so each datum is consistent by construction.

#pragma once

#include "heckeforge/graded_hecke.hpp"
#include "heckeforge/root_datum.hpp"

#include <set>
#include <utility>

namespace heckeforge::fixtures {

inline DegenerateRootDatum graded_from_datum(const RootDatum& d) {
  DegenerateRootDatum g;
  g.dim = std::size_t(d.rank);
  for (auto& h : d.coroots) {
    RatVec v(g.dim);
    for (std::size_t i = 0; i < g.dim; ++i) v[i] = h.c[i];
    g.coroots.push_back(std::move(v));
  }
  for (auto& a : d.roots) {
    RatVec v(g.dim);
    for (std::size_t i = 0; i < g.dim; ++i) v[i] = a.c[i];
    g.roots.push_back(std::move(v));
  }
  g.basis = d.basis;
  return g;
}

inline RootDatum generate_datum(std::vector<LatticeVector> simple_coroots,
                                std::vector<LatticeVector> simple_roots) {
  std::set<std::pair<LatticeVector, LatticeVector>> pairs;
  for (std::size_t i = 0; i < simple_coroots.size(); ++i)
    pairs.insert({simple_coroots[i], simple_roots[i]});
  bool grew = true;
  while (grew) {
    grew = false;
    auto cur = pairs;
    for (auto& [h, a] : cur)
      for (std::size_t i = 0; i < simple_coroots.size(); ++i) {
        const auto& hi = simple_coroots[i];
        const auto& ai = simple_roots[i];
        LatticeVector h2 = h - pair(h, ai) * hi;
        LatticeVector a2 = a - pair(hi, a) * ai;
        if (pairs.insert({h2, a2}).second) grew = true;
      }
  }
  std::vector<LatticeVector> coroots, roots;
  std::vector<int> basis;
  for (auto& [h, a] : pairs) {
    coroots.push_back(h);
    roots.push_back(a);
  }
  for (auto& hs : simple_coroots)
    for (std::size_t i = 0; i < coroots.size(); ++i)
      if (coroots[i] == hs) basis.push_back(int(i));
  return build_root_datum(coroots, roots, basis);
}

// A1 with coroot (1) and root (2): all pairings even, so unequal
// parameters with q* > 1 are allowed.
inline RootDatum datum_a1() {
  return generate_datum({LatticeVector({1})}, {LatticeVector({2})});
}

// A1 with coroot (2) and root (1): pairs oddly with the lattice.
inline RootDatum datum_a1_odd() {
  return generate_datum({LatticeVector({2})}, {LatticeVector({1})});
}

inline RootDatum datum_a2() {
  return generate_datum({LatticeVector({1, 0}), LatticeVector({0, 1})},
                        {LatticeVector({2, -1}), LatticeVector({-1, 2})});
}

// B2 coroots {+-e1, +-e2, +-e1+-e2}; short coroots carry even roots, so the
// short orbit admits q* > 1.
inline RootDatum datum_b2() {
  return generate_datum({LatticeVector({0, 1}), LatticeVector({1, -1})},
                        {LatticeVector({0, 2}), LatticeVector({1, -1})});
}

inline RootDatum datum_g2() {
  return generate_datum({LatticeVector({1, 0}), LatticeVector({0, 1})},
                        {LatticeVector({2, -3}), LatticeVector({-1, 2})});
}

inline RootDatum datum_a1a1() {
  return generate_datum({LatticeVector({1, 0}), LatticeVector({0, 1})},
                        {LatticeVector({2, 0}), LatticeVector({0, 2})});
}

inline ParamFunction params_const(const RootDatum& d, Rat q, Rat qstar, Rat cprime = Rat(1)) {
  ParamFunction p;
  p.q.assign(d.num_roots(), q);
  p.qstar.assign(d.num_roots(), qstar);
  p.cprime.assign(d.num_roots(), cprime);
  return p;
}

// assign parameters per W-orbit; orbits are ordered by their smallest root index
inline ParamFunction params_orbitwise(const RootDatum& d, const WeylGroup& w,
                                      std::vector<std::array<Rat, 3>> per_orbit) {
  std::vector<int> orbit_of(d.num_roots(), -1);
  int next = 0;
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    if (orbit_of[i] >= 0) continue;
    std::vector<std::size_t> queue{i};
    orbit_of[i] = next;
    while (!queue.empty()) {
      auto x = queue.back();
      queue.pop_back();
      for (auto& e : w.elements) {
        int y = e.root_perm[x];
        if (orbit_of[y] < 0) {
          orbit_of[y] = next;
          queue.push_back(std::size_t(y));
        }
      }
      // orbits of the full root set: include -alpha with alpha
      int neg = d.negative_of(int(x));
      if (orbit_of[neg] < 0) {
        orbit_of[neg] = next;
        queue.push_back(std::size_t(neg));
      }
    }
    ++next;
  }
  if (std::size_t(next) != per_orbit.size())
    throw Error("ParseError", "expected " + std::to_string(next) + " parameter orbits");
  ParamFunction p;
  p.q.resize(d.num_roots());
  p.qstar.resize(d.num_roots());
  p.cprime.resize(d.num_roots());
  for (std::size_t i = 0; i < d.num_roots(); ++i) {
    p.q[i] = per_orbit[orbit_of[i]][0];
    p.qstar[i] = per_orbit[orbit_of[i]][1];
    p.cprime[i] = per_orbit[orbit_of[i]][2];
  }
  return p;
}

} // namespace heckeforge::fixtures
