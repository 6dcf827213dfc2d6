// The finite group of torus transformations generated by Weyl elements,
// the translations by the finite subgroup X_nr(M,sigma), and the twisted
// transformations chi_r attached to the R part. Every element factors
// uniquely (not homomorphically) as translation * r * w.

#pragma once

#include "heckeforge/laurent.hpp"

#include <algorithm>
#include <map>

namespace heckeforge {

struct ExtWeylGroup {
  std::vector<TorusTransformation> elements;
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;
  std::vector<int> translations; // indices of the pure translations
  // factorization translation * r * w, stored as (translation element
  // index, r index in spec.full, w index in spec.full)
  std::vector<std::array<int, 3>> factor;
  const ExtendedGroupSpec* spec = nullptr;

  int size() const { return int(elements.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const { return inverse[a]; }

  int index_of(const TorusTransformation& t) const {
    for (int i = 0; i < size(); ++i)
      if (elements[i] == t) return i;
    return -1;
  }
};

// translations must form a finite group of unitary torsion points
inline void check_translation_group(const std::vector<TorusPoint>& translations) {
  if (translations.empty()) throw Error("ParseError", "translation set must contain the identity");
  for (auto& t : translations) {
    if (!t.is_unitary()) throw Error("NonUnitaryPoint", "translations must be unitary torsion points");
    for (auto& s : translations) {
      auto prod = t * s;
      bool found = false;
      for (auto& u : translations)
        if (u == prod) found = true;
      if (!found) throw Error("NotFinite", "translations are not closed under multiplication");
    }
  }
}

// ext: the linear group R |x W; translations: the finite subgroup of
// unitary points; chi_r: one torus point per element of r_part (indexed
// like ext.r_part), with chi = identity for the identity element.
inline ExtWeylGroup generate_ext(const ExtendedGroupSpec& ext, std::vector<TorusPoint> translations,
                                 const std::map<int, TorusPoint>& chi_r) {
  std::size_t rank = std::size_t(ext.datum.rank);
  if (translations.empty()) translations.push_back(TorusPoint::identity(rank));
  check_translation_group(translations);
  auto is_translation_point = [&](const TorusPoint& p) {
    for (auto& t : translations)
      if (t == p) return true;
    return false;
  };

  // compatibility: w(chi_r) chi_r^{-1} must be a translation for all w in
  // W(Sigma), and r^{-1}(chi_r) chi_{r^{-1}} must be one as well
  auto chi_of = [&](int r) {
    auto it = chi_r.find(r);
    return it == chi_r.end() ? TorusPoint::identity(rank) : it->second;
  };
  for (int r : ext.r_part) {
    TorusPoint cr = chi_of(r);
    if (!cr.is_unitary()) throw Error("NonUnitaryPoint", "chi_r must be unitary");
    for (int w : ext.weyl_in_full) {
      auto moved = apply_to_point(ext.full.elements[w].matrix, cr) * cr.inverse();
      if (!is_translation_point(moved))
        throw Error("CompatibilityViolation",
                    "w(chi_r) chi_r^{-1} leaves the translation subgroup for r = " + std::to_string(r));
    }
    int rinv = ext.full.inv(r);
    auto inv_moved = apply_to_point(ext.full.elements[rinv].matrix, cr) * chi_of(rinv);
    if (!is_translation_point(inv_moved))
      throw Error("CompatibilityViolation",
                  "r^{-1}(chi_r) chi_{r^{-1}} leaves the translation subgroup for r = " +
                      std::to_string(r));
  }

  // generators
  std::vector<TorusTransformation> gens;
  for (int w = 0; w < ext.full.size(); ++w) {
    if (ext.full.elements[w].length == 0 && w != 0) {
      auto it = chi_r.find(w);
      TorusPoint cr = it == chi_r.end() ? TorusPoint::identity(rank) : it->second;
      gens.emplace_back(ext.full.elements[w].matrix, cr);
    }
  }
  for (int s : ext.weyl.simple)
    gens.push_back(TorusTransformation::linear_only(ext.weyl.elements[s].matrix));
  for (auto& t : translations)
    if (!t.is_identity()) gens.push_back(TorusTransformation::translation(t));

  long cap = long(translations.size()) * ext.full.size();
  ExtWeylGroup g;
  g.spec = &ext;
  g.elements.push_back(TorusTransformation::identity(rank));
  auto push = [&](const TorusTransformation& t) {
    if (g.index_of(t) >= 0) return false;
    g.elements.push_back(t);
    return true;
  };
  for (auto& x : gens) push(x);
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (auto& x : gens) {
      if (long(g.elements.size()) > cap) throw Error("NotFinite", "closure exceeds the expected order");
      push(g.elements[i] * x);
      push(x * g.elements[i]);
    }
  if (long(g.elements.size()) > cap) throw Error("NotFinite", "closure exceeds the expected order");

  // deterministic order: translations first, then by linear part as in spec.full
  std::sort(g.elements.begin() + 1, g.elements.end(),
            [&](const TorusTransformation& a, const TorusTransformation& b) {
              bool ta = a.is_translation(), tb = b.is_translation();
              if (ta != tb) return ta;
              if (a.linear != b.linear) return a.linear < b.linear;
              return a.shift < b.shift;
            });

  g.table.assign(g.size(), std::vector<int>(g.size()));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      int k = g.index_of(g.elements[i] * g.elements[j]);
      if (k < 0) throw Error("NotFinite", "product escapes the closure");
      g.table[i][j] = k;
    }
  g.inverse.assign(g.size(), -1);
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (g.table[i][j] == 0) g.inverse[i] = j;
  for (int i = 0; i < g.size(); ++i)
    if (g.elements[i].is_translation()) g.translations.push_back(i);

  // verify the claimed order and store the bijective factorization
  if (g.elements.size() != translations.size() * std::size_t(ext.full.size()))
    throw Error("NotFinite", "group order is not |translations| * |R x W|");
  std::map<std::string, int> lin_index;
  for (int i = 0; i < ext.full.size(); ++i)
    lin_index[detail::matrix_key(ext.full.elements[i].matrix)] = i;
  g.factor.resize(g.size());
  for (int i = 0; i < g.size(); ++i) {
    auto it = lin_index.find(detail::matrix_key(g.elements[i].linear));
    if (it == lin_index.end()) throw Error("NotFinite", "linear part escapes R x W");
    auto [r, w] = ext.factor[it->second];
    // rebuild r * w as torus transformations and peel off the translation
    TorusTransformation rt(ext.full.elements[r].matrix,
                           chi_r.count(r) ? chi_r.at(r) : TorusPoint::identity(rank));
    TorusTransformation wt = TorusTransformation::linear_only(ext.full.elements[w].matrix);
    TorusTransformation rest = rt * wt;
    TorusTransformation trans = g.elements[i] * rest.inverse();
    if (!trans.is_translation() || !is_translation_point(trans.shift))
      throw Error("NotFinite", "factorization translation escapes the subgroup");
    int ti = g.index_of(trans);
    g.factor[i] = {ti, r, w};
  }
  return g;
}

inline std::vector<TorusPoint> orbit(const ExtWeylGroup& g, const TorusPoint& u) {
  std::vector<TorusPoint> out;
  for (auto& e : g.elements) {
    auto v = e(u);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> stabilizer(const ExtWeylGroup& g, const TorusPoint& u) {
  std::vector<int> out;
  for (int i = 0; i < g.size(); ++i)
    if (g.elements[i](u) == u) out.push_back(i);
  return out;
}

// For each linear-group element w fixing u modulo translations, the unique
// translation chi_c with chi_c * w fixing u. Group isomorphism onto the
// stabilizer, verified on the table.
struct OmegaIso {
  std::vector<int> linear_elements; // indices into spec.full
  std::vector<int> images;          // indices into the ExtWeylGroup
};

inline OmegaIso omega_iso(const ExtWeylGroup& g, const TorusPoint& u) {
  if (!u.is_unitary()) throw Error("NonUnitaryPoint", "omega_iso needs a unitary point");
  const auto& ext = *g.spec;
  OmegaIso iso;
  auto stab = stabilizer(g, u);
  for (int w = 0; w < ext.full.size(); ++w) {
    // the candidate lift: chi_c = u * (w~(u))^{-1} where w~ carries chi_r
    auto [r, v] = ext.factor[w];
    TorusTransformation wt(ext.full.elements[w].matrix, TorusPoint::identity(u.rank()));
    // use the element of g with this linear part and the canonical chi_r shift
    int base = -1;
    for (int i = 0; i < g.size(); ++i)
      if (g.elements[i].linear == ext.full.elements[w].matrix) {
        base = i;
        break;
      }
    if (base < 0) continue;
    auto moved = g.elements[base](u);
    TorusPoint needed = u * moved.inverse();
    TorusTransformation lift = TorusTransformation::translation(needed) * g.elements[base];
    int idx = g.index_of(lift);
    if (idx < 0) continue; // w does not stabilize u modulo the translations
    iso.linear_elements.push_back(w);
    iso.images.push_back(idx);
  }
  // homomorphism check on the table
  const auto& full = ext.full;
  auto find_image = [&](int w) {
    for (std::size_t i = 0; i < iso.linear_elements.size(); ++i)
      if (iso.linear_elements[i] == w) return int(i);
    return -1;
  };
  for (std::size_t i = 0; i < iso.linear_elements.size(); ++i)
    for (std::size_t j = 0; j < iso.linear_elements.size(); ++j) {
      int prod = full.mul(iso.linear_elements[i], iso.linear_elements[j]);
      int k = find_image(prod);
      if (k < 0 || g.mul(iso.images[i], iso.images[j]) != iso.images[k])
        throw Error("Internal", "omega lift fails to be a homomorphism");
    }
  // images must exhaust the stabilizer
  std::vector<int> sorted = iso.images;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != stab) throw Error("Internal", "omega lift does not hit the stabilizer");
  return iso;
}

// lift of a single group element; NoSuchLift when it moves the point off
// its translation coset
inline TorusTransformation omega_lift(const ExtWeylGroup& g, const TorusPoint& u, int full_index) {
  auto iso = omega_iso(g, u);
  for (std::size_t i = 0; i < iso.linear_elements.size(); ++i)
    if (iso.linear_elements[i] == full_index) return g.elements[iso.images[i]];
  throw Error("NoSuchLift", "element does not stabilize the point modulo translations");
}

} // namespace heckeforge
