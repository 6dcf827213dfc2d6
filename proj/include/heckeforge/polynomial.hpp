// Polynomials in the coordinates of a rational vector space, with linear
// substitution and exact division by degree-one forms. This is the
// commutative part of the graded algebras.

#pragma once

#include "heckeforge/linalg.hpp"

#include <map>
#include <vector>

namespace heckeforge {

class Poly {
public:
  using expo = std::vector<int>;

  Poly() : nvars_(0) {}
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t n, const Rat& c) {
    Poly p(n);
    p.add_term(expo(n, 0), c);
    return p;
  }
  static Poly one(std::size_t n) { return constant(n, Rat(1)); }
  static Poly linear(const RatVec& v) {
    Poly p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      expo e(v.size(), 0);
      e[i] = 1;
      p.add_term(e, v[i]);
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<expo, Rat>& terms() const { return terms_; }
  int degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
      int t = 0;
      for (int x : e) t += x;
      d = std::max(d, t);
    }
    return d;
  }

  void add_term(const expo& e, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend Poly operator+(Poly a, const Poly& b) {
    for (auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    for (auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars_ ? a.nvars_ : b.nvars_);
    for (auto& [e1, c1] : a.terms_)
      for (auto& [e2, c2] : b.terms_) {
        expo e = e1;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  Poly scaled(const Rat& f) const {
    Poly r(nvars_);
    for (auto& [e, c] : terms_) r.add_term(e, c * f);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  // algebra automorphism induced by the linear map e_i -> column i of g
  Poly substituted(const RatMat& g) const {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < nvars_; ++i) {
      RatVec col(nvars_);
      for (std::size_t j = 0; j < nvars_; ++j) col[j] = g[j][i];
      images.push_back(Poly::linear(col));
    }
    Poly out(nvars_);
    for (auto& [e, c] : terms_) {
      Poly term = Poly::constant(nvars_, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * images[i];
      out = out + term;
    }
    return out;
  }

  // value of the polynomial function at a point of the dual space
  Rat eval(const RatVec& lambda) const {
    Rat acc(0);
    for (auto& [e, c] : terms_) {
      Rat v = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) v *= lambda[i];
      acc += v;
    }
    return acc;
  }

  // exact division by a homogeneous linear form; nonzero remainder is a
  // contract violation of the caller
  Poly divided_by_linear(const RatVec& d) const {
    std::size_t pivot = 0;
    while (pivot < d.size() && d[pivot] == 0) ++pivot;
    if (pivot == d.size()) throw Error("DivisionByZero", "division by the zero form");
    Poly rem = *this, quot(nvars_);
    while (!rem.is_zero()) {
      // leading term in the order that ranks the pivot variable first
      auto best = rem.terms_.begin();
      for (auto it = rem.terms_.begin(); it != rem.terms_.end(); ++it)
        if (it->first[pivot] > best->first[pivot] ||
            (it->first[pivot] == best->first[pivot] && it->first > best->first))
          best = it;
      if (best->first[pivot] == 0)
        throw Error("Internal", "inexact division by a linear form");
      expo e = best->first;
      e[pivot] -= 1;
      Rat c = best->second / d[pivot];
      quot.add_term(e, c);
      // rem -= c * x^e * d
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (d[i] == 0) continue;
        expo t = e;
        t[i] += 1;
        rem.add_term(t, -c * d[i]);
      }
    }
    return quot;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += rat_str(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i]) s += "*v" + std::to_string(i) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return s;
  }

private:
  std::size_t nvars_;
  std::map<expo, Rat> terms_;
};

} // namespace heckeforge
