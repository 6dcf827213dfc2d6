// Lattice vectors, torus points in exact log-polar coordinates, and
// monomial evaluation. A torus point with angle vector a and log-magnitude
// vector m represents the character x -> exp(<x,m>) * e^{2 pi i <x,a>} of
// the lattice; log magnitudes are abstract rationals (the CLI interprets
// them in units of log q_F).

#pragma once

#include "heckeforge/linalg.hpp"
#include "heckeforge/rational.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace heckeforge {

struct LatticeVector {
  std::vector<long long> c;

  LatticeVector() = default;
  explicit LatticeVector(std::vector<long long> v) : c(std::move(v)) {}
  static LatticeVector zero(std::size_t rank) { return LatticeVector(std::vector<long long>(rank, 0)); }

  std::size_t rank() const { return c.size(); }
  bool is_zero() const {
    for (auto x : c)
      if (x) return false;
    return true;
  }

  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r = a;
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r = a;
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend LatticeVector operator*(long long f, LatticeVector a) {
    for (auto& x : a.c) x *= f;
    return a;
  }
  auto operator<=>(const LatticeVector&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }
};

inline void check_rank(std::size_t a, std::size_t b, const char* where) {
  if (a != b) throw Error("RankMismatch", std::string(where) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

// standard bilinear pairing between the lattice and its dual
inline long long pair(const LatticeVector& x, const LatticeVector& y) {
  check_rank(x.rank(), y.rank(), "pair");
  long long s = 0;
  for (std::size_t i = 0; i < x.c.size(); ++i) s += x.c[i] * y.c[i];
  return s;
}

inline LatticeVector apply_matrix(const IntMat& m, const LatticeVector& v) {
  check_rank(m.size(), v.rank(), "apply");
  return LatticeVector(int_mul_vec(m, v.c));
}

// a nonzero complex number exp(logmag) * e^{2 pi i angle}
struct LogPolarScalar {
  Rat angle;  // mod 1
  Rat logmag;

  LogPolarScalar() : angle(0), logmag(0) {}
  LogPolarScalar(Rat a, Rat m) : angle(mod1(a)), logmag(std::move(m)) {}

  friend LogPolarScalar operator*(const LogPolarScalar& a, const LogPolarScalar& b) {
    return {a.angle + b.angle, a.logmag + b.logmag};
  }
  LogPolarScalar inverse() const { return {-angle, -logmag}; }
  friend bool operator==(const LogPolarScalar& a, const LogPolarScalar& b) {
    return a.angle == b.angle && a.logmag == b.logmag;
  }

  bool is_plus_one() const { return logmag == 0 && angle == 0; }
  bool is_minus_one() const { return logmag == 0 && angle == Rat(1, 2); }
  bool is_unitary() const { return logmag == 0; }

  std::string str() const { return "(angle " + rat_str(angle) + ", logmag " + rat_str(logmag) + ")"; }
};

struct TorusPoint {
  std::vector<Rat> angle;  // entries mod 1
  std::vector<Rat> logmag;

  TorusPoint() = default;
  TorusPoint(std::vector<Rat> a, std::vector<Rat> m) : angle(std::move(a)), logmag(std::move(m)) {
    check_rank(angle.size(), logmag.size(), "TorusPoint");
    normalize();
  }
  static TorusPoint identity(std::size_t rank) {
    return TorusPoint(std::vector<Rat>(rank, Rat(0)), std::vector<Rat>(rank, Rat(0)));
  }
  static TorusPoint unitary(std::vector<Rat> a) {
    std::size_t n = a.size();
    return TorusPoint(std::move(a), std::vector<Rat>(n, Rat(0)));
  }

  std::size_t rank() const { return angle.size(); }
  void normalize() {
    for (auto& a : angle) a = mod1(a);
  }
  bool is_unitary() const {
    for (auto& m : logmag)
      if (m != 0) return false;
    return true;
  }
  bool is_identity() const {
    if (!is_unitary()) return false;
    for (auto& a : angle)
      if (a != 0) return false;
    return true;
  }

  friend TorusPoint operator*(const TorusPoint& a, const TorusPoint& b) {
    check_rank(a.rank(), b.rank(), "TorusPoint product");
    TorusPoint r = a;
    for (std::size_t i = 0; i < b.rank(); ++i) {
      r.angle[i] = mod1(r.angle[i] + b.angle[i]);
      r.logmag[i] += b.logmag[i];
    }
    return r;
  }
  TorusPoint inverse() const {
    TorusPoint r = *this;
    for (auto& a : r.angle) a = mod1(-a);
    for (auto& m : r.logmag) m = -m;
    return r;
  }
  friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.angle == b.angle && a.logmag == b.logmag;
  }
  friend bool operator<(const TorusPoint& a, const TorusPoint& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    return a.logmag < b.logmag;
  }

  std::string str() const {
    std::string s = "(angle ";
    for (std::size_t i = 0; i < angle.size(); ++i) s += (i ? "," : "") + rat_str(angle[i]);
    s += "; logmag ";
    for (std::size_t i = 0; i < logmag.size(); ++i) s += (i ? "," : "") + rat_str(logmag[i]);
    return s + ")";
  }
};

// evaluate the monomial X^lambda at chi; multiplicative in lambda
inline LogPolarScalar monomial_eval(const LatticeVector& lambda, const TorusPoint& chi) {
  check_rank(lambda.rank(), chi.rank(), "monomial_eval");
  Rat a(0), m(0);
  for (std::size_t i = 0; i < lambda.c.size(); ++i) {
    a += Rat(lambda.c[i]) * chi.angle[i];
    m += Rat(lambda.c[i]) * chi.logmag[i];
  }
  return {mod1(a), m};
}

} // namespace heckeforge
