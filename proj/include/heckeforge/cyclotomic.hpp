// Exact arithmetic in cyclotomic fields Q(zeta_N), N fixed at runtime.
// Values are residues modulo the N-th cyclotomic polynomial. Level 1 is a
// plain rational and promotes into any level; mixing incompatible levels
// is an error. This is the extended coefficient mode that lets torsion
// shifts of order > 2 act on polynomial coefficients exactly.

#pragma once

#include "heckeforge/rational.hpp"

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace heckeforge {

namespace detail {

// coefficients low-degree first
using QPoly = std::vector<Rat>;

inline void qp_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  qp_trim(c);
  return c;
}

// division with remainder in Q[x]
inline std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
  QPoly q;
  if (b.empty()) throw Error("DivisionByZero", "polynomial division by zero");
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    qp_trim(a);
  }
  qp_trim(q);
  return {q, a};
}

inline const QPoly& cyclotomic_poly(int n) {
  static std::map<int, QPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  QPoly num(n + 1, Rat(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) {
      auto [q, r] = qp_divmod(num, cyclotomic_poly(d));
      if (!r.empty()) throw Error("Internal", "cyclotomic division remainder");
      num = q;
    }
  return cache.emplace(n, num).first->second;
}

// extended gcd in Q[x]: g = s*a + t*b with g monic
inline void qp_ext_gcd(QPoly a, QPoly b, QPoly& g, QPoly& s, QPoly& t) {
  QPoly s0{Rat(1)}, s1, t0, t1{Rat(1)};
  qp_trim(a);
  qp_trim(b);
  while (!b.empty()) {
    auto [q, r] = qp_divmod(a, b);
    QPoly s2 = s0, t2 = t0;
    // s2 -= q*s1 ; t2 -= q*t1
    QPoly qs = qp_mul(q, s1), qt = qp_mul(q, t1);
    s2.resize(std::max(s2.size(), qs.size()), Rat(0));
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    t2.resize(std::max(t2.size(), qt.size()), Rat(0));
    for (std::size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    qp_trim(s2);
    qp_trim(t2);
    a = b;
    s0 = s1;
    t0 = t1;
    b = r;
    s1 = s2;
    t1 = t2;
  }
  if (a.empty()) throw Error("DivisionByZero", "gcd of zero polynomials");
  Rat lead = a.back();
  for (auto& c : a) c /= lead;
  for (auto& c : s0) c /= lead;
  for (auto& c : t0) c /= lead;
  g = a;
  s = s0;
  t = t0;
}

} // namespace detail

class Cyclotomic {
public:
  Cyclotomic() : level_(1) {}
  Cyclotomic(const Rat& r) : level_(1) { // NOLINT: implicit by design
    if (r != 0) coeffs_ = {r};
  }
  Cyclotomic(int level, std::vector<Rat> coeffs) : level_(level), coeffs_(std::move(coeffs)) {
    reduce();
  }

  static Cyclotomic zeta(int level, long power) {
    power %= level;
    if (power < 0) power += level;
    std::vector<Rat> c(power + 1, Rat(0));
    c[power] = 1;
    return Cyclotomic(level, std::move(c));
  }

  int level() const { return level_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  Rat rational_part() const { return coeffs_.empty() ? Rat(0) : coeffs_[0]; }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    int l = std::lcm(a.level_, b.level_);
    auto x = a.lifted_coeffs(l), y = b.lifted_coeffs(l);
    x.resize(std::max(x.size(), y.size()), Rat(0));
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return Cyclotomic(l, std::move(x));
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    int l = std::lcm(a.level_, b.level_);
    auto x = a.lifted_coeffs(l), y = b.lifted_coeffs(l);
    x.resize(std::max(x.size(), y.size()), Rat(0));
    for (std::size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
    return Cyclotomic(l, std::move(x));
  }
  friend Cyclotomic operator-(Cyclotomic a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    int l = std::lcm(a.level_, b.level_);
    return Cyclotomic(l, detail::qp_mul(a.lifted_coeffs(l), b.lifted_coeffs(l)));
  }
  Cyclotomic inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
    if (level_ == 1) return Cyclotomic(Rat(1) / coeffs_[0]);
    detail::QPoly g, s, t;
    detail::qp_ext_gcd(coeffs_, detail::cyclotomic_poly(level_), g, s, t);
    if (g.size() != 1) throw Error("Internal", "non-unit gcd in cyclotomic inverse");
    return Cyclotomic(level_, s);
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      z += rat_to_double(coeffs_[i]) * unit_to_complex(Rat(long(i), long(level_)));
    return z;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += rat_str(coeffs_[i]);
      if (i > 0) s += "*z" + std::to_string(level_) + "^" + std::to_string(i);
    }
    return s;
  }

private:
  void reduce() {
    if (level_ > 1) {
      auto [q, r] = detail::qp_divmod(coeffs_, detail::cyclotomic_poly(level_));
      coeffs_ = r;
    }
    detail::qp_trim(coeffs_);
    if (coeffs_.size() <= 1) level_ = 1; // rational values normalize to level 1
  }

  // residue coefficients viewed in the level-l field (level_ | l)
  std::vector<Rat> lifted_coeffs(int l) const {
    int f = l / level_;
    if (f == 1) return coeffs_;
    std::vector<Rat> c;
    if (!coeffs_.empty()) {
      c.assign((coeffs_.size() - 1) * f + 1, Rat(0));
      for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * f] = coeffs_[i];
    }
    return c;
  }

  int level_;
  std::vector<Rat> coeffs_; // residue mod Phi_level, low-degree first
};

// Uniform access to the coefficient scalars used by the polynomial and
// Hecke layers. unit(angle) is the root of unity e^{2*pi*i*angle} when the
// field can represent it.
template <class C>
struct scalar_ops;

template <>
struct scalar_ops<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_rational(const Rat& r) { return r; }
  static bool is_zero(const Rat& r) { return r == 0; }
  static std::optional<Rat> unit(const Rat& angle) {
    Rat a = mod1(angle);
    if (a == 0) return Rat(1);
    if (a == Rat(1, 2)) return Rat(-1);
    return std::nullopt;
  }
  static std::string str(const Rat& r) { return rat_str(r); }
  static std::complex<double> to_complex(const Rat& r) { return {rat_to_double(r), 0.0}; }
};

template <>
struct scalar_ops<Cyclotomic> {
  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return Cyclotomic(Rat(1)); }
  static Cyclotomic from_rational(const Rat& r) { return Cyclotomic(r); }
  static bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
  static std::optional<Cyclotomic> unit(const Rat& angle) {
    Rat a = mod1(angle);
    long den = denominator(a).convert_to<long>();
    long num = numerator(a).convert_to<long>();
    return Cyclotomic::zeta(int(den), num);
  }
  static std::string str(const Cyclotomic& c) { return c.str(); }
  static std::complex<double> to_complex(const Cyclotomic& c) { return c.to_complex(); }
};

} // namespace heckeforge
