// Laurent polynomials on the torus, their fraction field, the actions of
// torus transformations, and the named rational functions mu_alpha,
// g_alpha, f_alpha attached to a parameter function. The coefficient
// field C is rational by default; the cyclotomic mode admits torsion
// shifts of order > 2.

#pragma once

#include "heckeforge/cyclotomic.hpp"
#include "heckeforge/root_datum.hpp"

#include <map>

namespace heckeforge {

// linear part acting on the lattice plus a unitary torsion shift
struct TorusTransformation {
  IntMat linear;
  TorusPoint shift; // logmag must vanish

  TorusTransformation() = default;
  TorusTransformation(IntMat l, TorusPoint s) : linear(std::move(l)), shift(std::move(s)) {
    if (!shift.is_unitary()) throw Error("NonUnitaryPoint", "transformation shift must be unitary");
  }
  static TorusTransformation identity(std::size_t rank) {
    return {int_identity(rank), TorusPoint::identity(rank)};
  }
  static TorusTransformation translation(TorusPoint s) {
    auto n = s.rank();
    return {int_identity(n), std::move(s)};
  }
  static TorusTransformation linear_only(IntMat l) {
    auto n = l.size();
    return {std::move(l), TorusPoint::identity(n)};
  }

  // chi -> linear(chi) * shift
  TorusPoint operator()(const TorusPoint& chi) const {
    return apply_to_point(linear, chi) * shift;
  }
  // (l1,s1) o (l2,s2) = (l1 l2, l1(s2) s1)
  friend TorusTransformation operator*(const TorusTransformation& a, const TorusTransformation& b) {
    return {int_mul(a.linear, b.linear), apply_to_point(a.linear, b.shift) * a.shift};
  }
  TorusTransformation inverse() const {
    IntMat li = int_inverse(linear);
    return {li, apply_to_point(li, shift.inverse())};
  }
  bool is_translation() const { return linear == int_identity(linear.size()); }
  friend bool operator==(const TorusTransformation& a, const TorusTransformation& b) {
    return a.linear == b.linear && a.shift == b.shift;
  }
};

template <class C>
class LaurentPoly {
public:
  using coeff_type = C;
  using term_map = std::map<LatticeVector, C>;

  LaurentPoly() : rank_(0) {}
  explicit LaurentPoly(std::size_t rank) : rank_(rank) {}

  static LaurentPoly zero(std::size_t rank) { return LaurentPoly(rank); }
  static LaurentPoly constant(std::size_t rank, const C& c) {
    LaurentPoly p(rank);
    p.add_term(LatticeVector::zero(rank), c);
    return p;
  }
  static LaurentPoly one(std::size_t rank) { return constant(rank, scalar_ops<C>::one()); }
  static LaurentPoly monomial(const LatticeVector& e, const C& c) {
    LaurentPoly p(e.rank());
    p.add_term(e, c);
    return p;
  }

  std::size_t rank() const { return rank_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
  }
  C constant_value() const {
    auto it = terms_.find(LatticeVector::zero(rank_));
    return it == terms_.end() ? scalar_ops<C>::zero() : it->second;
  }

  void add_term(const LatticeVector& e, const C& c) {
    if (scalar_ops<C>::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second = it->second + c;
      if (scalar_ops<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    for (auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    for (auto& [e, c] : b.terms_) a.add_term(e, scalar_ops<C>::zero() - c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& [e, c] : a.terms_) c = scalar_ops<C>::zero() - c;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.rank_ ? a.rank_ : b.rank_);
    for (auto& [e1, c1] : a.terms_)
      for (auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  LaurentPoly scaled(const C& f) const {
    LaurentPoly r(rank_);
    for (auto& [e, c] : terms_) r.add_term(e, c * f);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  // (w . b)(chi) = b(w^{-1} chi); monomials move by the lattice matrix and
  // pick up the inverse shift value as a root of unity
  LaurentPoly acted(const TorusTransformation& w) const {
    LaurentPoly r(rank_);
    for (auto& [e, c] : terms_) {
      LatticeVector img = apply_matrix(w.linear, e);
      Rat angle(0);
      for (std::size_t i = 0; i < rank_; ++i) angle += Rat(img.c[i]) * w.shift.angle[i];
      auto unit = scalar_ops<C>::unit(-angle);
      if (!unit)
        throw Error("UnrepresentableScalar",
                    "shift scalar with angle " + rat_str(mod1(-angle)) + " is outside the coefficient field");
      r.add_term(img, c * *unit);
    }
    return r;
  }

  // exact evaluation at nonzero rational coordinate values
  C eval(const std::vector<Rat>& x) const {
    check_rank(x.size(), rank_, "eval");
    C acc = scalar_ops<C>::zero();
    for (auto& [e, c] : terms_) {
      Rat v(1);
      for (std::size_t i = 0; i < rank_; ++i) {
        if (x[i] == 0) throw Error("DivisionByZero", "evaluation at a zero coordinate");
        v *= pow_rat(x[i], e.c[i]);
      }
      acc = acc + c * scalar_ops<C>::from_rational(v);
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + scalar_ops<C>::str(c) + ")*X^" + e.str();
    }
    return s;
  }

private:
  std::size_t rank_;
  term_map terms_;
};

// X^{h_alpha} viewed in the coefficient ring
template <class C>
LaurentPoly<C> x_alpha(const RootDatum& d, int root_index) {
  return LaurentPoly<C>::monomial(d.coroots[root_index], scalar_ops<C>::one());
}

// ---- fractions ----

namespace detail {

// If every exponent of num and den is an integer multiple of one primitive
// direction v, return v; fractions built from a single X_alpha stay in
// this shape and admit univariate gcd reduction.
inline std::optional<LatticeVector> common_direction(const std::vector<const void*>&) = delete;

template <class C>
std::optional<LatticeVector> common_direction(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
  LatticeVector dir;
  bool found = false;
  auto scan = [&](const LaurentPoly<C>& p) -> bool {
    for (auto& [e, c] : p.terms()) {
      if (e.is_zero()) continue;
      if (!found) {
        // primitive part of e
        long long g = 0;
        for (auto x : e.c) g = std::gcd(g, x < 0 ? -x : x);
        dir = e;
        for (auto& x : dir.c) x /= g;
        found = true;
      }
      // e must be an integer multiple of dir
      long long k = 0;
      for (std::size_t i = 0; i < e.rank(); ++i)
        if (dir.c[i] != 0) {
          k = e.c[i] / dir.c[i];
          break;
        }
      if (!(k * dir == e)) return false;
    }
    return true;
  };
  if (!scan(a) || !scan(b)) return std::nullopt;
  if (!found) return std::nullopt;
  return dir;
}

// univariate coefficients of p along direction v, indexed by the multiple
template <class C>
std::map<long long, C> along_direction(const LaurentPoly<C>& p, const LatticeVector& v) {
  std::map<long long, C> out;
  for (auto& [e, c] : p.terms()) {
    long long k = 0;
    for (std::size_t i = 0; i < e.rank(); ++i)
      if (v.c[i] != 0) {
        k = e.c[i] / v.c[i];
        break;
      }
    out[k] = c;
  }
  return out;
}

// gcd of univariate polynomials over the coefficient field
template <class C>
std::vector<C> uni_gcd(std::vector<C> a, std::vector<C> b) {
  auto trim = [](std::vector<C>& p) {
    while (!p.empty() && scalar_ops<C>::is_zero(p.back())) p.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size() && !a.empty()) {
      C f = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - f * b[i];
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    C lead = a.back();
    for (auto& c : a) c = c / lead;
  }
  return a;
}

template <class C>
std::vector<C> uni_divide_exact(std::vector<C> a, const std::vector<C>& b) {
  std::vector<C> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, scalar_ops<C>::zero());
  auto trim = [](std::vector<C>& p) {
    while (!p.empty() && scalar_ops<C>::is_zero(p.back())) p.pop_back();
  };
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    C f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - f * b[i];
    trim(a);
  }
  if (!a.empty()) throw Error("Internal", "inexact univariate division");
  return q;
}

} // namespace detail

template <class C>
class RationalFunction {
public:
  RationalFunction() = default;
  explicit RationalFunction(LaurentPoly<C> num)
      : num_(std::move(num)), den_(LaurentPoly<C>::one(num_.rank())) {}
  RationalFunction(LaurentPoly<C> num, LaurentPoly<C> den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("DivisionByZero", "zero denominator");
    normalize();
  }

  static RationalFunction constant(std::size_t rank, const C& c) {
    return RationalFunction(LaurentPoly<C>::constant(rank, c));
  }
  static RationalFunction one(std::size_t rank) {
    return RationalFunction(LaurentPoly<C>::one(rank));
  }
  static RationalFunction zero(std::size_t rank) {
    return RationalFunction(LaurentPoly<C>::zero(rank), LaurentPoly<C>::one(rank));
  }

  const LaurentPoly<C>& num() const { return num_; }
  const LaurentPoly<C>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::size_t rank() const { return den_.rank(); }

  bool is_polynomial() const { return den_.is_constant() && !den_.is_zero(); }
  LaurentPoly<C> as_polynomial() const {
    if (!is_polynomial()) throw Error("NotDivisible", "fraction is not a Laurent polynomial");
    C inv = scalar_ops<C>::one() / den_.constant_value();
    return num_.scaled(inv);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error("DivisionByZero", "division by the zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of the zero function");
    return RationalFunction(den_, num_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    return RationalFunction(-a.num_, a.den_);
  }

  // equality by cross multiplication
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction acted(const TorusTransformation& w) const {
    return RationalFunction(num_.acted(w), den_.acted(w));
  }

  // exact evaluation; nullopt at a pole of the reduced representative
  std::optional<C> eval(const std::vector<Rat>& x) const {
    C d = den_.eval(x);
    if (scalar_ops<C>::is_zero(d)) return std::nullopt;
    return num_.eval(x) / d;
  }

  std::string str() const { return "[" + num_.str() + "] / [" + den_.str() + "]"; }

private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = LaurentPoly<C>::one(den_.rank());
      return;
    }
    // cancel along a common direction when both parts are univariate
    if (auto dir = detail::common_direction(num_, den_)) {
      auto nu = detail::along_direction(num_, *dir);
      auto de = detail::along_direction(den_, *dir);
      long long n0 = nu.begin()->first, d0 = de.begin()->first;
      auto to_vec = [](const std::map<long long, C>& m, long long base) {
        std::vector<C> v(m.rbegin()->first - base + 1, scalar_ops<C>::zero());
        for (auto& [k, c] : m) v[k - base] = c;
        return v;
      };
      auto nv = to_vec(nu, n0), dv = to_vec(de, d0);
      auto g = detail::uni_gcd(nv, dv);
      if (g.size() > 1) {
        nv = detail::uni_divide_exact(nv, g);
        dv = detail::uni_divide_exact(dv, g);
      }
      LaurentPoly<C> num2(num_.rank()), den2(num_.rank());
      for (std::size_t i = 0; i < nv.size(); ++i)
        num2.add_term((long long)(n0 + (long long)i) * *dir, nv[i]);
      for (std::size_t i = 0; i < dv.size(); ++i)
        den2.add_term((long long)(d0 + (long long)i) * *dir, dv[i]);
      num_ = std::move(num2);
      den_ = std::move(den2);
    }
    // clear the lowmost denominator monomial and scale its lead to one
    const auto& [e0, c0] = *den_.terms().begin();
    LaurentPoly<C> shift = LaurentPoly<C>::monomial(-e0, scalar_ops<C>::one() / c0);
    num_ = num_ * shift;
    den_ = den_ * shift;
  }

  LaurentPoly<C> num_, den_;
};

// ---- the named functions ----

// mu restricted to the alpha-direction:
//   c' (1-X)(1-X^{-1})(1+X)(1+X^{-1})
//   / [(1-q^{-1}X)(1-q^{-1}X^{-1})(1+q*^{-1}X)(1+q*^{-1}X^{-1})]
template <class C>
RationalFunction<C> mu_alpha(const RootDatum& d, const ParamFunction& p, int alpha) {
  std::size_t n = d.rank;
  auto one = LaurentPoly<C>::one(n);
  auto x = x_alpha<C>(d, alpha);
  auto xi = LaurentPoly<C>::monomial(-d.coroots[alpha], scalar_ops<C>::one());
  auto qi = scalar_ops<C>::from_rational(Rat(1) / p.q[alpha]);
  auto qsi = scalar_ops<C>::from_rational(Rat(1) / p.qstar[alpha]);
  auto cp = scalar_ops<C>::from_rational(p.cprime[alpha]);
  auto num = (one - x) * (one - xi) * (one + x) * (one + xi);
  auto den = (one - x.scaled(qi)) * (one - xi.scaled(qi)) * (one + x.scaled(qsi)) * (one + xi.scaled(qsi));
  return RationalFunction<C>(num.scaled(cp), den);
}

// g = (1-X)(1+X)(1-q^{-1})(1+q*^{-1}) / [2 (1-q^{-1}X)(1+q*^{-1}X)]
template <class C>
RationalFunction<C> g_alpha(const RootDatum& d, const ParamFunction& p, int alpha) {
  std::size_t n = d.rank;
  auto one = LaurentPoly<C>::one(n);
  auto x = x_alpha<C>(d, alpha);
  auto qi = scalar_ops<C>::from_rational(Rat(1) / p.q[alpha]);
  auto qsi = scalar_ops<C>::from_rational(Rat(1) / p.qstar[alpha]);
  Rat factor = (Rat(1) - Rat(1) / p.q[alpha]) * (Rat(1) + Rat(1) / p.qstar[alpha]) / Rat(2);
  auto num = ((one - x) * (one + x)).scaled(scalar_ops<C>::from_rational(factor));
  auto den = (one - x.scaled(qi)) * (one + x.scaled(qsi));
  return RationalFunction<C>(num, den);
}

// f = [X^2 (q q* - 1) + X (q - q*)] / (X^2 - 1)
template <class C>
RationalFunction<C> f_alpha(const RootDatum& d, const ParamFunction& p, int alpha) {
  std::size_t n = d.rank;
  auto one = LaurentPoly<C>::one(n);
  auto x = x_alpha<C>(d, alpha);
  auto x2 = x * x;
  auto num = x2.scaled(scalar_ops<C>::from_rational(p.q[alpha] * p.qstar[alpha] - 1)) +
             x.scaled(scalar_ops<C>::from_rational(p.q[alpha] - p.qstar[alpha]));
  return RationalFunction<C>(num, x2 - one);
}

// Exact value of f_alpha * (b - s_alpha b) as a Laurent polynomial. Each
// monomial X^m of b contributes geometric sums along -h_alpha; odd
// pairings are only divisible when q* = 1.
template <class C>
LaurentPoly<C> twisted_divide(const RootDatum& d, const ParamFunction& p, int alpha,
                              const LaurentPoly<C>& b) {
  const Rat& q = p.q[alpha];
  const Rat& qs = p.qstar[alpha];
  const auto& h = d.coroots[alpha];
  const auto& a = d.roots[alpha];
  LaurentPoly<C> out(b.rank());
  C qq1 = scalar_ops<C>::from_rational(q * qs - 1);
  C qmq = scalar_ops<C>::from_rational(q - qs);
  C qm1 = scalar_ops<C>::from_rational(q - 1);
  for (auto& [e, c] : b.terms()) {
    long long m = pair(e, a);
    if (m == 0) continue;
    if (m % 2 == 0) {
      // [qq*-1 + t(q-q*)] (1 - t^m)/(1 - t^2), t = X^{-h}
      long long k = m > 0 ? m : -m;
      for (long long j = 0; j + 2 <= k; j += 2) {
        long long off = m > 0 ? j : -(j + 2);
        C sign = m > 0 ? c : scalar_ops<C>::zero() - c;
        out.add_term(e - off * h, sign * qq1);
        out.add_term(e - (off + 1) * h, sign * qmq);
      }
    } else {
      if (qs != 1)
        throw Error("NotDivisible", "odd pairing " + std::to_string(m) + " at root " +
                                        std::to_string(alpha) + " with q* > 1");
      // f = (q-1)/(1-t): contribution (q-1)(1 - t^m)/(1-t)
      long long k = m > 0 ? m : -m;
      for (long long j = 0; j < k; ++j) {
        long long off = m > 0 ? j : -(j + 1);
        C sign = m > 0 ? c : scalar_ops<C>::zero() - c;
        out.add_term(e - off * h, sign * qm1);
      }
    }
  }
  return out;
}

} // namespace heckeforge
