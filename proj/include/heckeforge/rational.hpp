// Exact rational scalars and the small helpers the rest of the library
// leans on: parsing/printing of "p/q" literals, mod-1 normalization for
// angles of roots of unity, and exact base-q_F logarithms.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace heckeforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// All error paths surface as Error with a stable machine-readable kind
// ("PairingNotTwo", "NotDivisible", ...) plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline Rat parse_rat(const std::string& s) {
  auto bad = [&] { throw Error("ParseError", "bad rational literal '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    bad();
  }
  return Rat(0); // unreachable
}

// Representative in [0,1); angles of roots of unity live here.
inline Rat mod1(const Rat& r) {
  Int n = numerator(r), d = denominator(r); // d > 0 canonical
  Int q = n / d;
  if (n < 0 && n % d != 0) q -= 1;
  return r - Rat(q);
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw Error("DivisionByZero", "0 to a negative power");
    return Rat(0);
  }
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long n = e > 0 ? (unsigned long)e : (unsigned long)(-e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

inline double rat_to_double(const Rat& r) {
  return boost::multiprecision::numerator(r).convert_to<double>() /
         boost::multiprecision::denominator(r).convert_to<double>();
}

inline std::complex<double> unit_to_complex(const Rat& angle) {
  double a = 2.0 * 3.14159265358979323846 * rat_to_double(mod1(angle));
  return {std::cos(a), std::sin(a)};
}

namespace detail {

// Prime factorization by trial division; adequate for the desk-scale
// parameter values this tool handles. A leftover composite factor is kept
// as an opaque "prime" so exponent comparison still works exactly.
inline std::map<Int, long> factor_positive(Int n) {
  std::map<Int, long> f;
  if (n <= 0) throw Error("Internal", "factor of non-positive integer");
  for (Int p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

inline std::map<Int, long> factor_rat(const Rat& r) {
  auto f = factor_positive(numerator(r) < 0 ? Int(-numerator(r)) : numerator(r));
  for (auto& [p, e] : factor_positive(denominator(r))) f[p] -= e;
  for (auto it = f.begin(); it != f.end();)
    it = it->second == 0 ? f.erase(it) : std::next(it);
  return f;
}

} // namespace detail

// Exact rational e with base^e = value, when it exists. Both arguments
// must be positive rationals, base != 1 (unless value == 1 too).
inline std::optional<Rat> rational_log_base(const Rat& value, const Rat& base) {
  if (value <= 0 || base <= 0) return std::nullopt;
  if (value == 1) return Rat(0);
  if (base == 1) return std::nullopt;
  auto fv = detail::factor_rat(value);
  auto fb = detail::factor_rat(base);
  if (fb.empty()) return std::nullopt;
  // e = v_p(value) / v_p(base) for the first prime of base; check the rest.
  auto [p0, e0] = *fb.begin();
  auto it = fv.find(p0);
  if (it == fv.end()) return std::nullopt;
  Rat e(it->second, e0);
  for (auto& [p, eb] : fb)
    if (Rat(eb) * e != Rat(fv.count(p) ? fv[p] : 0)) return std::nullopt;
  for (auto& [p, ev] : fv)
    if (!fb.count(p)) return std::nullopt;
  return e;
}

inline long long rat_to_ll(const Rat& r, const char* what = "value") {
  if (denominator(r) != 1)
    throw Error("NotAnInteger", std::string(what) + " is not an integer: " + rat_str(r));
  return numerator(r).convert_to<long long>();
}

} // namespace heckeforge
