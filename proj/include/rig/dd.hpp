#pragma once

#include <cmath>
#include <cstdint>

namespace rig {

// Double-double value: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Used for the alternating sums in this library (inclusion-exclusion over
// clique covers, subset/Moebius transforms), where 2^k signed terms of
// similar magnitude cancel. Error-free transforms follow Dekker/Knuth;
// products use FMA.
struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  dd(double x) : hi(x), lo(0.0) {}
  dd(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// requires |a| >= |b|
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  double err = b - (s - a);
  return {s, err};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

}  // namespace detail

inline dd operator+(dd a, dd b) {
  dd s = detail::two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - dd(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - dd(q2) * b;
  double q3 = r.hi / b.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }

// base^e by binary exponentiation; e up to 2^63.
inline dd dd_pow(dd base, std::uint64_t e) {
  dd acc(1.0);
  while (e != 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// (1 - s)^m for s in [0,1], m possibly huge; plain-double path.
inline double pow1m(double s, std::int64_t m) {
  if (s >= 1.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(m) * std::log1p(-s));
}

}  // namespace rig
