#pragma once

#include <cmath>
#include <cstdint>

// Double-double ("compensated pair") arithmetic: value = hi + lo with
// |lo| <= ulp(hi)/2.  Gives ~106 bits of mantissa, which is what the
// phase pipeline needs to reduce omega*n^beta mod 2 for n^beta up to ~2^60
// without losing the fractional part.

namespace osclab {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  constexpr dd(double h, double l) : hi(h), lo(l) {}
  explicit constexpr dd(double h) : hi(h), lo(0.0) {}

  double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// requires |a| >= |b| (or a == 0)
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(const dd& a, const dd& b) {
  dd s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return quick_two_sum(s.hi, lo);
}

inline dd dd_add(const dd& a, double b) {
  dd s = two_sum(a.hi, b);
  double lo = s.lo + a.lo;
  return quick_two_sum(s.hi, lo);
}

inline dd dd_neg(const dd& a) { return {-a.hi, -a.lo}; }

inline dd dd_sub(const dd& a, const dd& b) { return dd_add(a, dd_neg(b)); }

inline dd dd_mul(const dd& a, const dd& b) {
  dd p = two_prod(a.hi, b.hi);
  double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, lo);
}

inline dd dd_mul(const dd& a, double b) {
  dd p = two_prod(a.hi, b);
  double lo = p.lo + a.lo * b;
  return quick_two_sum(p.hi, lo);
}

inline dd dd_div(const dd& a, double b) {
  double q1 = a.hi / b;
  dd p = two_prod(q1, b);
  dd r = dd_add(dd_sub(a, p), 0.0);
  double q2 = (r.hi + r.lo) / b;
  return quick_two_sum(q1, q2);
}

inline dd dd_div(const dd& a, const dd& b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline dd dd_scalbn(const dd& a, int e) {
  return {std::scalbn(a.hi, e), std::scalbn(a.lo, e)};
}

// exact-rounded constants (hi + lo pairs)
inline constexpr dd dd_pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr dd dd_two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr dd dd_ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr dd dd_inv_pi{0.3183098861837907, -1.9678676675182486e-17};

dd dd_ln(double x);        // x > 0
dd dd_exp(const dd& t);
dd dd_pow(double x, double y);  // x > 0, via exp(y ln x)

// v mod m reduced into [0, m); exact fmod on both components
double dd_mod(const dd& v, double m);

// reduce v into (-m/2, m/2]
double dd_mod_centered(const dd& v, double m);

}  // namespace osclab
