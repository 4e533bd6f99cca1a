#include "osclab/dd.hpp"

#include <stdexcept>

namespace osclab {

dd dd_ln(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("dd_ln: argument must be positive and finite");
  int e;
  double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
  f *= 2.0;
  e -= 1;
  if (f >= 1.4142135623730951) {
    f *= 0.5;
    e += 1;
  }
  // ln f = 2 atanh(u), u = (f-1)/(f+1), |u| <= 0.1716
  dd u = dd_div(dd{f - 1.0}, dd{f + 1.0});
  dd u2 = dd_mul(u, u);
  dd term = u;
  dd sum = u;
  for (int j = 1; j <= 24; ++j) {
    term = dd_mul(term, u2);
    sum = dd_add(sum, dd_div(term, double(2 * j + 1)));
  }
  return dd_add(dd_mul(sum, 2.0), dd_mul(dd_ln2, double(e)));
}

dd dd_exp(const dd& t) {
  int k = int(std::lround(t.hi / dd_ln2.hi));
  dd r = dd_sub(t, dd_mul(dd_ln2, double(k)));
  dd sum = dd_add(dd{1.0}, r);
  dd term = r;
  for (int j = 2; j <= 26; ++j) {
    term = dd_mul(term, r);
    term = dd_div(term, double(j));
    sum = dd_add(sum, term);
  }
  return dd_scalbn(sum, k);
}

dd dd_pow(double x, double y) {
  if (x == 1.0 || y == 0.0) return dd{1.0};
  if (y == 1.0) return dd{x};
  return dd_exp(dd_mul(dd_ln(x), y));
}

double dd_mod(const dd& v, double m) {
  double hi_r = std::fmod(v.hi, m);
  double lo_r = std::fmod(v.lo, m);
  dd s = two_sum(hi_r, lo_r);
  double r = s.hi + s.lo;
  while (r < 0.0) r += m;
  while (r >= m) r -= m;
  return r;
}

double dd_mod_centered(const dd& v, double m) {
  double r = dd_mod(v, m);
  if (r > 0.5 * m) r -= m;
  return r;
}

}  // namespace osclab
