#include "osclab/numerics.hpp"

#include <algorithm>

#include "osclab/errors.hpp"

namespace osclab {

double wrap_to_half_open_pi(double a) {
  if (a >= -pi_d && a < pi_d) return a;
  double r = std::remainder(a, 2.0 * pi_d);  // (-pi, pi]
  if (r >= pi_d) r -= 2.0 * pi_d;
  if (r < -pi_d) r += 2.0 * pi_d;
  return r;
}

std::int64_t ceil_guarded(double x) {
  double nearest = std::nearbyint(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)))
    return std::int64_t(nearest);
  return std::int64_t(std::ceil(x));
}

double find_root_monotone(const std::function<double(double)>& f, double lo,
                          double hi, double target,
                          const std::function<double(double)>& fprime) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    fail(errc::range, "find_root_monotone: target not bracketed");
  bool increasing = fhi > 0.0;
  // bisection until the bracket is tight, then Newton polish
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    double fm = f(mid) - target;
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == increasing)
      b = mid;
    else
      a = mid;
    if ((b - a) <= 1e-15 * std::max(std::abs(a), std::abs(b))) break;
  }
  double x = 0.5 * (a + b);
  if (fprime) {
    for (int it = 0; it < 4; ++it) {
      double d = fprime(x);
      if (d == 0.0 || !std::isfinite(d)) break;
      double step = (f(x) - target) / d;
      double xn = x - step;
      if (xn <= a || xn >= b) break;
      x = xn;
      if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
  }
  return x;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(errc::range, "fit_line: need two equally sized samples of length >= 2");
  double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0.0) fail(errc::range, "fit_line: degenerate abscissae");
  LinearFit out;
  out.slope = (n * sxy - sx * sy) / det;
  out.intercept = (sy - out.slope * sx) / n;
  return out;
}

}  // namespace osclab
