#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>

namespace osclab {

inline constexpr double pi_d = 3.141592653589793;
inline constexpr double two_pi_d = 6.283185307179586;

// Compensated accumulator (Kahan-Babuska-Neumaier with an exact two_sum
// error term).  add() order determines the result bit-for-bit, so any
// parallel scheme must merge partials in a fixed order.
struct NeumaierSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    double z = t - s;
    c += (s - (t - z)) + (x - z);
    s = t;
  }
  void merge(const NeumaierSum& o) {
    add(o.s);
    add(o.c);
  }
  double value() const { return s + c; }
};

// wrap an angle into [-pi, pi)
double wrap_to_half_open_pi(double a);

// distance from x to the nearest integer
inline double dist_to_integers(double x) {
  return std::abs(x - std::nearbyint(x));
}

// ceil with a relative guard so that values a few ulp above an exact integer
// do not get bumped to the next one
std::int64_t ceil_guarded(double x);

// Solve f(x) = target for monotone f on [lo, hi]; bisection plus optional
// Newton polish.  Throws errc::range when the target is not bracketed.
double find_root_monotone(const std::function<double(double)>& f, double lo,
                          double hi, double target,
                          const std::function<double(double)>& fprime = nullptr);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace osclab
