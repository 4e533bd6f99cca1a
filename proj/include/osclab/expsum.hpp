#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "osclab/potentials.hpp"

namespace osclab {

// Resonance site Y_l: the unique solution of phi'(Y_l) = sgn(omega) 2 pi l.
// Only the smooth fields of PhaseSpec enter here and in the sums below; any
// rough component is carried by the Perturbation argument.
struct ResonancePoint {
  std::int64_t l = 0;
  double Y = 0.0;
};

// (2l / (beta |omega|))^(1/(beta-1)); exact for the pure power phase
double resonance_closed_form(const PhaseSpec& ph, std::int64_t l);
double resonance_point(const PhaseSpec& ph, std::int64_t l);
std::vector<ResonancePoint> resonance_points(const PhaseSpec& ph,
                                             std::int64_t l_min,
                                             std::int64_t l_max);

// Phase perturbation h: absent, the parametric family
// zeta*x^(1-gamma)/(1-gamma), or a recorded sequence (e.g. 2*eta from a
// Pruefer trajectory).
struct Perturbation {
  enum class Kind { none, parametric, sampled };
  Kind kind = Kind::none;
  double zeta = 0.0;
  double gamma = 1.0;
  std::int64_t n0 = 1;
  std::vector<double> samples;  // h(n) = samples[n - n0]

  static Perturbation none() { return {}; }
  static Perturbation parametric(double zeta, double gamma);
  static Perturbation sampled(std::int64_t n0, std::vector<double> values);

  bool smooth() const { return kind != Kind::sampled; }
  double value(std::int64_t n) const;
  double increment(std::int64_t n) const;      // h(n+1) - h(n)
  double delta_l1(double a, double b) const;   // sum of |increments| inside (a, b]
  double deriv(double x, int order) const;     // smooth kinds, orders 1..3
};

struct ExpSumOptions {
  bool reverse = false;  // accumulate in reversed order (serial)
  int jobs = 0;          // 0 = default_jobs()
};

struct ExpSumResult {
  std::complex<double> value{0.0, 0.0};
  double abs = 0.0;
  double trivial_bound = 0.0;    // sum of n^-rho over the range
  double predicted_bound = 0.0;  // trivial bound unless a bound op fills it
  double ratio = 0.0;
  double a = 0.0, b = 0.0, rho = 0.0;
  std::int64_t terms = 0;
};

// sum_{a < n <= b} e^{i(phi(n) + h(n))} / n^rho with compensated accumulation.
// Deterministic for any jobs value; integers up to 2^53 only.
ExpSumResult direct_exp_sum(const PhaseSpec& ph, const Perturbation& h,
                            double rho, double a, double b,
                            const ExpSumOptions& opts = {});

struct KuzminLandauResult {
  double kappa = 0.0;
  double abs_sum = 0.0;
  double ratio = 0.0;  // abs_sum * kappa
};

// |sum_{a<n<=b} e^{2 pi i f(n)}| against 1/kappa, with kappa the distance of
// f' to the integers over [a, b]; f' must be monotone there.
KuzminLandauResult kuzmin_landau_check(const std::function<double(double)>& f,
                                       const std::function<double(double)>& fprime,
                                       double a, double b);

struct LemmaBound {
  double abs_sum = 0.0;
  double bound = 0.0;
  double dist = 0.0;
};

// bound = l^((2-beta)/(beta-1)) / dist({Y_l, Y_{l+1}}, [a, b])
LemmaBound lemma_bound_pure(const PhaseSpec& ph, std::int64_t l, double a,
                            double b);
// bound = (1 + ||delta h||_l1) * l^((2-beta-rho)/(beta-1)) / dist
LemmaBound lemma_bound_decay(const PhaseSpec& ph, const Perturbation& h,
                             double rho, std::int64_t l, double a, double b);

struct PartitionSpec {
  double beta = 0.0;
  double eps = 0.0;
  std::int64_t K = 0;
  std::vector<double> sigma;  // sigma_1 .. sigma_K
};

struct Partition {
  PartitionSpec spec;
  double Y_lo = 0.0, Y_hi = 0.0;
  std::vector<std::pair<double, double>> intervals;  // half-open (lo, hi]
};

// Distance-graded subintervals of (Y_l, Y_{l+1}]: sigma_1 = (2-beta)/(2(beta-1)),
// uniform sigma increments (2-beta)/(2K(beta-1)) <= eps with minimal K, both
// halves mirrored about the midpoint.
Partition build_partition(const PhaseSpec& ph, double eps, std::int64_t l);

// (1 + v_l1 + l^((2-beta-2gamma)/(2(beta-1)) + eps)) * l^((2-beta-2rho)/(2(beta-1)))
double theorem_bound(const PhaseSpec& ph, double rho, double gamma, double v_l1,
                     double eps, std::int64_t l);

struct BlockRow {
  std::int64_t l = 0;
  double Y_l = 0.0, Y_l1 = 0.0;
  double abs_sum = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

// full-block sum over (Y_l, Y_{l+1}] with the theorem bound attached
BlockRow block_sum(const PhaseSpec& ph, const Perturbation& h, double rho,
                   double gamma, double eps, std::int64_t l, int jobs = 0);

}  // namespace osclab
