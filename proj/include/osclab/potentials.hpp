#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "osclab/dd.hpp"

namespace osclab {

// Oscillator phase  phi(x) = phi0(x) + phi1(x)  with a smooth part
//   phi0(x) = pi*omega*x^beta + sum_i c_i x^{e_i}
// and a rough component realized as the parametric family
//   phi1(x) = zeta * x^(1-gamma) / (1-gamma)      (gamma in (0,1))
//           = zeta * log(x)                        (gamma = 1)
// whose increments are Theta(n^-gamma).
struct PhaseSpec {
  double omega = 1.0;
  double beta = 1.5;
  std::vector<std::pair<double, double>> lower_order;  // (coefficient, exponent)
  double zeta = 0.0;
  double gamma = 1.0;
};

// phi(x)/pi accumulated in double-double; modulo-2 reduction of this value is
// exact because 2 is representable, which is what keeps cos(phi) accurate for
// phases up to ~2^60.
dd phase_over_pi(const PhaseSpec& ph, double x, bool include_rough);
dd dphase_over_pi(const PhaseSpec& ph, double x);

// plain-double derivatives of the smooth part (orders 1..4)
double phase_smooth_deriv(const PhaseSpec& ph, double x, int order);
// derivatives of the rough component (orders 1..3); order 0 is its value
double phase_rough_deriv(const PhaseSpec& ph, double x, int order);

// k-th derivative of the phase; order 0 additionally includes phi1 and honors
// the reduction flag (result in (-pi, pi] when set)
double phase_value(const PhaseSpec& ph, double x, int deriv,
                   bool reduce_mod_2pi = false);

// cos(phi(x)).  reduce=true goes through the split mod-2 reduction; reduce=false
// applies libm's own argument reduction to the unreduced compensated pair.
// The two agree to ~1e-10 everywhere, which is the cross-check of the
// reduction path.
double cos_phase(const PhaseSpec& ph, double x, bool reduce = true);
// phase reduced into (-pi, pi]
double phase_angle(const PhaseSpec& ph, double x);

struct OscTerm {
  double lambda = 1.0;
  double alpha = 0.7;
  PhaseSpec phase;
};

// Summable background V0: explicit finite list plus closed form c*n^-p plus
// any oscillating terms with alpha > 1 that were folded in.
struct Tail {
  std::vector<double> values;  // values[i] = V0(i+1)
  bool has_power = false;
  double c = 0.0;
  double p = 2.0;
  std::vector<OscTerm> folded;

  double operator()(std::int64_t n) const;
  double abs_at(std::int64_t n) const;  // upper bound on |V0(n)|
  double l1_norm() const;
  bool empty() const { return values.empty() && !has_power && folded.empty(); }
};

struct PotentialSpec {
  std::vector<OscTerm> terms;  // sorted by alpha after validation
  Tail tail;
  double tail_l1_norm = 0.0;

  double alpha1() const;  // smallest alpha; +inf when there are no terms
};

enum class ValidationMode { validated, exploratory };

// Checks the admissibility conditions term by term and returns the normalized
// spec (terms sorted by alpha, alpha>1 terms folded into the tail,
// tail_l1_norm filled in).  Violations throw Error with the named code and the
// offending term index.
PotentialSpec validate_spec(PotentialSpec raw,
                            ValidationMode mode = ValidationMode::validated);

double eval_potential(const PotentialSpec& spec, std::int64_t n);
std::vector<double> tabulate_potential(const PotentialSpec& spec, std::int64_t N);

// canonical single-term potential lambda*cos(pi*omega*n^beta)/n^alpha
PotentialSpec canonical_spec(double lambda, double omega, double alpha, double beta,
                             ValidationMode mode = ValidationMode::validated);

// JSON serialization; key names are part of the interface:
//   terms[] {lambda, alpha, omega, beta, lower_order[], zeta, gamma}
//   tail {kind, values | c, p}
std::string spec_to_json(const PotentialSpec& spec);
PotentialSpec spec_from_json(const std::string& text, ValidationMode mode);
PotentialSpec load_spec(const std::string& path, ValidationMode mode);
void save_spec(const PotentialSpec& spec, const std::string& path);

}  // namespace osclab
