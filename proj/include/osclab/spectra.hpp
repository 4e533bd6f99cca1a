#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "osclab/pruefer.hpp"

namespace osclab {

struct OscWindow {
  std::int64_t lo = 0, hi = 0;  // window [lo, hi] = [M, 2M] clipped to N
  double osc = 0.0;             // max - min of log R over the window
  double logR_hi = 0.0;         // log R at the window end
};

struct TrajectorySummary {
  double k = 0.0, mu = 0.0;
  std::int64_t N = 0;
  double logR_final = 0.0;
  double eta_final = 0.0;
  double eta_drift = 0.0;  // eta(N) - eta(1)
  std::vector<OscWindow> windows;
};

// Exact Pruefer evolution to site N in log space, recording the dyadic
// oscillation of log R on every complete window [2^j, 2^{j+1}].
TrajectorySummary evolve_log_radius(const PotentialSpec& spec,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N, double k_min = 0.05);
TrajectorySummary evolve_log_radius(std::span<const double> V,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N, double k_min = 0.05);

// Stored trajectory from step_exact chaining (logR, eta, nu filled).
PrueferTrajectory make_trajectory(const PotentialSpec& spec,
                                  const BoundaryCondition& bc, double k,
                                  std::int64_t N, double k_min = 0.05);
PrueferTrajectory make_trajectory(std::span<const double> V,
                                  const BoundaryCondition& bc, double k,
                                  std::int64_t N, double k_min = 0.05);

// Per-term oscillatory sums over [N1, N2]:
//   s_plus  = sum e^{i(phi0_j(n) + 2kn + phi1_j(n) + 2 eta(n))} / n^alpha_j
//   s_minus = sum e^{i(phi0_j(n) - 2kn + phi1_j(n) - 2 eta(n))} / n^alpha_j
// reconstructed = (Im s_plus - Im s_minus)/2, which must match the direct
// trigonometric sum of cos(phi_j(n)) sin(2 theta(n)) / n^alpha_j.
struct TermDecomposition {
  std::complex<double> s_plus{0.0, 0.0};
  std::complex<double> s_minus{0.0, 0.0};
  double reconstructed = 0.0;
  double direct = 0.0;
  double h_delta_l1 = 0.0;     // l1 norm of the increments of phi1 + 2 eta
  double h_increment_C = 0.0;  // fitted constant of the increment bound
};

std::vector<TermDecomposition> oscillatory_decomposition(
    const PrueferTrajectory& traj, const PotentialSpec& spec, std::int64_t N1,
    std::int64_t N2);

// Ratio of truncated l2 norms over [1, L] of the mu = 0 solution and the
// orthogonal seed (psi_0, psi_1) = (1, 0).
double subordinacy_ratio(const PotentialSpec& spec, double k, std::int64_t L);
std::vector<std::pair<std::int64_t, double>> subordinacy_ratio_dyadic(
    const PotentialSpec& spec, double k, std::int64_t L);
std::vector<std::pair<std::int64_t, double>> subordinacy_ratio_dyadic(
    std::span<const double> V, double k, std::int64_t L);

enum class Regime { ac_consistent, growing, inconclusive };
const char* regime_name(Regime r);

struct ClassifyThresholds {
  double osc_decay_factor = 0.9;   // geometric-mean decay per dyadic window
  double osc_tolerance = 1.1;      // single-window backslide allowance
  double growth_per_window = 0.1;  // mean log R gain per window
  int min_windows = 4;
  std::int64_t first_window = 1024;
};

struct RegimeLabel {
  Regime label = Regime::inconclusive;
  double slope = 0.0;      // mean log R change per dyadic window
  double osc_first = 0.0;  // oscillation of the first examined window
  double osc_last = 0.0;
  int windows = 0;
};

RegimeLabel classify_trajectory(const TrajectorySummary& summary,
                                const ClassifyThresholds& th = {});
RegimeLabel classify_point(double alpha, double beta, double lambda,
                           double omega, double k, double mu, std::int64_t N,
                           const ClassifyThresholds& th = {});

struct SweepConfig {
  std::vector<double> alpha{0.7};
  std::vector<double> beta{1.2};
  std::vector<double> lambda{1.0};
  std::vector<double> omega{1.0};
  std::vector<double> k{1.0};
  std::vector<double> mu{0.0};
  std::int64_t N = 100000;
  ClassifyThresholds thresholds;
  int jobs = 0;
};

struct SweepRow {
  double alpha = 0.0, beta = 0.0, lambda = 0.0, omega = 0.0, k = 0.0, mu = 0.0;
  std::int64_t N = 0;
  std::string label;
  double slope = 0.0;
  double osc_last = 0.0;
  double subord_ratio = 0.0;
  std::string error;  // empty on success
};

// Grid nodes in lexicographic order (alpha, beta, lambda, omega, k, mu);
// per-node errors land in the row, never abort the sweep.
std::vector<SweepRow> sweep(const SweepConfig& config);

}  // namespace osclab
