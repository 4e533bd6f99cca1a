#pragma once

#include <cstdint>
#include <vector>

#include "osclab/halfline.hpp"
#include "osclab/potentials.hpp"

namespace osclab {

// Modified Pruefer coordinates (R, eta) of a generalized eigensolution,
// defined through
//   R(n) cos(eta(n) + k(n-1)) = psi_n - cos(k) psi_{n-1}
//   R(n) sin(eta(n) + k(n-1)) = sin(k) psi_{n-1}
// with eta(1) and every increment eta(n+1)-eta(n) normalized into [-pi, pi).
struct PrueferState {
  std::int64_t n = 1;
  double R = 1.0;
  double eta = 0.0;
  double k = 1.0;

  // theta(n) = eta(n) + k n, recomputed from the stored fields
  double theta() const { return eta + k * double(n); }
};

struct PrueferTrajectory {
  double k = 0.0;
  double mu = 0.0;
  std::vector<double> logR;  // logR[i] = log R(i+1)
  std::vector<double> eta;   // eta[i]  = eta(i+1)
  std::vector<double> nu;    // nu[i]   = -V(i+1)/sin(k); may be empty

  std::int64_t N() const { return std::int64_t(logR.size()); }
  double theta(std::int64_t n) const { return eta[n - 1] + k * double(n); }
  double R(std::int64_t n) const { return std::exp(logR[n - 1]); }
};

// R(1), eta(1) from the boundary condition psi_0 = mu psi_1.
PrueferState init_pruefer(const BoundaryCondition& bc, double k);

// Pruefer coordinates read off an eigensolution; the overload with a spec also
// fills the nu sequence.
PrueferTrajectory pruefer_from_solution(const EigenSolution& sol);
PrueferTrajectory pruefer_from_solution(const EigenSolution& sol,
                                        const PotentialSpec& spec);

struct StepDelta {
  double dlogR = 0.0;
  double deta = 0.0;
};

// One exact update step expressed through the underlying linear map, with the
// angle increment extracted by the two-argument arctangent; total in nu.
StepDelta step_exact_delta(double theta, double nu);
PrueferState step_exact(const PrueferState& state, double nu);

// Leading-order update with the O(nu^2) remainder dropped; |nu| < 1/2 enforced.
StepDelta step_asymptotic(const PrueferState& state, double nu);

// cot(eta(n+1)+kn) = cot(eta(n)+kn) + nu, usable away from sin(theta) = 0;
// kept as a cross-check of step_exact_delta.
double step_cotangent_eta(double theta, double k, std::int64_t n, double eta,
                          double nu);

struct IteratedResidual {
  double lhs = 0.0;      // log R(N2+1) - log R(N1)
  double mainsum = 0.0;  // leading oscillatory sum
  double errsum = 0.0;   // sum of n^-2alpha1 + |V0(n)| over [N1, N2]
  double errbound = 0.0; // C * errsum
};

IteratedResidual iterated_residual(const PrueferTrajectory& traj,
                                   const PotentialSpec& spec, std::int64_t N1,
                                   std::int64_t N2, double C = 1.0);

// Fitted constant for |eta(n+1)-eta(n)| <= C (n^-alpha1 + |V0(n)|).
double eta_continuity_constant(const PrueferTrajectory& traj,
                               const PotentialSpec& spec);

}  // namespace osclab
