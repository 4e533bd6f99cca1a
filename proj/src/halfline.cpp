#include "osclab/halfline.hpp"

#include <cmath>

#include "osclab/errors.hpp"
#include "osclab/numerics.hpp"

namespace osclab {

void check_k_range(double k) {
  if (!(k > 0.0 && k < pi_d))
    fail(errc::k_out_of_range,
         "quasi-momentum k must lie in (0, pi), got " + std::to_string(k));
}

namespace {

constexpr double kRescaleHi = 1e150;
constexpr double kRescaleLo = 1e-150;

EigenSolution run_recursion(std::span<const double> V, double psi0, double psi1,
                            double k, std::int64_t N) {
  check_k_range(k);
  if (N < 2) fail(errc::range, "recursion needs N >= 2");
  if (std::int64_t(V.size()) < N - 1)
    fail(errc::range, "potential table shorter than N-1 sites");

  EigenSolution sol;
  sol.k = k;
  sol.energy = 2.0 * std::cos(k);
  sol.mant.resize(std::size_t(N) + 1);
  sol.scale.resize(std::size_t(N) + 1, 0.0);

  double s = 0.0;  // shared log-scale of the current pair
  double pm = psi0, pc = psi1;
  sol.mant[0] = pm;
  sol.mant[1] = pc;
  for (std::int64_t n = 1; n < N; ++n) {
    double pn = (sol.energy - V[n - 1]) * pc - pm;
    pm = pc;
    pc = pn;
    double m = std::max(std::abs(pm), std::abs(pc));
    if (m > kRescaleHi || (m < kRescaleLo && m > 0.0)) {
      double sigma = std::log(m);
      double f = std::exp(-sigma);
      pm *= f;
      pc *= f;
      s += sigma;
      sol.scaled_ = true;
    }
    sol.mant[n + 1] = pc;
    sol.scale[n + 1] = s;
    // the retained neighbour must live on the same scale as site n+1
    sol.mant[n] = pm;
    sol.scale[n] = s;
  }
  return sol;
}

}  // namespace

EigenSolution solve_eigen_recursion(std::span<const double> V,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N) {
  EigenSolution sol = run_recursion(V, bc.mu * bc.psi1, bc.psi1, k, N);
  sol.mu = bc.mu;
  return sol;
}

EigenSolution solve_eigen_recursion(const PotentialSpec& spec,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N) {
  std::vector<double> V = tabulate_potential(spec, std::max<std::int64_t>(N - 1, 1));
  return solve_eigen_recursion(V, bc, k, N);
}

EigenSolution solve_from_seeds(std::span<const double> V, double psi0,
                               double psi1, double k, std::int64_t N) {
  return run_recursion(V, psi0, psi1, k, N);
}

std::vector<double> apply_hamiltonian(const PotentialSpec& spec, double mu,
                                      std::span<const double> psi) {
  if (psi.size() < 2)
    fail(errc::length, "apply_hamiltonian needs at least psi_1 and psi_2");
  std::size_t M = psi.size();
  std::vector<double> out(M - 1);
  out[0] = psi[1] + (eval_potential(spec, 1) + mu) * psi[0];
  for (std::size_t i = 1; i + 1 < M; ++i) {
    std::int64_t n = std::int64_t(i) + 1;
    out[i] = psi[i + 1] + psi[i - 1] + eval_potential(spec, n) * psi[i];
  }
  return out;
}

}  // namespace osclab
