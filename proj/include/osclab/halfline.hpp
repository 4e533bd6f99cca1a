#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "osclab/potentials.hpp"

namespace osclab {

struct BoundaryCondition {
  double mu = 0.0;
  double psi1 = 1.0;
};

// Generalized eigensolution psi_0..psi_N at energy E = 2 cos k.  Entries are
// stored as mantissa * exp(scale) so that exponentially growing solutions do
// not overflow; unscaled solves keep scale == 0 and mant bit-exact.
struct EigenSolution {
  double k = 0.0;
  double energy = 0.0;
  double mu = 0.0;
  std::vector<double> mant;   // index n = 0..N
  std::vector<double> scale;  // log-scale per site

  std::int64_t N() const { return std::int64_t(mant.size()) - 1; }
  bool scaled() const { return scaled_; }
  double psi(std::int64_t n) const {
    return scaled_ ? mant[n] * std::exp(scale[n]) : mant[n];
  }
  double log_abs(std::int64_t n) const {
    return std::log(std::abs(mant[n])) + (scaled_ ? scale[n] : 0.0);
  }
  double scale_at(std::int64_t n) const { return scaled_ ? scale[n] : 0.0; }

  bool scaled_ = false;
};

// Forward three-term recursion psi_{n+1} = (E - V(n)) psi_n - psi_{n-1} with
// psi_0 = mu * psi_1.
EigenSolution solve_eigen_recursion(const PotentialSpec& spec,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N);
EigenSolution solve_eigen_recursion(std::span<const double> V,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N);
// same recursion from arbitrary seeds (psi_0, psi_1)
EigenSolution solve_from_seeds(std::span<const double> V, double psi0,
                               double psi1, double k, std::int64_t N);

// (H psi)_n for n = 1..M-1 given psi_1..psi_M (input indexed from 1, so
// psi[0] = psi_1).  The n = 1 entry is psi_2 + (V(1)+mu) psi_1.
std::vector<double> apply_hamiltonian(const PotentialSpec& spec, double mu,
                                      std::span<const double> psi);

void check_k_range(double k);

}  // namespace osclab
