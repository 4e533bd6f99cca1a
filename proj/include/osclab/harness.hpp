#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace osclab {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::string subcommand;
  std::string spec_path;
  std::string out_path;
  std::string config_path;
  std::string mode = "validated";
  int jobs = 0;

  // trajectory options
  double k = 1.0;
  double mu = 0.0;
  double psi1 = 1.0;
  std::int64_t N = 100000;
  std::int64_t stride = 1;

  // oscillatory-sum options
  double omega = 1.0;
  double beta = 1.5;
  double rho = 0.0;
  double gamma = 1.0;
  double eps = 0.1;
  double zeta = 0.0;
  std::int64_t lmin = 1;
  std::int64_t lmax = 10;
  std::int64_t blocks = 0;  // 0 = every l; otherwise geometric sample count

  // block-approximation options
  double lambda = 1.0;
  double alpha = 0.2;
  double omegaprime = 0.0;
  double delta = -1.0;  // <= 0 means the default (beta-1)/2
  int kmin = 16;
  int kmax = 26;

  // classify options
  double cls_alpha = 0.7, cls_beta = 1.2;
};

// Execute one subcommand: writes the CSV, a manifest sidecar (<out>.manifest)
// and, for evolve, a JSON summary.  Returns the process exit status:
// 0 ok, 1 validation failure, 2 numeric failure.
int run(const RunConfig& config);

// Full command line entry point (argv without the program name).
int run_cli(const std::vector<std::string>& args);

}  // namespace osclab
