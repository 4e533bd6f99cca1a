#pragma once

#include <cstdint>
#include <string>

namespace osclab {

// Dyadic blocks at scale k (integer intervals, endpoints inclusive):
//   Lambda_k^0 = [2^k, 2^{k+1}]
//   Lambda_k^- = [2^{k-1}, 2^k - 1]
//   Lambda_k^+ = [2^{k+1} + 1, 2^{k+1} + 2^{k-1}]
// On short subintervals of the side blocks the potential
// lambda*cos(2*pi*omega*n^beta)/n^alpha is L-infinity close to an almost
// Mathieu potential 2*lambda' cos(2*pi*(phi + omega'*n)).
struct IntInterval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t count() const { return hi - lo + 1; }
  bool contains(std::int64_t lo2, std::int64_t hi2) const {
    return lo <= lo2 && hi2 <= hi;
  }
};

struct DyadicBlocks {
  int k = 0;
  IntInterval lam_minus, lam0, lam_plus;
};

DyadicBlocks dyadic_blocks(int k);  // k >= 2

enum class BlockSide { minus, plus };
const char* side_name(BlockSide s);

struct ResonantCenter {
  std::int64_t c = 0;      // block centre
  std::int64_t mhat = 0;   // minimizer of the circle distance
  double dist = 0.0;       // ((omega_mhat - omega') mod 1) as circle distance
  double target = 0.0;     // 2^{(k-1)(beta-2)}
  double ratio = 0.0;      // dist / target
  std::int64_t win_lo = 0, win_hi = 0;
};

// Scan m in [c - 2^{(2-beta+delta)k}, c + 2^{(2-beta+delta)k}] (intersected
// with the block) for omega_m = omega*beta*m^{beta-1} closest to omega' on the
// circle.  WINDOW_OVERFLOW fires when the clamped window cannot sweep one full
// period of omega_m; NO_RESONANCE when the best distance exceeds 10x target.
ResonantCenter find_resonant_center(double omega, double beta, double omegaprime,
                                    int k, double delta,
                                    BlockSide side = BlockSide::minus);

struct ApproxInterval {
  int k = 0;
  BlockSide side = BlockSide::minus;
  std::int64_t c = 0;
  std::int64_t mhat = 0;
  std::int64_t ell = 0;             // ceil(2^{(alpha+eps)k})
  std::int64_t lo = 0, hi = 0;      // I = [mhat - ell, mhat + ell]
  double phi = 0.0;                 // frac(omega*mhat^beta - omega'*mhat)
  double omegaprime = 0.0;
  double lamprime = 0.0;            // lambda / (2 mhat^alpha)
  double eps = 0.0;                 // (2 - beta - 2 alpha)/6
  double delta = 0.0;
  double resonance_dist = 0.0;
  double linf = 0.0, target = 0.0, ratio = 0.0;  // filled by verification
};

// Requires 0 < alpha < (2-beta)/2 and 1 < beta < 2 so that eps > 0, and
// max(2-beta+delta, alpha+eps) < 1.  delta defaults to (beta-1)/2.
ApproxInterval build_approx_interval(double lambda, double omega, double alpha,
                                     double beta, double omegaprime, int k,
                                     BlockSide side = BlockSide::minus,
                                     double delta_override = -1.0);

struct ApproxError {
  double linf = 0.0;
  double target = 0.0;  // 2^{-(alpha+4eps)k}
  double ratio = 0.0;
};

// max over n in I of |lambda cos(2 pi omega n^beta)/n^alpha
//                     - 2 lambda' cos(2 pi (phi + omega' n))|
ApproxError verify_approximation(ApproxInterval& iv, double lambda,
                                 double omega, double alpha, double beta);

}  // namespace osclab
