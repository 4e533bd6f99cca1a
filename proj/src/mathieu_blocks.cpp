#include "osclab/mathieu_blocks.hpp"

#include <algorithm>
#include <cmath>

#include "osclab/dd.hpp"
#include "osclab/errors.hpp"
#include "osclab/numerics.hpp"

namespace osclab {

const char* side_name(BlockSide s) {
  return s == BlockSide::minus ? "minus" : "plus";
}

DyadicBlocks dyadic_blocks(int k) {
  if (k < 2 || k > 61) fail(errc::domain, "dyadic blocks need 2 <= k <= 61");
  DyadicBlocks b;
  b.k = k;
  std::int64_t p = std::int64_t(1) << k;
  b.lam0 = {p, 2 * p};
  b.lam_minus = {p / 2, p - 1};
  b.lam_plus = {2 * p + 1, 2 * p + p / 4};
  return b;
}

namespace {

IntInterval side_block(const DyadicBlocks& b, BlockSide side) {
  return side == BlockSide::minus ? b.lam_minus : b.lam_plus;
}

double omega_m(double omega, double beta, double m) {
  return omega * beta * std::pow(m, beta - 1.0);
}

double circle_dist(double x) {
  double d = std::abs(x - std::nearbyint(x));
  return d;
}

}  // namespace

ResonantCenter find_resonant_center(double omega, double beta, double omegaprime,
                                    int k, double delta, BlockSide side) {
  if (omega == 0.0) fail(errc::domain, "omega must be nonzero");
  if (!(beta > 1.0 && beta < 2.0)) fail(errc::domain, "need beta in (1, 2)");
  if (!(omegaprime >= 0.0 && omegaprime < 1.0))
    fail(errc::domain, "need omega' in [0, 1)");
  if (!(delta > 0.0 && delta < beta - 1.0))
    fail(errc::domain, "need delta in (0, beta - 1), got " + std::to_string(delta));

  DyadicBlocks blocks = dyadic_blocks(k);
  IntInterval block = side_block(blocks, side);

  ResonantCenter out;
  out.c = (block.lo + block.hi) / 2;
  double radius = std::exp2((2.0 - beta + delta) * double(k));
  std::int64_t H = radius >= 9.0e15 ? std::int64_t(9e15)
                                    : std::int64_t(std::ceil(radius));
  out.win_lo = std::max(out.c - H, block.lo);
  out.win_hi = std::min(out.c + H, block.hi);

  // the window must sweep at least one full period of omega_m, otherwise the
  // existence of a near-resonant m is not guaranteed
  double sweep = std::abs(omega_m(omega, beta, double(out.win_hi)) -
                          omega_m(omega, beta, double(out.win_lo)));
  if (sweep < 1.0)
    fail(errc::window_overflow,
         "search window sweeps only " + std::to_string(sweep) +
             " periods of omega_m; k too small for these parameters");

  double best = 2.0;
  std::int64_t best_m = out.win_lo;
  for (std::int64_t m = out.win_lo; m <= out.win_hi; ++m) {
    double d = circle_dist(omega_m(omega, beta, double(m)) - omegaprime);
    if (d < best) {
      best = d;
      best_m = m;
    }
  }
  out.mhat = best_m;
  out.dist = best;
  out.target = std::exp2(double(k - 1) * (beta - 2.0));
  out.ratio = out.dist / out.target;
  if (out.dist > 10.0 * out.target)
    fail(errc::no_resonance,
         "best circle distance " + std::to_string(out.dist) +
             " exceeds 10x the target scale " + std::to_string(out.target));
  return out;
}

ApproxInterval build_approx_interval(double lambda, double omega, double alpha,
                                     double beta, double omegaprime, int k,
                                     BlockSide side, double delta_override) {
  if (!(beta > 1.0 && beta < 2.0)) fail(errc::domain, "need beta in (1, 2)");
  if (!(alpha > 0.0 && alpha < 0.5 * (2.0 - beta)))
    fail(errc::domain, "need 0 < alpha < (2 - beta)/2 so that eps > 0; got alpha = " +
                           std::to_string(alpha));
  double eps = (2.0 - beta - 2.0 * alpha) / 6.0;
  double delta = delta_override > 0.0 ? delta_override : 0.5 * (beta - 1.0);
  if (!(std::max(2.0 - beta + delta, alpha + eps) < 1.0))
    fail(errc::domain, "need max(2 - beta + delta, alpha + eps) < 1");

  ResonantCenter rc = find_resonant_center(omega, beta, omegaprime, k, delta, side);

  ApproxInterval iv;
  iv.k = k;
  iv.side = side;
  iv.c = rc.c;
  iv.mhat = rc.mhat;
  iv.eps = eps;
  iv.delta = delta;
  iv.resonance_dist = rc.dist;
  iv.ell = ceil_guarded(std::exp2((alpha + eps) * double(k)));
  iv.lo = iv.mhat - iv.ell;
  iv.hi = iv.mhat + iv.ell;

  IntInterval block = side_block(dyadic_blocks(k), side);
  if (!block.contains(iv.lo, iv.hi))
    fail(errc::containment,
         "approximation interval [" + std::to_string(iv.lo) + ", " +
             std::to_string(iv.hi) + "] leaves the side block");

  double md = double(iv.mhat);
  dd phi = dd_sub(dd_mul(dd_pow(md, beta), omega), two_prod(omegaprime, md));
  iv.phi = dd_mod(phi, 1.0);
  iv.omegaprime = omegaprime;
  iv.lamprime = lambda / (2.0 * std::pow(md, alpha));
  return iv;
}

ApproxError verify_approximation(ApproxInterval& iv, double lambda,
                                 double omega, double alpha, double beta) {
  ApproxError out;
  double worst = 0.0;
  for (std::int64_t n = iv.lo; n <= iv.hi; ++n) {
    double x = double(n);
    double u = dd_mod(dd_mul(dd_pow(x, beta), omega), 1.0);
    double v_exact = lambda * std::cos(two_pi_d * u) / std::pow(x, alpha);
    double w = dd_mod(dd_add(two_prod(iv.omegaprime, x), iv.phi), 1.0);
    double v_approx = 2.0 * iv.lamprime * std::cos(two_pi_d * w);
    worst = std::max(worst, std::abs(v_exact - v_approx));
  }
  out.linf = worst;
  out.target = std::exp2(-(alpha + 4.0 * iv.eps) * double(iv.k));
  out.ratio = out.linf / out.target;
  iv.linf = out.linf;
  iv.target = out.target;
  iv.ratio = out.ratio;
  return out;
}

}  // namespace osclab
