#include "osclab/pruefer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osclab/errors.hpp"
#include "osclab/numerics.hpp"

namespace osclab {

PrueferState init_pruefer(const BoundaryCondition& bc, double k) {
  check_k_range(k);
  if (bc.psi1 == 0.0) fail(errc::domain, "psi_1 must be nonzero");
  double q = 1.0 + bc.mu * bc.mu - 2.0 * bc.mu * std::cos(k);
  if (!(q > 0.0))
    fail(errc::degenerate_boundary,
         "1 + mu^2 - 2 mu cos k vanished; boundary data degenerate");
  PrueferState st;
  st.n = 1;
  st.k = k;
  st.R = std::abs(bc.psi1) * std::sqrt(q);
  // angle of the defining components (psi_1 - cos(k) psi_0, sin(k) psi_0);
  // coincides with arccos(sgn(psi1)(1 - mu cos k)/sqrt(q)) when mu*psi1 >= 0
  double eta = std::atan2(bc.mu * bc.psi1 * std::sin(k),
                          bc.psi1 * (1.0 - bc.mu * std::cos(k)));
  st.eta = (eta == pi_d) ? -pi_d : eta;
  return st;
}

PrueferTrajectory pruefer_from_solution(const EigenSolution& sol) {
  PrueferTrajectory traj;
  traj.k = sol.k;
  traj.mu = sol.mu;
  std::int64_t N = sol.N();
  traj.logR.resize(std::size_t(N));
  traj.eta.resize(std::size_t(N));

  double ck = std::cos(sol.k), sk = std::sin(sol.k);
  double tau_prev = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    // bring the neighbouring sites onto a common scale
    double sc = std::max(sol.scale_at(n), sol.scale_at(n - 1));
    double pn = sol.mant[n] * std::exp(sol.scale_at(n) - sc);
    double pm = sol.mant[n - 1] * std::exp(sol.scale_at(n - 1) - sc);
    double c1 = pn - ck * pm;
    double c2 = sk * pm;
    double r = std::hypot(c1, c2);
    if (r == 0.0)
      fail(errc::zero_radius,
           "both Pruefer components vanished at n = " + std::to_string(n));
    traj.logR[n - 1] = sc + std::log(r);
    double tau = std::atan2(c2, c1);
    if (n == 1) {
      traj.eta[0] = (tau == pi_d) ? -pi_d : tau;
    } else {
      double inc = wrap_to_half_open_pi(tau - tau_prev - sol.k);
      traj.eta[n - 1] = traj.eta[n - 2] + inc;
    }
    tau_prev = tau;
  }
  return traj;
}

PrueferTrajectory pruefer_from_solution(const EigenSolution& sol,
                                        const PotentialSpec& spec) {
  PrueferTrajectory traj = pruefer_from_solution(sol);
  double sk = std::sin(sol.k);
  traj.nu.resize(traj.logR.size());
  for (std::size_t i = 0; i < traj.nu.size(); ++i)
    traj.nu[i] = -eval_potential(spec, std::int64_t(i) + 1) / sk;
  return traj;
}

StepDelta step_exact_delta(double theta, double nu) {
  double w = std::sin(theta);
  double u = std::cos(theta);
  double g2m1 = nu * (2.0 * u * w + nu * w * w);  // R(n+1)^2/R(n)^2 - 1
  if (g2m1 <= -1.0)
    fail(errc::zero_radius, "Pruefer radius collapsed within one step");
  StepDelta d;
  d.dlogR = 0.5 * std::log1p(g2m1);
  d.deta = std::atan2(-nu * w * w, 1.0 + nu * u * w);
  if (d.deta == pi_d) d.deta = -pi_d;
  return d;
}

PrueferState step_exact(const PrueferState& state, double nu) {
  StepDelta d = step_exact_delta(state.theta(), nu);
  PrueferState next = state;
  next.n = state.n + 1;
  next.R = state.R * std::exp(d.dlogR);
  next.eta = state.eta + d.deta;
  return next;
}

StepDelta step_asymptotic(const PrueferState& state, double nu) {
  if (!(std::abs(nu) < 0.5))
    fail(errc::nu_too_large,
         "asymptotic update needs |nu| < 1/2, got " + std::to_string(nu));
  double th = state.theta();
  StepDelta d;
  d.dlogR = 0.5 * nu * std::sin(2.0 * th);
  d.deta = -0.5 * nu + 0.5 * nu * std::cos(2.0 * th);
  return d;
}

double step_cotangent_eta(double theta, double k, std::int64_t n, double eta,
                          double nu) {
  double s = std::sin(theta);
  if (std::abs(s) < 1e-8)
    fail(errc::domain, "cotangent update invalid near sin(theta) = 0");
  double cot_next = std::cos(theta) / s + nu;
  // tau = eta(n+1) + k n, recovered on the branch nearest the old angle
  double tau_next = std::atan2(1.0, cot_next);  // principal in (0, pi)
  double inc = wrap_to_half_open_pi(tau_next - theta);
  // atan2(1, cot) only fixes tau mod pi; test both representatives
  double inc_alt = wrap_to_half_open_pi(tau_next + pi_d - theta);
  StepDelta ref = step_exact_delta(theta, nu);
  if (std::abs(inc_alt - ref.deta) < std::abs(inc - ref.deta)) inc = inc_alt;
  return eta + inc;
}

IteratedResidual iterated_residual(const PrueferTrajectory& traj,
                                   const PotentialSpec& spec, std::int64_t N1,
                                   std::int64_t N2, double C) {
  if (!(1 <= N1 && N1 < N2 && N2 + 1 <= traj.N()))
    fail(errc::range, "need 1 <= N1 < N2 <= N-1 within the trajectory");
  IteratedResidual out;
  out.lhs = traj.logR[std::size_t(N2)] - traj.logR[std::size_t(N1 - 1)];

  double sk = std::sin(traj.k);
  NeumaierSum main, err;
  double a1 = spec.alpha1();
  for (std::int64_t n = N1; n <= N2; ++n) {
    double x = double(n);
    double s2t = std::sin(2.0 * traj.theta(n));
    for (const auto& t : spec.terms)
      main.add(t.lambda * cos_phase(t.phase, x) * s2t /
               (2.0 * sk * std::pow(x, t.alpha)));
    double e = std::abs(spec.tail(n));
    if (!spec.terms.empty()) e += std::pow(x, -2.0 * a1);
    err.add(e);
  }
  out.mainsum = -main.value();
  out.errsum = err.value();
  out.errbound = C * out.errsum;
  return out;
}

double eta_continuity_constant(const PrueferTrajectory& traj,
                               const PotentialSpec& spec) {
  double a1 = spec.alpha1();
  double worst = 0.0;
  for (std::int64_t n = 1; n + 1 <= traj.N(); ++n) {
    double num = std::abs(traj.eta[std::size_t(n)] - traj.eta[std::size_t(n - 1)]);
    double den = std::abs(spec.tail(n));
    if (!spec.terms.empty()) den += std::pow(double(n), -a1);
    if (den == 0.0) {
      if (num != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, num / den);
  }
  return worst;
}

}  // namespace osclab
