#include "osclab/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "osclab/errors.hpp"
#include "osclab/expsum.hpp"
#include "osclab/numerics.hpp"
#include "osclab/parallel.hpp"

namespace osclab {

namespace {

void check_k_band(double k, double k_min) {
  check_k_range(k);
  if (!(k >= k_min && k <= pi_d - k_min))
    fail(errc::k_out_of_range,
         "k must stay in the band [k_min, pi - k_min] with k_min = " +
             std::to_string(k_min));
}

int ilog2(std::int64_t n) {
  int j = 0;
  while ((std::int64_t(1) << (j + 1)) <= n) ++j;
  return j;
}

template <class OnSite>
void run_pruefer(std::span<const double> V, const BoundaryCondition& bc,
                 double k, std::int64_t N, OnSite&& on_site) {
  if (N < 1) fail(errc::range, "need N >= 1");
  if (std::int64_t(V.size()) < N - 1)
    fail(errc::range, "potential table shorter than N-1 sites");
  PrueferState st = init_pruefer(bc, k);
  double logR = std::log(st.R);
  double eta = st.eta;
  double sk = std::sin(k);
  on_site(std::int64_t(1), logR, eta);
  for (std::int64_t n = 1; n < N; ++n) {
    double nu = -V[std::size_t(n - 1)] / sk;
    StepDelta d = step_exact_delta(eta + k * double(n), nu);
    logR += d.dlogR;
    eta += d.deta;
    on_site(n + 1, logR, eta);
  }
}

}  // namespace

TrajectorySummary evolve_log_radius(std::span<const double> V,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N, double k_min) {
  check_k_band(k, k_min);
  TrajectorySummary out;
  out.k = k;
  out.mu = bc.mu;
  out.N = N;

  constexpr int kLevels = 62;
  std::array<double, kLevels> wmin, wmax, wend;
  wmin.fill(std::numeric_limits<double>::infinity());
  wmax.fill(-std::numeric_limits<double>::infinity());
  wend.fill(0.0);
  double eta1 = 0.0;

  run_pruefer(V, bc, k, N, [&](std::int64_t n, double logR, double eta) {
    if (n == 1) eta1 = eta;
    int j = ilog2(n);
    wmin[j] = std::min(wmin[j], logR);
    wmax[j] = std::max(wmax[j], logR);
    if (j >= 1 && (n & (n - 1)) == 0) {  // n = 2^j also closes window j-1
      wmin[j - 1] = std::min(wmin[j - 1], logR);
      wmax[j - 1] = std::max(wmax[j - 1], logR);
      wend[j - 1] = logR;
    }
    if (n == N) {
      out.logR_final = logR;
      out.eta_final = eta;
      out.eta_drift = eta - eta1;
    }
  });

  for (int j = 0; j < kLevels - 1; ++j) {
    std::int64_t lo = std::int64_t(1) << j;
    std::int64_t hi = lo * 2;
    if (hi > N) break;
    out.windows.push_back({lo, hi, wmax[j] - wmin[j], wend[j]});
  }
  return out;
}

TrajectorySummary evolve_log_radius(const PotentialSpec& spec,
                                    const BoundaryCondition& bc, double k,
                                    std::int64_t N, double k_min) {
  std::vector<double> V = tabulate_potential(spec, std::max<std::int64_t>(N - 1, 1));
  return evolve_log_radius(V, bc, k, N, k_min);
}

PrueferTrajectory make_trajectory(std::span<const double> V,
                                  const BoundaryCondition& bc, double k,
                                  std::int64_t N, double k_min) {
  check_k_band(k, k_min);
  PrueferTrajectory traj;
  traj.k = k;
  traj.mu = bc.mu;
  traj.logR.resize(std::size_t(N));
  traj.eta.resize(std::size_t(N));
  run_pruefer(V, bc, k, N, [&](std::int64_t n, double logR, double eta) {
    traj.logR[std::size_t(n - 1)] = logR;
    traj.eta[std::size_t(n - 1)] = eta;
  });
  std::int64_t n_nu = std::min<std::int64_t>(N, std::int64_t(V.size()));
  traj.nu.resize(std::size_t(n_nu));
  double sk = std::sin(k);
  for (std::int64_t i = 0; i < n_nu; ++i)
    traj.nu[std::size_t(i)] = -V[std::size_t(i)] / sk;
  return traj;
}

PrueferTrajectory make_trajectory(const PotentialSpec& spec,
                                  const BoundaryCondition& bc, double k,
                                  std::int64_t N, double k_min) {
  std::vector<double> V = tabulate_potential(spec, N);
  return make_trajectory(V, bc, k, N, k_min);
}

std::vector<TermDecomposition> oscillatory_decomposition(
    const PrueferTrajectory& traj, const PotentialSpec& spec, std::int64_t N1,
    std::int64_t N2) {
  if (!(1 <= N1 && N1 <= N2 && N2 <= traj.N()))
    fail(errc::range, "decomposition needs 1 <= N1 <= N2 <= trajectory length");

  std::vector<TermDecomposition> out;
  std::int64_t len = N2 - N1 + 1;
  for (const auto& term : spec.terms) {
    TermDecomposition td;

    // h(n) = phi1_j(n) +- 2 eta(n), sampled from the trajectory
    std::vector<double> h_plus(std::size_t(len)), h_minus(std::size_t(len));
    Perturbation rough = term.phase.zeta != 0.0
                             ? Perturbation::parametric(term.phase.zeta,
                                                        term.phase.gamma)
                             : Perturbation::none();
    for (std::int64_t n = N1; n <= N2; ++n) {
      double p1 = rough.kind == Perturbation::Kind::none ? 0.0 : rough.value(n);
      double e = traj.eta[std::size_t(n - 1)];
      h_plus[std::size_t(n - N1)] = p1 + 2.0 * e;
      h_minus[std::size_t(n - N1)] = p1 - 2.0 * e;
    }

    PhaseSpec smooth_plus = term.phase;
    smooth_plus.zeta = 0.0;
    smooth_plus.lower_order.emplace_back(2.0 * traj.k, 1.0);
    PhaseSpec smooth_minus = term.phase;
    smooth_minus.zeta = 0.0;
    smooth_minus.lower_order.emplace_back(-2.0 * traj.k, 1.0);

    double a = double(N1) - 0.5, b = double(N2) + 0.5;
    td.s_plus = direct_exp_sum(smooth_plus, Perturbation::sampled(N1, h_plus),
                               term.alpha, a, b)
                    .value;
    td.s_minus = direct_exp_sum(smooth_minus, Perturbation::sampled(N1, h_minus),
                                term.alpha, a, b)
                     .value;
    td.reconstructed = 0.5 * (td.s_plus.imag() - td.s_minus.imag());

    NeumaierSum direct;
    for (std::int64_t n = N1; n <= N2; ++n) {
      double x = double(n);
      direct.add(cos_phase(term.phase, x) * std::sin(2.0 * traj.theta(n)) /
                 std::pow(x, term.alpha));
    }
    td.direct = direct.value();

    // increment statistics of h = phi1 + 2 eta against n^-min(gamma, alpha1)
    double a1 = spec.alpha1();
    double gmin = term.phase.zeta != 0.0 ? std::min(term.phase.gamma, a1) : a1;
    double worst = 0.0;
    NeumaierSum dh;
    for (std::int64_t n = N1; n < N2; ++n) {
      double inc = std::abs(h_plus[std::size_t(n + 1 - N1)] -
                            h_plus[std::size_t(n - N1)]);
      dh.add(inc);
      double den = std::pow(double(n), -gmin) + spec.tail.abs_at(n);
      if (den > 0.0) worst = std::max(worst, inc / den);
    }
    td.h_delta_l1 = dh.value();
    td.h_increment_C = worst;
    out.push_back(std::move(td));
  }
  return out;
}

std::vector<std::pair<std::int64_t, double>> subordinacy_ratio_dyadic(
    std::span<const double> V, double k, std::int64_t L) {
  if (L < 10) fail(errc::range, "subordinacy diagnostic needs L >= 10");
  check_k_range(k);
  EigenSolution a = solve_from_seeds(V, 0.0, 1.0, k, L);  // mu = 0
  EigenSolution b = solve_from_seeds(V, 1.0, 0.0, k, L);  // orthogonal seed

  std::vector<std::pair<std::int64_t, double>> out;
  double Sa = 0.0, sa_scale = 0.0, Sb = 0.0, sb_scale = 0.0;
  auto accumulate = [](double& S, double& scale, double mant, double lscale) {
    // add mant^2 e^{2(lscale - scale)}, rebasing when the site scale moved up
    if (lscale > scale) {
      S *= std::exp(2.0 * (scale - lscale));
      scale = lscale;
    }
    double t = mant * std::exp(lscale - scale);
    S += t * t;
  };
  for (std::int64_t n = 1; n <= L; ++n) {
    accumulate(Sa, sa_scale, a.mant[std::size_t(n)], a.scale_at(n));
    accumulate(Sb, sb_scale, b.mant[std::size_t(n)], b.scale_at(n));
    bool dyadic = (n & (n - 1)) == 0 && n >= 8;
    if (dyadic || n == L) {
      double log_ratio =
          0.5 * (std::log(Sa) - std::log(Sb)) + (sa_scale - sb_scale);
      out.emplace_back(n, std::exp(log_ratio));
    }
  }
  return out;
}

std::vector<std::pair<std::int64_t, double>> subordinacy_ratio_dyadic(
    const PotentialSpec& spec, double k, std::int64_t L) {
  std::vector<double> V = tabulate_potential(spec, std::max<std::int64_t>(L - 1, 1));
  return subordinacy_ratio_dyadic(V, k, L);
}

double subordinacy_ratio(const PotentialSpec& spec, double k, std::int64_t L) {
  auto pts = subordinacy_ratio_dyadic(spec, k, L);
  return pts.back().second;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::ac_consistent: return "AC_CONSISTENT";
    case Regime::growing: return "GROWING";
    case Regime::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

RegimeLabel classify_trajectory(const TrajectorySummary& summary,
                                const ClassifyThresholds& th) {
  RegimeLabel out;
  std::vector<const OscWindow*> wins;
  for (const auto& w : summary.windows)
    if (w.lo >= th.first_window) wins.push_back(&w);
  out.windows = int(wins.size());
  if (int(wins.size()) < th.min_windows) return out;

  out.osc_first = wins.front()->osc;
  out.osc_last = wins.back()->osc;
  out.slope = (wins.back()->logR_hi - wins.front()->logR_hi) /
              double(wins.size() - 1);

  bool osc_grew = out.osc_last >= out.osc_first;
  if (out.slope >= th.growth_per_window && osc_grew) {
    out.label = Regime::growing;
    return out;
  }

  // decaying oscillations: no single window may backslide beyond the
  // tolerance, and the geometric mean decay must clear the factor
  bool monotone_ok = true;
  for (std::size_t i = 1; i < wins.size(); ++i) {
    if (wins[i]->osc == 0.0) continue;
    if (wins[i - 1]->osc == 0.0 ||
        wins[i]->osc > th.osc_tolerance * wins[i - 1]->osc) {
      monotone_ok = false;
      break;
    }
  }
  bool zero_osc = out.osc_first == 0.0 && out.osc_last == 0.0;
  double geo = zero_osc ? 0.0
                        : (out.osc_first > 0.0
                               ? std::pow(out.osc_last / out.osc_first,
                                          1.0 / double(wins.size() - 1))
                               : 1.0);
  if (zero_osc || (monotone_ok && geo <= th.osc_decay_factor))
    out.label = Regime::ac_consistent;
  return out;
}

RegimeLabel classify_point(double alpha, double beta, double lambda,
                           double omega, double k, double mu, std::int64_t N,
                           const ClassifyThresholds& th) {
  PotentialSpec spec =
      canonical_spec(lambda, omega, alpha, beta, ValidationMode::exploratory);
  BoundaryCondition bc{mu, 1.0};
  TrajectorySummary summary = evolve_log_radius(spec, bc, k, N);
  return classify_trajectory(summary, th);
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  struct Node {
    double alpha, beta, lambda, omega, k, mu;
  };
  std::vector<Node> nodes;
  for (double a : config.alpha)
    for (double b : config.beta)
      for (double l : config.lambda)
        for (double o : config.omega)
          for (double kk : config.k)
            for (double m : config.mu)
              nodes.push_back({a, b, l, o, kk, m});

  std::vector<SweepRow> rows(nodes.size());
  parallel_for(std::int64_t(nodes.size()), config.jobs, [&](std::int64_t i) {
    const Node& nd = nodes[std::size_t(i)];
    SweepRow& row = rows[std::size_t(i)];
    row.alpha = nd.alpha;
    row.beta = nd.beta;
    row.lambda = nd.lambda;
    row.omega = nd.omega;
    row.k = nd.k;
    row.mu = nd.mu;
    row.N = config.N;
    try {
      RegimeLabel lbl = classify_point(nd.alpha, nd.beta, nd.lambda, nd.omega,
                                       nd.k, nd.mu, config.N, config.thresholds);
      row.label = regime_name(lbl.label);
      row.slope = lbl.slope;
      row.osc_last = lbl.osc_last;
      PotentialSpec spec = canonical_spec(nd.lambda, nd.omega, nd.alpha,
                                          nd.beta, ValidationMode::exploratory);
      row.subord_ratio = subordinacy_ratio(spec, nd.k, config.N);
    } catch (const Error& e) {
      row.error = e.code_name();
      row.label = "ERROR";
    } catch (const std::exception& e) {
      row.error = e.what();
      row.label = "ERROR";
    }
  });
  return rows;
}

}  // namespace osclab
