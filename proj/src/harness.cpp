#include "osclab/harness.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "osclab/errors.hpp"
#include "osclab/expsum.hpp"
#include "osclab/io.hpp"
#include "osclab/mathieu_blocks.hpp"
#include "osclab/parallel.hpp"
#include "osclab/spectra.hpp"

namespace osclab {

namespace {

bool is_validation_error(errc c) {
  switch (c) {
    case errc::parse:
    case errc::bad_config:
    case errc::beta_out_of_range:
    case errc::alpha_out_of_range:
    case errc::gamma_too_small:
    case errc::gamma_out_of_range:
    case errc::omega_zero:
    case errc::lower_order_exponent:
    case errc::tail_not_summable:
    case errc::domain:
    case errc::k_out_of_range:
    case errc::length:
    case errc::range:
      return true;
    default:
      return false;
  }
}

ValidationMode mode_of(const RunConfig& c) {
  if (c.mode == "validated") return ValidationMode::validated;
  if (c.mode == "exploratory") return ValidationMode::exploratory;
  fail(errc::bad_config, "mode must be validated or exploratory");
}

int effective_jobs(const RunConfig& c) {
  return c.jobs > 0 ? c.jobs : default_jobs();
}

std::vector<std::int64_t> sample_l_values(std::int64_t lmin, std::int64_t lmax,
                                          std::int64_t count) {
  std::vector<std::int64_t> ls;
  if (count <= 0) {
    for (std::int64_t l = lmin; l <= lmax; ++l) ls.push_back(l);
    return ls;
  }
  if (count == 1 || lmin == lmax) return {lmin};
  double ratio = double(lmax) / double(lmin);
  for (std::int64_t i = 0; i < count; ++i) {
    double f = double(i) / double(count - 1);
    std::int64_t l = std::int64_t(std::llround(double(lmin) * std::pow(ratio, f)));
    if (ls.empty() || l > ls.back()) ls.push_back(l);
  }
  return ls;
}

void classify_rows_csv(const std::vector<SweepRow>& rows, std::string& csv) {
  csv += "alpha,beta,lambda,omega,k,mu,N,label,slope,osc_last,subord_ratio,error\n";
  for (const auto& r : rows) {
    csv += csv_num(r.alpha) + "," + csv_num(r.beta) + "," + csv_num(r.lambda) +
           "," + csv_num(r.omega) + "," + csv_num(r.k) + "," + csv_num(r.mu) +
           "," + std::to_string(r.N) + "," + r.label + "," + csv_num(r.slope) +
           "," + csv_num(r.osc_last) + "," + csv_num(r.subord_ratio) + "," +
           r.error + "\n";
  }
}

int run_evolve(const RunConfig& c, Manifest& man) {
  PotentialSpec spec = load_spec(c.spec_path, mode_of(c));
  BoundaryCondition bc{c.mu, c.psi1};
  PrueferTrajectory traj = make_trajectory(spec, bc, c.k, c.N);

  std::string csv = "n,R,logR,eta,theta,nu\n";
  for (std::int64_t n = 1; n <= c.N; n += c.stride) {
    std::size_t i = std::size_t(n - 1);
    double nu = i < traj.nu.size() ? traj.nu[i] : 0.0;
    csv += std::to_string(n) + "," + csv_num(std::exp(traj.logR[i])) + "," +
           csv_num(traj.logR[i]) + "," + csv_num(traj.eta[i]) + "," +
           csv_num(traj.theta(n)) + "," + csv_num(nu) + "\n";
  }
  write_text_file(c.out_path, csv);

  // dyadic oscillation summary sidecar
  nlohmann::json js;
  js["k"] = c.k;
  js["mu"] = c.mu;
  js["N"] = c.N;
  js["logR_final"] = traj.logR.back();
  js["eta_final"] = traj.eta.back();
  js["osc_windows"] = nlohmann::json::array();
  for (std::int64_t lo = 1; 2 * lo <= c.N; lo *= 2) {
    double wmin = traj.logR[std::size_t(lo - 1)];
    double wmax = wmin;
    for (std::int64_t n = lo; n <= 2 * lo; ++n) {
      wmin = std::min(wmin, traj.logR[std::size_t(n - 1)]);
      wmax = std::max(wmax, traj.logR[std::size_t(n - 1)]);
    }
    js["osc_windows"].push_back(
        {{"lo", lo}, {"hi", 2 * lo}, {"osc", wmax - wmin}});
  }
  write_text_file(c.out_path + ".summary.json", js.dump(2));

  man.set("spec", c.spec_path);
  man.set("k", c.k);
  man.set("mu", c.mu);
  man.set("psi1", c.psi1);
  man.set("N", c.N);
  man.set("stride", c.stride);
  return 0;
}

int run_resonances(const RunConfig& c, Manifest& man) {
  PhaseSpec ph;
  ph.omega = c.omega;
  ph.beta = c.beta;
  auto pts = resonance_points(ph, c.lmin, c.lmax);
  std::string csv = "l,Y\n";
  for (const auto& p : pts)
    csv += std::to_string(p.l) + "," + csv_num(p.Y) + "\n";
  write_text_file(c.out_path, csv);
  man.set("omega", c.omega);
  man.set("beta", c.beta);
  man.set("lmin", c.lmin);
  man.set("lmax", c.lmax);
  return 0;
}

int run_expsum(const RunConfig& c, Manifest& man) {
  PhaseSpec ph;
  ph.omega = c.omega;
  ph.beta = c.beta;
  Perturbation h = c.zeta != 0.0 ? Perturbation::parametric(c.zeta, c.gamma)
                                 : Perturbation::none();
  std::vector<std::int64_t> ls = sample_l_values(c.lmin, c.lmax, c.blocks);

  std::string csv = "l,Y_l,Y_l1,abs_sum,bound,ratio,rho,gamma,beta,omega,eps\n";
  int jobs = effective_jobs(c);
  for (std::int64_t l : ls) {
    BlockRow row = block_sum(ph, h, c.rho, c.gamma, c.eps, l, jobs);
    csv += std::to_string(row.l) + "," + csv_num(row.Y_l) + "," +
           csv_num(row.Y_l1) + "," + csv_num(row.abs_sum) + "," +
           csv_num(row.bound) + "," + csv_num(row.ratio) + "," +
           csv_num(c.rho) + "," + csv_num(c.gamma) + "," + csv_num(c.beta) +
           "," + csv_num(c.omega) + "," + csv_num(c.eps) + "\n";
  }
  write_text_file(c.out_path, csv);
  man.set("omega", c.omega);
  man.set("beta", c.beta);
  man.set("rho", c.rho);
  man.set("gamma", c.gamma);
  man.set("eps", c.eps);
  man.set("zeta", c.zeta);
  man.set("lmin", c.lmin);
  man.set("lmax", c.lmax);
  man.set("blocks", c.blocks);
  return 0;
}

int run_kruger(const RunConfig& c, Manifest& man) {
  std::string csv = "k,side,mhat,ell,phi,lamprime,linf,target,ratio\n";
  int successes = 0;
  int smallest_passing = -1;
  for (int k = c.kmin; k <= c.kmax; ++k) {
    bool k_ok = true;
    for (BlockSide side : {BlockSide::minus, BlockSide::plus}) {
      try {
        ApproxInterval iv = build_approx_interval(
            c.lambda, c.omega, c.alpha, c.beta, c.omegaprime, k, side, c.delta);
        verify_approximation(iv, c.lambda, c.omega, c.alpha, c.beta);
        csv += std::to_string(k) + "," + side_name(side) + "," +
               std::to_string(iv.mhat) + "," + std::to_string(iv.ell) + "," +
               csv_num(iv.phi) + "," + csv_num(iv.lamprime) + "," +
               csv_num(iv.linf) + "," + csv_num(iv.target) + "," +
               csv_num(iv.ratio) + "\n";
        ++successes;
      } catch (const Error& e) {
        k_ok = false;
        man.set("failed_k" + std::to_string(k) + "_" + side_name(side),
                e.code_name());
      }
    }
    if (k_ok && smallest_passing < 0) smallest_passing = k;
  }
  write_text_file(c.out_path, csv);
  man.set("lambda", c.lambda);
  man.set("omega", c.omega);
  man.set("alpha", c.alpha);
  man.set("beta", c.beta);
  man.set("omegaprime", c.omegaprime);
  man.set("kmin", c.kmin);
  man.set("kmax", c.kmax);
  man.set("smallest_passing_k", smallest_passing);
  if (successes == 0)
    fail(errc::no_resonance, "no (k, side) pair produced a valid interval");
  return 0;
}

int run_classify(const RunConfig& c, Manifest& man) {
  SweepConfig sc;
  sc.alpha = {c.cls_alpha};
  sc.beta = {c.cls_beta};
  sc.lambda = {c.lambda};
  sc.omega = {c.omega};
  sc.k = {c.k};
  sc.mu = {c.mu};
  sc.N = c.N;
  sc.jobs = 1;
  auto rows = sweep(sc);
  std::string csv;
  classify_rows_csv(rows, csv);
  write_text_file(c.out_path, csv);
  man.set("alpha", c.cls_alpha);
  man.set("beta", c.cls_beta);
  man.set("lambda", c.lambda);
  man.set("omega", c.omega);
  man.set("k", c.k);
  man.set("mu", c.mu);
  man.set("N", c.N);
  man.set("osc_decay_factor", sc.thresholds.osc_decay_factor);
  man.set("growth_per_window", sc.thresholds.growth_per_window);
  if (!rows.empty() && !rows.front().error.empty()) return 2;
  return 0;
}

SweepConfig sweep_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::bad_config, std::string("bad sweep config: ") + e.what());
  }
  SweepConfig sc;
  try {
    auto grid = [&](const char* key, std::vector<double> fallback) {
      return j.contains(key) ? j[key].get<std::vector<double>>() : fallback;
    };
    sc.alpha = grid("alpha", sc.alpha);
    sc.beta = grid("beta", sc.beta);
    sc.lambda = grid("lambda", sc.lambda);
    sc.omega = grid("omega", sc.omega);
    sc.k = grid("k", sc.k);
    sc.mu = grid("mu", sc.mu);
    sc.N = j.value("N", sc.N);
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      sc.thresholds.osc_decay_factor =
          t.value("osc_decay_factor", sc.thresholds.osc_decay_factor);
      sc.thresholds.osc_tolerance =
          t.value("osc_tolerance", sc.thresholds.osc_tolerance);
      sc.thresholds.growth_per_window =
          t.value("growth_per_window", sc.thresholds.growth_per_window);
      sc.thresholds.min_windows =
          t.value("min_windows", sc.thresholds.min_windows);
      sc.thresholds.first_window =
          t.value("first_window", sc.thresholds.first_window);
    }
  } catch (const std::exception& e) {
    fail(errc::bad_config, std::string("bad sweep config: ") + e.what());
  }
  return sc;
}

int run_sweep(const RunConfig& c, Manifest& man) {
  SweepConfig sc = sweep_config_from_json(read_text_file(c.config_path));
  sc.jobs = effective_jobs(c);
  auto rows = sweep(sc);
  std::string csv;
  classify_rows_csv(rows, csv);
  write_text_file(c.out_path, csv);
  man.set("config", c.config_path);
  man.set("nodes", std::int64_t(rows.size()));
  man.set("N", sc.N);
  man.set("osc_decay_factor", sc.thresholds.osc_decay_factor);
  man.set("osc_tolerance", sc.thresholds.osc_tolerance);
  man.set("growth_per_window", sc.thresholds.growth_per_window);
  man.set("min_windows", sc.thresholds.min_windows);
  man.set("first_window", sc.thresholds.first_window);
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  Manifest man;
  man.set("tool", "osclab");
  man.set("version", kToolVersion);
  man.set("subcommand", config.subcommand);
  man.set("out", config.out_path);
  man.set("mode", config.mode);
  man.set("jobs", effective_jobs(config));

  int status = 0;
  try {
    if (config.subcommand == "evolve")
      status = run_evolve(config, man);
    else if (config.subcommand == "resonances")
      status = run_resonances(config, man);
    else if (config.subcommand == "expsum")
      status = run_expsum(config, man);
    else if (config.subcommand == "kruger")
      status = run_kruger(config, man);
    else if (config.subcommand == "classify")
      status = run_classify(config, man);
    else if (config.subcommand == "sweep")
      status = run_sweep(config, man);
    else
      fail(errc::bad_config, "unknown subcommand " + config.subcommand);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  man.set("wall_time_s", wall);
  man.write(config.out_path + ".manifest");
  return status;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"osclab: a numerical laboratory for half-line discrete "
               "Schrodinger operators with decaying oscillating potentials"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out_path, "output CSV path")->required();
    sub->add_option("--jobs", c.jobs, "worker threads (0 = all cores)");
    sub->add_option("--mode", c.mode, "validated|exploratory");
  };

  CLI::App* evolve = app.add_subcommand("evolve", "Pruefer trajectory dump");
  add_common(evolve);
  evolve->add_option("--spec", c.spec_path, "potential spec JSON")->required();
  evolve->add_option("--k", c.k, "quasi-momentum in (0, pi)");
  evolve->add_option("--mu", c.mu, "boundary parameter");
  evolve->add_option("--psi1", c.psi1, "normalization of psi_1");
  evolve->add_option("--N", c.N, "number of sites");
  evolve->add_option("--stride", c.stride, "CSV row stride");

  CLI::App* reso = app.add_subcommand("resonances", "resonance point table");
  add_common(reso);
  reso->add_option("--omega", c.omega)->required();
  reso->add_option("--beta", c.beta)->required();
  reso->add_option("--lmin", c.lmin);
  reso->add_option("--lmax", c.lmax);

  CLI::App* expsum = app.add_subcommand("expsum", "per-block bound report");
  add_common(expsum);
  expsum->add_option("--omega", c.omega)->required();
  expsum->add_option("--beta", c.beta)->required();
  expsum->add_option("--rho", c.rho);
  expsum->add_option("--gamma", c.gamma);
  expsum->add_option("--eps", c.eps);
  expsum->add_option("--zeta", c.zeta, "parametric perturbation scale");
  expsum->add_option("--lmin", c.lmin);
  expsum->add_option("--lmax", c.lmax);
  expsum->add_option("--blocks", c.blocks,
                     "geometric sample count (0 = every l)");

  CLI::App* kruger = app.add_subcommand("kruger", "block approximation report");
  add_common(kruger);
  kruger->add_option("--lambda", c.lambda);
  kruger->add_option("--omega", c.omega)->required();
  kruger->add_option("--alpha", c.alpha)->required();
  kruger->add_option("--beta", c.beta)->required();
  kruger->add_option("--omegaprime", c.omegaprime);
  kruger->add_option("--delta", c.delta, "window exponent override");
  kruger->add_option("--kmin", c.kmin);
  kruger->add_option("--kmax", c.kmax);

  CLI::App* classify = app.add_subcommand("classify", "single-point regime label");
  add_common(classify);
  classify->add_option("--alpha", c.cls_alpha)->required();
  classify->add_option("--beta", c.cls_beta)->required();
  classify->add_option("--lambda", c.lambda);
  classify->add_option("--omega", c.omega);
  classify->add_option("--k", c.k);
  classify->add_option("--mu", c.mu);
  classify->add_option("--N", c.N);

  CLI::App* sweepcmd = app.add_subcommand("sweep", "regime sweep over a grid");
  add_common(sweepcmd);
  sweepcmd->add_option("--config", c.config_path, "sweep grid JSON")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  return run(c);
}

}  // namespace osclab
