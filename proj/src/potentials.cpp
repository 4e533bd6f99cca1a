#include "osclab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "osclab/errors.hpp"
#include "osclab/numerics.hpp"

namespace osclab {

namespace {

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(errc::domain, "phase evaluation needs x > 0, got " + std::to_string(x));
}

double zeta_sum(double p) {
  // Riemann zeta for the l1 norm of c*n^-p sequences; p > 1 checked upstream
  return std::riemann_zeta(p);
}

}  // namespace

dd phase_over_pi(const PhaseSpec& ph, double x, bool include_rough) {
  require_positive(x);
  dd acc = dd_mul(dd_pow(x, ph.beta), ph.omega);
  for (const auto& [c, e] : ph.lower_order)
    acc = dd_add(acc, dd_mul(dd_mul(dd_pow(x, e), c), dd_inv_pi));
  if (include_rough && ph.zeta != 0.0) {
    dd rough = (ph.gamma == 1.0)
                   ? dd_mul(dd_ln(x), ph.zeta)
                   : dd_div(dd_mul(dd_pow(x, 1.0 - ph.gamma), ph.zeta),
                            1.0 - ph.gamma);
    acc = dd_add(acc, dd_mul(rough, dd_inv_pi));
  }
  return acc;
}

dd dphase_over_pi(const PhaseSpec& ph, double x) {
  require_positive(x);
  dd acc = dd_mul(dd_pow(x, ph.beta - 1.0), ph.omega * ph.beta);
  for (const auto& [c, e] : ph.lower_order) {
    if (e == 0.0) continue;
    acc = dd_add(acc, dd_mul(dd_mul(dd_pow(x, e - 1.0), c * e), dd_inv_pi));
  }
  return acc;
}

double phase_smooth_deriv(const PhaseSpec& ph, double x, int order) {
  require_positive(x);
  double b = ph.beta;
  double f = pi_d * ph.omega;
  for (int j = 0; j < order; ++j) f *= (b - j);
  double out = f * std::pow(x, b - order);
  for (const auto& [c, e] : ph.lower_order) {
    double g = c;
    for (int j = 0; j < order; ++j) g *= (e - j);
    if (g != 0.0) out += g * std::pow(x, e - order);
  }
  return out;
}

double phase_rough_deriv(const PhaseSpec& ph, double x, int order) {
  require_positive(x);
  if (ph.zeta == 0.0) return 0.0;
  double g = ph.gamma;
  if (order == 0)
    return (g == 1.0) ? ph.zeta * std::log(x)
                      : ph.zeta * std::pow(x, 1.0 - g) / (1.0 - g);
  double f = ph.zeta;  // first derivative is zeta * x^-gamma
  for (int j = 1; j < order; ++j) f *= -(g + (j - 1));
  return f * std::pow(x, -g - (order - 1));
}

double phase_value(const PhaseSpec& ph, double x, int deriv, bool reduce_mod_2pi) {
  require_positive(x);
  switch (deriv) {
    case 0: {
      dd v = phase_over_pi(ph, x, true);
      if (reduce_mod_2pi) return pi_d * dd_mod_centered(v, 2.0);
      return dd_mul(v, dd_pi).value();
    }
    case 1:
      return phase_smooth_deriv(ph, x, 1);
    case 2:
      return phase_smooth_deriv(ph, x, 2);
    default:
      fail(errc::domain, "phase_value: derivative order must be 0, 1 or 2");
  }
}

double phase_angle(const PhaseSpec& ph, double x) {
  return pi_d * dd_mod_centered(phase_over_pi(ph, x, true), 2.0);
}

double cos_phase(const PhaseSpec& ph, double x, bool reduce) {
  dd v = phase_over_pi(ph, x, true);
  if (reduce) return std::cos(pi_d * dd_mod_centered(v, 2.0));
  // cosine of the unreduced pair: libm reduces v.hi*pi internally, the lo part
  // enters through a second-order correction
  dd w = dd_mul(v, dd_pi);
  double ch = std::cos(w.hi);
  double sh = std::sin(w.hi);
  return ch - w.lo * sh - 0.5 * w.lo * w.lo * ch;
}

double Tail::operator()(std::int64_t n) const {
  double out = 0.0;
  if (n >= 1 && std::size_t(n) <= values.size()) out += values[n - 1];
  if (has_power) out += c * std::pow(double(n), -p);
  for (const auto& t : folded)
    out += t.lambda * cos_phase(t.phase, double(n)) /
           std::pow(double(n), t.alpha);
  return out;
}

double Tail::abs_at(std::int64_t n) const {
  double out = 0.0;
  if (n >= 1 && std::size_t(n) <= values.size()) out += std::abs(values[n - 1]);
  if (has_power) out += std::abs(c) * std::pow(double(n), -p);
  for (const auto& t : folded)
    out += std::abs(t.lambda) * std::pow(double(n), -t.alpha);
  return out;
}

double Tail::l1_norm() const {
  double out = 0.0;
  for (double v : values) out += std::abs(v);
  if (has_power) out += std::abs(c) * zeta_sum(p);
  for (const auto& t : folded) out += std::abs(t.lambda) * zeta_sum(t.alpha);
  return out;
}

double PotentialSpec::alpha1() const {
  if (terms.empty()) return std::numeric_limits<double>::infinity();
  return terms.front().alpha;
}

PotentialSpec validate_spec(PotentialSpec raw, ValidationMode mode) {
  auto check_finite = [](double v, const char* what, int j) {
    if (!std::isfinite(v))
      fail(errc::parse, std::string(what) + " is not finite", j);
  };

  PotentialSpec out;
  out.tail = raw.tail;

  for (std::size_t j = 0; j < raw.terms.size(); ++j) {
    OscTerm t = raw.terms[j];
    int idx = int(j);
    check_finite(t.lambda, "lambda", idx);
    check_finite(t.alpha, "alpha", idx);
    check_finite(t.phase.omega, "omega", idx);
    check_finite(t.phase.beta, "beta", idx);
    check_finite(t.phase.zeta, "zeta", idx);
    check_finite(t.phase.gamma, "gamma", idx);
    for (const auto& [c, e] : t.phase.lower_order) {
      check_finite(c, "lower_order coefficient", idx);
      check_finite(e, "lower_order exponent", idx);
    }
    if (t.phase.omega == 0.0)
      fail(errc::omega_zero, "term has omega = 0", idx);

    if (mode == ValidationMode::exploratory) {
      if (!(t.alpha > 0.0))
        fail(errc::alpha_out_of_range, "exploratory mode needs alpha > 0", idx);
      if (!(t.phase.beta > 0.0))
        fail(errc::beta_out_of_range, "exploratory mode needs beta > 0", idx);
      out.terms.push_back(t);
      continue;
    }

    if (t.alpha > 1.0) {
      // summable on its own; belongs to the background
      out.tail.folded.push_back(t);
      continue;
    }
    if (!(t.alpha > 0.5))
      fail(errc::alpha_out_of_range,
           "alpha must lie in (1/2, 1], got " + std::to_string(t.alpha), idx);
    if (!(t.phase.beta > 1.0 && t.phase.beta < 2.0 * t.alpha))
      fail(errc::beta_out_of_range,
           "beta must lie in (1, 2*alpha) = (1, " +
               std::to_string(2.0 * t.alpha) + "), got " +
               std::to_string(t.phase.beta),
           idx);
    for (const auto& [c, e] : t.phase.lower_order) {
      (void)c;
      if (!(e < t.phase.beta))
        fail(errc::lower_order_exponent,
             "lower-order exponent " + std::to_string(e) +
                 " must be strictly below beta",
             idx);
    }
    if (!(t.phase.gamma > 0.0 && t.phase.gamma <= 1.0))
      fail(errc::gamma_out_of_range,
           "gamma must lie in (0, 1], got " + std::to_string(t.phase.gamma), idx);
    if (!(t.phase.gamma > 1.0 - t.alpha))
      fail(errc::gamma_too_small,
           "gamma must exceed 1 - alpha = " + std::to_string(1.0 - t.alpha) +
               ", got " + std::to_string(t.phase.gamma),
           idx);
    out.terms.push_back(t);
  }

  std::stable_sort(out.terms.begin(), out.terms.end(),
                   [](const OscTerm& a, const OscTerm& b) { return a.alpha < b.alpha; });

  for (double v : out.tail.values)
    if (!std::isfinite(v)) fail(errc::parse, "tail value is not finite");
  if (out.tail.has_power) {
    check_finite(out.tail.c, "tail c", -1);
    check_finite(out.tail.p, "tail p", -1);
    if (out.tail.c != 0.0 && !(out.tail.p > 1.0))
      fail(errc::tail_not_summable,
           "tail c*n^-p needs p > 1, got p = " + std::to_string(out.tail.p));
  }
  out.tail_l1_norm = out.tail.l1_norm();
  return out;
}

double eval_potential(const PotentialSpec& spec, std::int64_t n) {
  if (n < 1) fail(errc::domain, "eval_potential needs n >= 1");
  double x = double(n);
  double out = 0.0;
  for (const auto& t : spec.terms)
    out += t.lambda * cos_phase(t.phase, x) / std::pow(x, t.alpha);
  out += spec.tail(n);
  return out;
}

std::vector<double> tabulate_potential(const PotentialSpec& spec, std::int64_t N) {
  if (N < 1) fail(errc::domain, "tabulate_potential needs N >= 1");
  std::vector<double> out(std::size_t(N));
  for (std::int64_t n = 1; n <= N; ++n) out[n - 1] = eval_potential(spec, n);
  return out;
}

PotentialSpec canonical_spec(double lambda, double omega, double alpha,
                             double beta, ValidationMode mode) {
  PotentialSpec raw;
  OscTerm t;
  t.lambda = lambda;
  t.alpha = alpha;
  t.phase.omega = omega;
  t.phase.beta = beta;
  raw.terms.push_back(t);
  return validate_spec(std::move(raw), mode);
}

// ---- serialization ----

using nlohmann::json;

std::string spec_to_json(const PotentialSpec& spec) {
  json j;
  j["terms"] = json::array();
  auto term_to_json = [](const OscTerm& t) {
    json jt;
    jt["lambda"] = t.lambda;
    jt["alpha"] = t.alpha;
    jt["omega"] = t.phase.omega;
    jt["beta"] = t.phase.beta;
    jt["lower_order"] = json::array();
    for (const auto& [c, e] : t.phase.lower_order)
      jt["lower_order"].push_back(json::array({c, e}));
    jt["zeta"] = t.phase.zeta;
    jt["gamma"] = t.phase.gamma;
    return jt;
  };
  for (const auto& t : spec.terms) j["terms"].push_back(term_to_json(t));
  for (const auto& t : spec.tail.folded) j["terms"].push_back(term_to_json(t));
  json jt;
  if (spec.tail.has_power) {
    jt["kind"] = "power";
    jt["c"] = spec.tail.c;
    jt["p"] = spec.tail.p;
  } else if (!spec.tail.values.empty()) {
    jt["kind"] = "explicit";
    jt["values"] = spec.tail.values;
  } else {
    jt["kind"] = "none";
  }
  j["tail"] = jt;
  return j.dump(2);
}

PotentialSpec spec_from_json(const std::string& text, ValidationMode mode) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::parse, std::string("bad spec document: ") + e.what());
  }
  PotentialSpec raw;
  try {
    for (const auto& jt : j.value("terms", json::array())) {
      OscTerm t;
      t.lambda = jt.at("lambda").get<double>();
      t.alpha = jt.at("alpha").get<double>();
      t.phase.omega = jt.at("omega").get<double>();
      t.phase.beta = jt.at("beta").get<double>();
      if (jt.contains("lower_order"))
        for (const auto& pair : jt["lower_order"])
          t.phase.lower_order.emplace_back(pair.at(0).get<double>(),
                                           pair.at(1).get<double>());
      t.phase.zeta = jt.value("zeta", 0.0);
      t.phase.gamma = jt.value("gamma", 1.0);
      raw.terms.push_back(t);
    }
    if (j.contains("tail")) {
      const auto& jt = j["tail"];
      std::string kind = jt.value("kind", "none");
      if (kind == "explicit") {
        raw.tail.values = jt.at("values").get<std::vector<double>>();
      } else if (kind == "power") {
        raw.tail.has_power = true;
        raw.tail.c = jt.at("c").get<double>();
        raw.tail.p = jt.at("p").get<double>();
      } else if (kind != "none") {
        fail(errc::parse, "tail kind must be none, explicit or power");
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(errc::parse, std::string("bad spec document: ") + e.what());
  }
  return validate_spec(std::move(raw), mode);
}

PotentialSpec load_spec(const std::string& path, ValidationMode mode) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open spec file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return spec_from_json(ss.str(), mode);
}

void save_spec(const PotentialSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::parse, "cannot open " + path + " for writing");
  out << spec_to_json(spec) << "\n";
}

}  // namespace osclab
