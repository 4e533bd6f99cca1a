#include "osclab/expsum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "osclab/errors.hpp"
#include "osclab/numerics.hpp"
#include "osclab/parallel.hpp"

namespace osclab {

namespace {

constexpr double kMaxRepresentable = 9.0e15;  // integers exact in double
constexpr double kPhaseTrunc = 1e-8;          // in-window cubic model budget
constexpr std::int64_t kMaxWindow = 1 << 20;
constexpr std::int64_t kMinAnchorWindow = 32;
constexpr std::int64_t kPerTermChunk = 4096;

void check_range(double a, double b) {
  if (!(a >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
    fail(errc::range, "need finite 0 <= a, b");
  if (b > kMaxRepresentable)
    fail(errc::range, "range endpoint exceeds exactly representable integers");
}

// smooth phase plus a smooth perturbation, as one C^4 object
struct TotalSmooth {
  const PhaseSpec* ph;
  const Perturbation* h;

  dd over_pi(double x) const {
    dd v = phase_over_pi(*ph, x, false);
    if (h->kind == Perturbation::Kind::parametric && h->zeta != 0.0) {
      dd rough = (h->gamma == 1.0)
                     ? dd_mul(dd_ln(x), h->zeta)
                     : dd_div(dd_mul(dd_pow(x, 1.0 - h->gamma), h->zeta),
                              1.0 - h->gamma);
      v = dd_add(v, dd_mul(rough, dd_inv_pi));
    }
    return v;
  }
  dd dover_pi(double x) const {
    dd v = dphase_over_pi(*ph, x);
    if (h->kind == Perturbation::Kind::parametric && h->zeta != 0.0)
      v = dd_add(v, dd_mul(dd_mul(dd_pow(x, -h->gamma), h->zeta), dd_inv_pi));
    return v;
  }
  double deriv(double x, int order) const {
    double v = phase_smooth_deriv(*ph, x, order);
    if (h->kind == Perturbation::Kind::parametric) v += h->deriv(x, order);
    return v;
  }
};

struct Window {
  std::int64_t start = 0;
  std::int64_t len = 0;
  bool anchored = false;
};

std::int64_t anchored_window_len(const TotalSmooth& F, double rho, double m) {
  double d4 = std::abs(F.deriv(m, 4));
  double W4 = d4 > 0.0 ? 2.0 * std::pow(24.0 * kPhaseTrunc / d4, 0.25)
                       : double(kMaxWindow);
  double Wa = rho != 0.0 ? 1e-3 * m : double(kMaxWindow);
  double W = std::min({W4, Wa, double(kMaxWindow)});
  if (!(W >= double(kMinAnchorWindow))) return 0;
  return std::int64_t(W);
}

std::vector<Window> plan_windows(const TotalSmooth& F, double rho,
                                 std::int64_t n_first, std::int64_t n_last,
                                 bool force_per_term) {
  std::vector<Window> out;
  std::int64_t pos = n_first;
  while (pos <= n_last) {
    Window w;
    w.start = pos;
    std::int64_t room = n_last - pos + 1;
    if (force_per_term) {
      w.len = std::min(room, kPerTermChunk);
      w.anchored = false;
    } else {
      std::int64_t W = anchored_window_len(F, rho, double(pos));
      if (W == 0) {
        w.len = std::min(room, kPerTermChunk);
        w.anchored = false;
      } else {
        w.len = std::min(room, W);
        w.anchored = true;
      }
    }
    out.push_back(w);
    pos += w.len;
  }
  return out;
}

struct WindowAccum {
  NeumaierSum re, im, absw;
  void merge(const WindowAccum& o) {
    re.merge(o.re);
    im.merge(o.im);
    absw.merge(o.absw);
  }
};

// contributions of one window, forward term order; when `store` is given the
// per-term values are written there instead of being accumulated
void sum_window(const TotalSmooth& F, const Perturbation& h, double rho,
                const Window& win, WindowAccum& acc,
                std::vector<std::array<double, 3>>* store) {
  auto emit = [&](double wre, double wim, double wabs, std::int64_t idx) {
    if (store) {
      (*store)[std::size_t(idx)] = {wre, wim, wabs};
    } else {
      acc.re.add(wre);
      acc.im.add(wim);
      acc.absw.add(wabs);
    }
  };

  if (!win.anchored) {
    for (std::int64_t i = 0; i < win.len; ++i) {
      std::int64_t n = win.start + i;
      double x = double(n);
      double ang = pi_d * dd_mod_centered(F.over_pi(x), 2.0);
      if (h.kind == Perturbation::Kind::sampled) ang += h.value(n);
      double w = rho == 0.0 ? 1.0 : std::pow(x, -rho);
      emit(w * std::cos(ang), w * std::sin(ang), w, i);
    }
    return;
  }

  std::int64_t m = win.start + win.len / 2;
  double md = double(m);
  double a0 = pi_d * dd_mod_centered(F.over_pi(md), 2.0);
  double a1 = pi_d * dd_mod_centered(F.dover_pi(md), 2.0);
  double a2 = 0.5 * F.deriv(md, 2);
  double a3 = F.deriv(md, 3) / 6.0;
  double w0 = rho == 0.0 ? 1.0 : std::pow(md, -rho);
  double w1 = -rho * w0 / md;
  double w2 = 0.5 * rho * (rho + 1.0) * w0 / (md * md);

  double t0 = double(win.start - m);
  double A0 = a0 + t0 * (a1 + t0 * (a2 + t0 * a3));
  double D1 = a1 + a2 * (2.0 * t0 + 1.0) + a3 * (3.0 * t0 * t0 + 3.0 * t0 + 1.0);
  double D2 = 2.0 * a2 + a3 * (6.0 * t0 + 6.0);
  double D3 = 6.0 * a3;

  double sr = std::cos(A0), si = std::sin(A0);
  double d1r = std::cos(D1), d1i = std::sin(D1);
  double d2r = std::cos(D2), d2i = std::sin(D2);
  double d3r = std::cos(D3), d3i = std::sin(D3);

  double td = t0;
  for (std::int64_t i = 0; i < win.len; ++i, td += 1.0) {
    double w = w0 + td * (w1 + td * w2);
    emit(w * sr, w * si, w, i);
    double nsr = sr * d1r - si * d1i;
    si = sr * d1i + si * d1r;
    sr = nsr;
    double nd1r = d1r * d2r - d1i * d2i;
    d1i = d1r * d2i + d1i * d2r;
    d1r = nd1r;
    double nd2r = d2r * d3r - d2i * d3i;
    d2i = d2r * d3i + d2i * d3r;
    d2r = nd2r;
  }
}

}  // namespace

Perturbation Perturbation::parametric(double zeta, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    fail(errc::gamma_out_of_range, "parametric perturbation needs gamma in (0, 1]");
  Perturbation p;
  p.kind = Kind::parametric;
  p.zeta = zeta;
  p.gamma = gamma;
  return p;
}

Perturbation Perturbation::sampled(std::int64_t n0, std::vector<double> values) {
  Perturbation p;
  p.kind = Kind::sampled;
  p.n0 = n0;
  p.samples = std::move(values);
  return p;
}

double Perturbation::value(std::int64_t n) const {
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::parametric: {
      double x = double(n);
      return (gamma == 1.0) ? zeta * std::log(x)
                            : zeta * std::pow(x, 1.0 - gamma) / (1.0 - gamma);
    }
    case Kind::sampled: {
      std::int64_t i = n - n0;
      if (i < 0 || std::size_t(i) >= samples.size())
        fail(errc::range, "sampled perturbation does not cover n = " +
                              std::to_string(n));
      return samples[std::size_t(i)];
    }
  }
  return 0.0;
}

double Perturbation::increment(std::int64_t n) const {
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::parametric: {
      double x = double(n);
      if (gamma == 1.0) return zeta * std::log1p(1.0 / x);
      double e = 1.0 - gamma;
      return zeta / e * std::pow(x, e) * std::expm1(e * std::log1p(1.0 / x));
    }
    case Kind::sampled:
      return value(n + 1) - value(n);
  }
  return 0.0;
}

double Perturbation::delta_l1(double a, double b) const {
  std::int64_t n_first = std::int64_t(std::floor(a)) + 1;
  std::int64_t n_last = std::int64_t(std::floor(b));
  if (n_first >= n_last) return 0.0;
  if (kind == Kind::none) return 0.0;
  if (kind == Kind::parametric)  // monotone, so the increments telescope
    return std::abs(value(n_last) - value(n_first));
  double out = 0.0;
  for (std::int64_t n = n_first; n < n_last; ++n)
    out += std::abs(increment(n));
  return out;
}

double Perturbation::deriv(double x, int order) const {
  if (kind != Kind::parametric || zeta == 0.0) return 0.0;
  double f = zeta;  // first derivative is zeta * x^-gamma
  for (int j = 1; j < order; ++j) f *= -(gamma + (j - 1));
  return f * std::pow(x, -gamma - (order - 1));
}

double resonance_closed_form(const PhaseSpec& ph, std::int64_t l) {
  if (ph.omega == 0.0) fail(errc::domain, "omega must be nonzero");
  if (!(ph.beta > 1.0)) fail(errc::domain, "resonance points need beta > 1");
  if (l < 1) fail(errc::domain, "resonance index l must be >= 1");
  return std::pow(2.0 * double(l) / (ph.beta * std::abs(ph.omega)),
                  1.0 / (ph.beta - 1.0));
}

double resonance_point(const PhaseSpec& ph, std::int64_t l) {
  double guess = resonance_closed_form(ph, l);
  double sgn = ph.omega > 0.0 ? 1.0 : -1.0;
  double target = sgn * two_pi_d * double(l);
  auto fp = [&](double x) { return phase_smooth_deriv(ph, x, 1); };
  auto fpp = [&](double x) { return phase_smooth_deriv(ph, x, 2); };

  double lo = 0.5 * guess, hi = 1.5 * guess;
  for (int widen = 0; widen < 4; ++widen) {
    double flo = fp(lo) - target, fhi = fp(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi < 0.0) break;
    lo *= 0.5;
    hi *= 2.0;
    if (widen == 3)
      fail(errc::not_monotone,
           "phi' does not bracket the resonance target near the asymptote");
  }
  // monotonicity of phi' over the bracket
  int sign_seen = 0;
  for (int i = 0; i <= 32; ++i) {
    double x = lo + (hi - lo) * double(i) / 32.0;
    double d2 = fpp(x);
    if (d2 == 0.0) continue;
    int s = d2 > 0.0 ? 1 : -1;
    if (sign_seen == 0) sign_seen = s;
    if (s != sign_seen)
      fail(errc::not_monotone, "phi' is not monotone on the bracket for l = " +
                                   std::to_string(l));
  }
  double Y = find_root_monotone(fp, lo, hi, target, fpp);
  double resid = std::abs(fp(Y) - target);
  if (resid > 1e-10 * double(l))
    fail(errc::range, "resonance residual " + std::to_string(resid) +
                          " exceeds tolerance at l = " + std::to_string(l));
  return Y;
}

std::vector<ResonancePoint> resonance_points(const PhaseSpec& ph,
                                             std::int64_t l_min,
                                             std::int64_t l_max) {
  if (l_min < 1 || l_max < l_min)
    fail(errc::range, "need 1 <= l_min <= l_max");
  std::vector<ResonancePoint> out;
  out.reserve(std::size_t(l_max - l_min + 1));
  double prev = 0.0;
  for (std::int64_t l = l_min; l <= l_max; ++l) {
    double Y = resonance_point(ph, l);
    if (Y <= prev)
      fail(errc::not_monotone, "resonance points must increase in l");
    out.push_back({l, Y});
    prev = Y;
  }
  return out;
}

ExpSumResult direct_exp_sum(const PhaseSpec& ph, const Perturbation& h,
                            double rho, double a, double b,
                            const ExpSumOptions& opts) {
  check_range(a, b);
  if (!(rho >= 0.0)) fail(errc::domain, "rho must be >= 0");
  ExpSumResult res;
  res.a = a;
  res.b = b;
  res.rho = rho;
  std::int64_t n_first = std::int64_t(std::floor(a)) + 1;
  std::int64_t n_last = std::int64_t(std::floor(b));
  if (n_first < 1) n_first = 1;
  if (n_first > n_last) return res;
  res.terms = n_last - n_first + 1;

  if (h.kind == Perturbation::Kind::sampled) {
    // increments of the sampled range are needed term by term
    (void)h.value(n_first);
    (void)h.value(n_last);
  }

  TotalSmooth F{&ph, &h};
  bool per_term = (h.kind == Perturbation::Kind::sampled);
  std::vector<Window> windows = plan_windows(F, rho, n_first, n_last, per_term);
  std::int64_t nw = std::int64_t(windows.size());

  if (opts.reverse) {
    // identical per-term values, accumulated back to front
    WindowAccum total;
    std::vector<std::array<double, 3>> buf;
    for (std::int64_t wi = nw - 1; wi >= 0; --wi) {
      buf.assign(std::size_t(windows[wi].len), {0.0, 0.0, 0.0});
      WindowAccum unused;
      sum_window(F, h, rho, windows[wi], unused, &buf);
      for (std::int64_t i = windows[wi].len - 1; i >= 0; --i) {
        total.re.add(buf[std::size_t(i)][0]);
        total.im.add(buf[std::size_t(i)][1]);
        total.absw.add(buf[std::size_t(i)][2]);
      }
    }
    res.value = {total.re.value(), total.im.value()};
    res.abs = std::abs(res.value);
    res.trivial_bound = total.absw.value();
    res.predicted_bound = res.trivial_bound;
    res.ratio = res.predicted_bound > 0.0 ? res.abs / res.predicted_bound : 0.0;
    return res;
  }

  // fixed group partition of the window list; groups are the parallel work
  // items and are merged in index order, so the result does not depend on jobs
  std::int64_t ngroups = std::min<std::int64_t>(nw, 256);
  std::vector<WindowAccum> partial(std::size_t(ngroups));
  parallel_for(ngroups, opts.jobs, [&](std::int64_t g) {
    std::int64_t w0 = g * nw / ngroups;
    std::int64_t w1 = (g + 1) * nw / ngroups;
    for (std::int64_t wi = w0; wi < w1; ++wi)
      sum_window(F, h, rho, windows[wi], partial[std::size_t(g)], nullptr);
  });
  WindowAccum total;
  for (auto& p : partial) total.merge(p);

  res.value = {total.re.value(), total.im.value()};
  res.abs = std::abs(res.value);
  res.trivial_bound = total.absw.value();
  res.predicted_bound = res.trivial_bound;
  res.ratio = res.predicted_bound > 0.0 ? res.abs / res.predicted_bound : 0.0;
  return res;
}

KuzminLandauResult kuzmin_landau_check(const std::function<double(double)>& f,
                                       const std::function<double(double)>& fprime,
                                       double a, double b) {
  if (!(a < b)) fail(errc::range, "need a < b");
  // sampled monotonicity of f'
  constexpr int kSamples = 256;
  double prev = fprime(a);
  int dir = 0;
  for (int i = 1; i <= kSamples; ++i) {
    double x = a + (b - a) * double(i) / kSamples;
    double cur = fprime(x);
    if (cur > prev) {
      if (dir < 0) fail(errc::not_monotone, "f' changes direction on [a, b]");
      dir = 1;
    } else if (cur < prev) {
      if (dir > 0) fail(errc::not_monotone, "f' changes direction on [a, b]");
      dir = -1;
    }
    prev = cur;
  }
  double fa = fprime(a), fb = fprime(b);
  double lo = std::min(fa, fb), hi = std::max(fa, fb);
  double kappa;
  if (std::floor(hi) >= std::ceil(lo))  // an integer inside the image
    kappa = 0.0;
  else
    kappa = std::min(dist_to_integers(fa), dist_to_integers(fb));
  if (kappa <= 1e-12)
    fail(errc::kappa_zero, "f' approaches the integers; kappa = 0");

  std::int64_t n_first = std::int64_t(std::floor(a)) + 1;
  std::int64_t n_last = std::int64_t(std::floor(b));
  NeumaierSum re, im;
  for (std::int64_t n = n_first; n <= n_last; ++n) {
    double y = f(double(n));
    double ang = two_pi_d * (y - std::nearbyint(y));
    re.add(std::cos(ang));
    im.add(std::sin(ang));
  }
  KuzminLandauResult out;
  out.kappa = kappa;
  out.abs_sum = std::hypot(re.value(), im.value());
  out.ratio = out.abs_sum * kappa;
  return out;
}

namespace {

double endpoint_distance(double Yl, double Yl1, double a, double b,
                         std::int64_t l) {
  if (!(Yl <= a && a < b && b <= Yl1))
    fail(errc::range, "[a, b] must sit inside [Y_l, Y_{l+1}] for l = " +
                          std::to_string(l));
  double d = std::min(a - Yl, Yl1 - b);
  if (!(d > 0.0))
    fail(errc::range, "[a, b] must not touch the resonance points");
  return d;
}

}  // namespace

LemmaBound lemma_bound_pure(const PhaseSpec& ph, std::int64_t l, double a,
                            double b) {
  double Yl = resonance_point(ph, l);
  double Yl1 = resonance_point(ph, l + 1);
  LemmaBound out;
  out.dist = endpoint_distance(Yl, Yl1, a, b, l);
  out.bound =
      std::pow(double(l), (2.0 - ph.beta) / (ph.beta - 1.0)) / out.dist;
  out.abs_sum = direct_exp_sum(ph, Perturbation::none(), 0.0, a, b).abs;
  return out;
}

LemmaBound lemma_bound_decay(const PhaseSpec& ph, const Perturbation& h,
                             double rho, std::int64_t l, double a, double b) {
  double Yl = resonance_point(ph, l);
  double Yl1 = resonance_point(ph, l + 1);
  LemmaBound out;
  out.dist = endpoint_distance(Yl, Yl1, a, b, l);
  double dh = h.delta_l1(a, b);
  out.bound = (1.0 + dh) *
              std::pow(double(l), (2.0 - ph.beta - rho) / (ph.beta - 1.0)) /
              out.dist;
  out.abs_sum = direct_exp_sum(ph, h, rho, a, b).abs;
  return out;
}

Partition build_partition(const PhaseSpec& ph, double eps, std::int64_t l) {
  double beta = ph.beta;
  if (!(beta > 1.0 && beta < 2.0))
    fail(errc::domain, "partition schedule needs beta in (1, 2)");
  if (!(eps > 0.0)) fail(errc::domain, "eps must be positive");
  if (l < 1) fail(errc::domain, "l must be >= 1");

  Partition out;
  out.spec.beta = beta;
  out.spec.eps = eps;
  double sigma1 = (2.0 - beta) / (2.0 * (beta - 1.0));
  std::int64_t K =
      std::max<std::int64_t>(1, ceil_guarded((2.0 - beta) / (2.0 * (beta - 1.0) * eps)));
  out.spec.K = K;
  double step = (2.0 - beta) / (2.0 * double(K) * (beta - 1.0));
  out.spec.sigma.resize(std::size_t(K));
  for (std::int64_t k = 0; k < K; ++k)
    out.spec.sigma[std::size_t(k)] = sigma1 + double(k) * step;

  out.Y_lo = resonance_point(ph, l);
  out.Y_hi = resonance_point(ph, l + 1);
  double mid = 0.5 * (out.Y_lo + out.Y_hi);

  std::vector<double> bp;
  bp.push_back(out.Y_lo);
  for (double s : out.spec.sigma)
    bp.push_back(std::min(out.Y_lo + std::pow(double(l), s), mid));
  bp.push_back(mid);
  for (auto it = out.spec.sigma.rbegin(); it != out.spec.sigma.rend(); ++it)
    bp.push_back(std::max(out.Y_hi - std::pow(double(l), *it), mid));
  bp.push_back(out.Y_hi);

  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    if (bp[i] < bp[i + 1]) out.intervals.emplace_back(bp[i], bp[i + 1]);
  return out;
}

double theorem_bound(const PhaseSpec& ph, double rho, double gamma, double v_l1,
                     double eps, std::int64_t l) {
  double beta = ph.beta;
  if (!(beta > 1.0 && beta < 2.0)) fail(errc::domain, "need beta in (1, 2)");
  if (!(rho >= 0.0)) fail(errc::domain, "need rho >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail(errc::domain, "need gamma in [0, 1]");
  if (!(eps > 0.0)) fail(errc::domain, "need eps > 0");
  if (l < 1) fail(errc::domain, "need l >= 1");
  double ld = double(l);
  double egamma = (2.0 - beta - 2.0 * gamma) / (2.0 * (beta - 1.0)) + eps;
  double erho = (2.0 - beta - 2.0 * rho) / (2.0 * (beta - 1.0));
  return (1.0 + v_l1 + std::pow(ld, egamma)) * std::pow(ld, erho);
}

BlockRow block_sum(const PhaseSpec& ph, const Perturbation& h, double rho,
                   double gamma, double eps, std::int64_t l, int jobs) {
  BlockRow row;
  row.l = l;
  row.Y_l = resonance_point(ph, l);
  row.Y_l1 = resonance_point(ph, l + 1);
  ExpSumOptions opts;
  opts.jobs = jobs;
  row.abs_sum = direct_exp_sum(ph, h, rho, row.Y_l, row.Y_l1, opts).abs;
  double v_l1 = h.kind == Perturbation::Kind::sampled ? h.delta_l1(row.Y_l, row.Y_l1) : 0.0;
  row.bound = theorem_bound(ph, rho, gamma, v_l1, eps, l);
  row.ratio = row.bound > 0.0 ? row.abs_sum / row.bound : 0.0;
  return row;
}

}  // namespace osclab
