#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "osclab/errors.hpp"
#include "osclab/numerics.hpp"

using namespace osclab;

TEST_CASE("compensated sum survives adversarial cancellation") {
  NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
}

TEST_CASE("compensated merge equals one-pass accumulation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = u(rng);
  NeumaierSum one;
  for (double x : xs) one.add(x);
  NeumaierSum a, b;
  for (std::size_t i = 0; i < xs.size() / 2; ++i) a.add(xs[i]);
  for (std::size_t i = xs.size() / 2; i < xs.size(); ++i) b.add(xs[i]);
  a.merge(b);
  CHECK(std::abs(a.value() - one.value()) < 1e-15);
}

TEST_CASE("wrap_to_half_open_pi lands in [-pi, pi)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng);
    double w = wrap_to_half_open_pi(a);
    CHECK(w >= -pi_d);
    CHECK(w < pi_d);
    // same angle mod 2 pi
    CHECK(std::abs(std::remainder(a - w, 2.0 * pi_d)) < 1e-9);
  }
}

TEST_CASE("ceil_guarded ignores few-ulp overshoot") {
  CHECK(ceil_guarded(256.00000000000003) == 256);
  CHECK(ceil_guarded(256.3) == 257);
  CHECK(ceil_guarded(5.0) == 5);
  CHECK(ceil_guarded(4.99999999999999) == 5);
  CHECK(ceil_guarded(4.5) == 5);
}

TEST_CASE("monotone root finder hits tabulated roots") {
  auto f = [](double x) { return x * x * x; };
  auto fp = [](double x) { return 3.0 * x * x; };
  double r = find_root_monotone(f, 0.5, 3.0, 8.0, fp);
  CHECK(std::abs(r - 2.0) < 1e-14);
  CHECK_THROWS_AS(find_root_monotone(f, 0.5, 1.0, 8.0, fp), Error);
}

TEST_CASE("least squares line fit reproduces an exact line") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(2.5 * v - 1.25);
  LinearFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(-1.25).epsilon(1e-12));
}
