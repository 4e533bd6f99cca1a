#include <doctest.h>

#include <cmath>
#include <random>

#include "osclab/dd.hpp"
#include "osclab/numerics.hpp"

using namespace osclab;

TEST_CASE("two_sum and two_prod recover exact errors") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e10, 1e10);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng), b = u(rng);
    dd s = two_sum(a, b);
    CHECK(s.hi == a + b);
    dd p = two_prod(a, b);
    CHECK(p.hi == a * b);
    CHECK(p.lo == std::fma(a, b, -p.hi));
  }
}

TEST_CASE("dd_ln and dd_exp round-trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 1e12);
  for (int i = 0; i < 200; ++i) {
    double x = u(rng);
    dd l = dd_ln(x);
    dd back = dd_exp(l);
    double rel = std::abs(back.value() - x) / x;
    CHECK(rel < 1e-28);
  }
  CHECK(dd_ln(1.0).value() == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(dd_exp(dd{0.0}).value() == 1.0);
}

TEST_CASE("dd_pow matches integer powers exactly enough") {
  for (int e = 1; e <= 20; ++e) {
    dd v = dd_pow(3.0, double(e));
    double exact = std::pow(3.0, e);
    CHECK(std::abs(v.value() - exact) / exact < 1e-28);
  }
}

// frozen with mpmath at 60 digits: omega * n^beta mod 2 (exact doubles in)
struct ReducedCase {
  double omega;
  std::int64_t n;
  double beta;
  double frac;     // omega*n^beta mod 2 in [0, 2)
  double cos_val;  // cos(pi * omega * n^beta)
};

static const ReducedCase kReduced[] = {
    {1.0, 1000000, 1.9, 0.9577028840038172573693, -0.9911843947739540758142},
    {1.4142135623730951, 12345, 1.7, 1.555755331799259413219,
     0.1742662241149149211093},
    {10.0, 999983, 1.9, 0.514199016896555991125, -0.04459273506521413737684},
    {0.7071067811865476, 54321, 1.3, 0.8946758263998232768639,
     -0.94575498382240383524},
    {-2.5, 777216, 1.5, 1.113030849168724952835, -0.9376128079949179313561},
};

TEST_CASE("mod-2 reduction of omega*n^beta matches the high-precision oracle") {
  for (const auto& c : kReduced) {
    dd v = dd_mul(dd_pow(double(c.n), c.beta), c.omega);
    double r = dd_mod(v, 2.0);
    CHECK(std::abs(r - c.frac) < 1e-13);
    double angle = pi_d * dd_mod_centered(v, 2.0);
    CHECK(std::abs(std::cos(angle) - c.cos_val) < 1e-13);
  }
}

TEST_CASE("dd_mod halves huge values exactly") {
  dd v{1e18, 0.25};
  // 1e18 is even, so the reduction is carried entirely by the low word
  CHECK(dd_mod(v, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
}
