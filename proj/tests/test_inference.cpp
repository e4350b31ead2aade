#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "numsparse/deconv.hpp"
#include "numsparse/error.hpp"
#include "numsparse/inference.hpp"
#include "numsparse/rng.hpp"
#include "numsparse/sparsity.hpp"
#include "numsparse/stats.hpp"
#include "oracles.hpp"

using namespace numsparse;

namespace {

NormEstimate norm(double q, double nu, double omega, std::size_t n) {
  NormEstimate e;
  e.q = q;
  e.nu_hat = nu;
  e.omega_hat = omega;
  e.n = n;
  return e;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Numerical;
}

const double z95 = oracle::normal_quantile(0.95);

}  // namespace

TEST_CASE("sparsity estimate assembly") {
  const auto s = estimate_sparsity(norm(2.0, 2.0, 3.0, 500), norm(1.0, 4.0, 2.0, 500));
  CHECK(s.s_hat == doctest::Approx(8.0));
  CHECK(s.pi_q == doctest::Approx(0.5));
  CHECK(s.vartheta_hat == doctest::Approx(22.0));
  CHECK(s.n_total() == 1000);

  const auto h = estimate_sparsity(norm(0.5, 3.0, 1.0, 100), norm(1.0, 1.0, 1.0, 300));
  CHECK(h.s_hat == doctest::Approx(9.0));
  CHECK(h.pi_q == doctest::Approx(0.25));
  // (1/(1-q))^2 = 4, (q/(1-q))^2 = 1
  CHECK(h.vartheta_hat == doctest::Approx(1.0 / 0.25 * 4 + 1.0 / 0.75 * 1));

  CHECK(kind_of([] { estimate_sparsity(norm(1.02, 1, 1, 10), norm(1.0, 1, 1, 10)); }) == ErrorKind::QTooCloseToOne);
  CHECK(kind_of([] { estimate_sparsity(norm(2.0, 1, 1, 10), norm(2.0, 1, 1, 10)); }) == ErrorKind::WrongQ);
  CHECK(kind_of([] { estimate_sparsity(norm(2.0, -1, 1, 10), norm(1.0, 1, 1, 10)); }) ==
        ErrorKind::NonPositiveNormEstimate);
  CHECK(kind_of([] { estimate_sparsity(norm(2.0, 1, 1, 10), norm(1.0, 0, 1, 10)); }) ==
        ErrorKind::NonPositiveNormEstimate);
}

TEST_CASE("reconstruction identity") {
  CounterRng rng(1);
  for (int k = 0; k < 200; ++k) {
    const double q = k % 2 ? 0.1 + 0.8 * rng.uniform01() : 1.1 + 0.9 * rng.uniform01();
    const auto a = norm(q, 0.1 + 5 * rng.uniform01(), 0.5 + 3 * rng.uniform01(), 10 + k);
    const auto b = norm(1.0, 0.1 + 5 * rng.uniform01(), 0.5 + 3 * rng.uniform01(), 20 + 3 * k);
    const auto s = estimate_sparsity(a, b);
    const double expect = std::pow(a.nu_hat, 1 / (1 - q)) / std::pow(b.nu_hat, q / (1 - q));
    const double pi = double(a.n) / double(a.n + b.n);
    const double vt = a.omega_hat / pi / ((1 - q) * (1 - q)) + b.omega_hat / (1 - pi) * q * q / ((1 - q) * (1 - q));
    CHECK(std::abs(s.s_hat - expect) <= 1e-12 * expect);
    CHECK(std::abs(s.vartheta_hat - vt) <= 1e-12 * vt);
  }
}

TEST_CASE("norm confidence intervals") {
  const auto ci = norm_ci(norm(2.0, 10.0, 4.0, 400), 0.05, 0.05);
  CHECK(ci.lower == doctest::Approx(10 * (1 - 2 * z95 / 20)));
  CHECK(ci.upper == doctest::Approx(10 * (1 + 2 * z95 / 20)));
  CHECK(ci.lower == doctest::Approx(8.3551).epsilon(1e-5));
  CHECK(ci.upper == doctest::Approx(11.6449).epsilon(1e-5));

  const auto one = norm_ci(norm(2.0, 10.0, 4.0, 400), 0.0, 0.05);
  CHECK(std::isinf(one.lower));
  CHECK(one.lower < 0);
  CHECK(std::isinf(norm_ci(norm(2.0, 10.0, 4.0, 400), 0.05, 0.0).upper));

  const auto degenerate = norm_ci(norm(2.0, 10.0, 0.0, 400), 0.05, 0.05);
  CHECK(degenerate.lower == 10.0);
  CHECK(degenerate.upper == 10.0);

  for (double a : {-0.1, 0.6}) CHECK(kind_of([a] { norm_ci(norm(2.0, 1, 1, 10), a, 0.05); }) == ErrorKind::InvalidAlpha);
  CHECK(kind_of([] { norm_ci(norm(2.0, 1, 1, 10), 0.0, 0.0); }) == ErrorKind::InvalidAlpha);
}

TEST_CASE("sparsity confidence intervals") {
  auto s = estimate_sparsity(norm(2.0, 2.0, 3.0, 1100), norm(1.0, 4.0, 2.0, 1100));
  REQUIRE(s.vartheta_hat == doctest::Approx(22.0));
  const auto ci = sparsity_ci(s, 0.05, 0.05);
  CHECK(ci.lower == doctest::Approx(8 * (1 - z95 * 0.1)));
  CHECK(ci.upper == doctest::Approx(8 * (1 + z95 * 0.1)));
  CHECK(ci.lower == doctest::Approx(6.6844).epsilon(1e-4));
  CHECK(ci.upper == doctest::Approx(9.3156).epsilon(1e-4));
  CHECK(0.5 * (ci.lower + ci.upper) == doctest::Approx(8.0));

  const auto mid = sparsity_ci(s, 0.5, 0.5);
  CHECK(mid.lower == doctest::Approx(8.0));
  CHECK(mid.upper == doctest::Approx(8.0));

  for (double a1 : {0.01, 0.05, 0.1, 0.2}) {
    for (double a2 : {0.05, 0.1, 0.3, 0.5}) {
      if (a1 > a2) continue;
      const auto wide = sparsity_ci(s, a1, 0.1);
      const auto narrow = sparsity_ci(s, a2, 0.1);
      CHECK(wide.lower <= narrow.lower);
      CHECK(wide.upper >= narrow.upper);
    }
  }
}

TEST_CASE("sparsity test") {
  SparsityEstimate s;
  s.q = 2.0;
  s.s_hat = 5.0;
  s.vartheta_hat = 9.0;
  s.n1 = 450;
  s.nq = 450;
  const auto t = test_sparsity(s, 10.0, 0.05);
  CHECK(t.u_hat == doctest::Approx((1 + 3 * z95 / 30) * 5));
  CHECK(t.u_hat == doctest::Approx(5.8225).epsilon(1e-4));
  CHECK(t.reject);
  CHECK(t.u_hat_unsquared == doctest::Approx((1 + 9 * z95 / 30) * 5));

  const auto boundary = test_sparsity(s, t.u_hat, 0.05);
  CHECK_FALSE(boundary.reject);
  CHECK_FALSE(test_sparsity(s, 4.0, 0.05).reject);

  for (double kappa : {1.5, 5.5, 5.8, 6.0, 20.0}) {
    for (double alpha : {0.01, 0.05, 0.2, 0.5}) {
      const auto r = test_sparsity(s, kappa, alpha);
      const auto upper = sparsity_ci(s, 0.0, alpha);
      CHECK(r.reject == !upper.contains(kappa));
    }
  }
  CHECK(kind_of([&] { test_sparsity(s, 1.0, 0.05); }) == ErrorKind::InvalidKappa);
  CHECK(kind_of([&] { test_sparsity(s, 3.0, 0.0); }) == ErrorKind::InvalidAlpha);
  CHECK(kind_of([&] { test_sparsity(s, 3.0, 0.7); }) == ErrorKind::InvalidAlpha);
}

TEST_CASE("test power") {
  CHECK(test_power(10.0, 10.0, 0.05, 4.0, 400) == doctest::Approx(0.05));
  CHECK(test_power(1.0, 1e9, 0.05, 4.0, 400) == doctest::Approx(1.0));
  CHECK(test_power(5.0, 10.0, 0.05, 4.0, 400) == doctest::Approx(normal_cdf(10 - z95)));
  CHECK(test_power_unsquared(5.0, 10.0, 0.05, 4.0, 400) == doctest::Approx(normal_cdf(5 - z95)));
  CHECK(test_power(5.0, 6.0, 0.05, 4.0, 100) < test_power(5.0, 6.0, 0.05, 4.0, 1000));
}

TEST_CASE("tuning radii") {
  const auto r = tuning_radii(norm(1.0, 10.0, 4.0, 400), std::nullopt, 0.05);
  CHECK(r.r_hat == doctest::Approx(11.6449).epsilon(1e-5));
  CHECK_FALSE(r.varrho_hat.has_value());
  CHECK(tuning_radii(norm(1.0, 10.0, 4.0, 400), std::nullopt, 0.5).r_hat == doctest::Approx(10.0));

  const auto both = tuning_radii(norm(1.0, 10.0, 4.0, 400), norm(2.0, 4.0, 1.0, 100), 0.05);
  REQUIRE(both.varrho_hat.has_value());
  CHECK(*both.varrho_hat == doctest::Approx(4 * (1 + z95 / 10)));
  CHECK(*both.varrho_hat_sqrt == doctest::Approx(std::sqrt(*both.varrho_hat)));

  CHECK(kind_of([] { tuning_radii(norm(2.0, 1, 1, 10), std::nullopt, 0.05); }) == ErrorKind::WrongQ);
  CHECK(kind_of([] { tuning_radii(norm(1.0, 1, 1, 10), norm(1.5, 1, 1, 10), 0.05); }) == ErrorKind::WrongQ);
}

TEST_CASE("l1 radius coverage") {
  const Signal x = power_law_signal(300, 1.0);
  const double l1 = norm_pow(x.values(), 1.0);
  int covered = 0;
  for (int k = 0; k < 500; ++k) {
    const auto b = measure(x, 1000, 1.0, 1.0, 0.0, NoiseModel::none(), MeasureMode::induced, derive_key(555, k));
    const auto e = estimate_norm(b, NoiseModel::none(), 0.0);
    if (l1 <= tuning_radii(e, std::nullopt, 0.1).r_hat) ++covered;
  }
  CHECK(covered / 500.0 == doctest::Approx(0.9).epsilon(0.034));
}
