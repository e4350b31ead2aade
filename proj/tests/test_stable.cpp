#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "numsparse/error.hpp"
#include "numsparse/rng.hpp"
#include "numsparse/sparsity.hpp"
#include "numsparse/stable.hpp"
#include "numsparse/stats.hpp"
#include "oracles.hpp"

using namespace numsparse;

namespace {

double ecf_re(const std::vector<double>& v, double t) {
  double s = 0.0;
  for (double e : v) s += std::cos(t * e);
  return s / static_cast<double>(v.size());
}

std::vector<NoiseModel> all_families() {
  return {NoiseModel::gaussian(),   NoiseModel::laplace(),      NoiseModel::uniform(),
          NoiseModel::stable(0.7),  NoiseModel::stable(1.5),    NoiseModel::student_t(2.0),
          NoiseModel::student_t(3.0), NoiseModel::student_t(4.5), NoiseModel::none()};
}

}  // namespace

TEST_CASE("rng determinism and splitting") {
  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto va = a(), vb = b();
    CHECK(va == vb);
    CHECK(va != c());
  }
  CHECK(a.counter() == 100);
  CounterRng s1 = a.split(3), s2 = b.split(3), s3 = a.split(4);
  CHECK(s1() == s2());
  CHECK(s1() != s3());
  CounterRng u(7);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform01();
    CHECK((x > 0.0 && x < 1.0));
  }
}

TEST_CASE("stable sampler") {
  CounterRng rng(1);
  CHECK(sample_stable(0.7, 1.0, 0, rng).empty());
  CHECK_THROWS_AS(sample_stable(0.0, 1.0, 5, rng), Error);
  CHECK_THROWS_AS(sample_stable(2.5, 1.0, 5, rng), Error);

  const auto g = sample_stable(2.0, 1.0, 1000000, rng);
  CHECK(sample_variance(g) == doctest::Approx(2.0).epsilon(0.005));

  const auto s = sample_stable(0.7, 1.0, 1000000, rng);
  CHECK(std::abs(ecf_re(s, 1.0) - std::exp(-1.0)) < 0.005);

  for (double q : {0.5, 1.0, 1.3, 2.0}) {
    const double gamma = 1.7;
    const auto v = sample_stable(q, gamma, 200000, rng);
    for (double t : {0.2, 0.5, 1.0}) CHECK(std::abs(ecf_re(v, t) - std::exp(-std::pow(gamma * t, q))) < 0.01);
  }
}

TEST_CASE("stability closure") {
  CounterRng rng(2);
  for (double q : {0.6, 1.0, 1.4, 2.0}) {
    const auto a = sample_stable(q, 1.0, 300000, rng);
    const auto b = sample_stable(q, 1.0, 300000, rng);
    std::vector<double> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = (a[i] + b[i]) * std::pow(2.0, -1.0 / q);
    for (double t : {0.3, 1.0, 2.0}) CHECK(std::abs(ecf_re(s, t) - std::exp(-std::pow(t, q))) < 0.01);
  }
}

TEST_CASE("noise characteristic functions") {
  for (const auto& m : all_families()) {
    CHECK(noise_cf(m, 0.0) == doctest::Approx(1.0));
    for (double t = -20.0; t <= 20.0; t += 0.137) {
      CHECK(noise_cf(m, t) == noise_cf(m, -t));
      CHECK(std::abs(noise_cf(m, t)) <= 1.0);
    }
  }
  CHECK(noise_cf(NoiseModel::stable(1.0), 2.0) == doctest::Approx(0.13534).epsilon(1e-4));
  CHECK(noise_cf(NoiseModel::gaussian(), 1.5) == doctest::Approx(std::exp(-1.125)));
  CHECK(noise_cf(NoiseModel::laplace(), 2.0) == doctest::Approx(0.2));
  CHECK(noise_cf(NoiseModel::uniform(), 2.0) == doctest::Approx(std::sin(2.0) / 2.0));
  CHECK(noise_cf(NoiseModel::none(), 123.0) == 1.0);
  // sqrt(2) K1(sqrt(2)) = 0.444343; independent value from the quadrature oracle below
  CHECK(noise_cf(NoiseModel::student_t(2.0), 1.0) == doctest::Approx(0.4443425236).epsilon(1e-9));
  const double r3 = std::sqrt(3.0);
  CHECK(noise_cf(NoiseModel::student_t(3.0), 0.8) == doctest::Approx(std::exp(-r3 * 0.8) * (1 + r3 * 0.8)));
}

TEST_CASE("student t characteristic function against quadrature") {
  for (double nu : {2.0, 3.0, 4.5, 1.5}) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double q = oracle::student_t_cf(nu, t);
      CHECK(noise_cf(NoiseModel::student_t(nu), t) == doctest::Approx(q).epsilon(1e-8));
    }
  }
}

TEST_CASE("noise model parsing") {
  CHECK(NoiseModel::parse("gaussian") == NoiseModel::gaussian());
  CHECK(NoiseModel::parse("stable(1.5)") == NoiseModel::stable(1.5));
  CHECK(NoiseModel::parse("student_t(2)") == NoiseModel::student_t(2.0));
  for (const auto& m : all_families()) CHECK(NoiseModel::parse(m.name()) == m);
  for (const char* bad : {"cauchy", "stable(3)", "student_t(1)", "student_t(x)", ""}) {
    try {
      NoiseModel::parse(bad);
      FAIL("expected an error for " << bad);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::UnsupportedFamily || e.kind() == ErrorKind::InvalidQ));
    }
  }
}

TEST_CASE("noise sampler matches its characteristic function") {
  CounterRng rng(3);
  for (const auto& m : all_families()) {
    CHECK(sample_noise(m, 0, rng).empty());
    const auto v = sample_noise(m, 1000000, rng);
    double worst = 0.0;
    for (double t = 0.0; t <= 5.0 + 1e-9; t += 0.25) worst = std::max(worst, std::abs(ecf_re(v, t) - noise_cf(m, t)));
    INFO(m.name());
    CHECK(worst < 0.01);
  }
  const auto g = sample_noise(NoiseModel::gaussian(), 1000000, rng);
  CHECK(std::abs(sample_mean(g)) < 0.005);
  const auto t2 = sample_noise(NoiseModel::student_t(2.0), 1000000, rng);
  CHECK(std::abs(ecf_re(t2, 1.0) - oracle::student_t_cf(2.0, 1.0)) < 0.01);
}

TEST_CASE("measurement batches") {
  const Signal x = power_law_signal(200, 0.8);
  const double l2 = lq_norm(x.values(), 2.0);
  const auto b = measure(x, 100000, 2.0, 1.3, 0.0, NoiseModel::none(), MeasureMode::induced, 9);
  std::vector<double> z(b.y);
  for (auto& e : z) e /= 1.3 * l2;
  CHECK(sample_variance(z) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(b.n == 100000);
  CHECK(b.warnings.empty());

  const auto zero = measure(Signal({0.0}), 1, 2.0, 1.0, 0.0, NoiseModel::gaussian(), MeasureMode::induced, 1);
  CHECK(zero.y == std::vector<double>{0.0});
  CHECK(zero.warnings.size() == 1);

  const auto again = measure(x, 500, 1.0, 1.0, 0.3, NoiseModel::student_t(2.0), MeasureMode::explicit_matrix, 5);
  const auto same = measure(x, 500, 1.0, 1.0, 0.3, NoiseModel::student_t(2.0), MeasureMode::explicit_matrix, 5);
  const auto other = measure(x, 500, 1.0, 1.0, 0.3, NoiseModel::student_t(2.0), MeasureMode::explicit_matrix, 6);
  CHECK(again.y == same.y);
  CHECK(again.y != other.y);

  CHECK_THROWS_AS(measure(x, 0, 2.0, 1.0, 0.0, NoiseModel::none(), MeasureMode::induced, 1), Error);
  CHECK_THROWS_AS(measure(x, 5, 2.1, 1.0, 0.0, NoiseModel::none(), MeasureMode::induced, 1), Error);
  CHECK_THROWS_AS(measure(x, 5, 2.0, 1.0, -1.0, NoiseModel::none(), MeasureMode::induced, 1), Error);
}

TEST_CASE("explicit and induced modes draw the same law") {
  CounterRng rng(11);
  std::vector<double> v(50);
  for (auto& e : v) e = standard_normal(rng);
  const Signal x(v);
  for (double q : {1.0, 2.0}) {
    const auto e = measure(x, 10000, q, 1.0, 0.2, NoiseModel::gaussian(), MeasureMode::explicit_matrix, 100);
    const auto i = measure(x, 10000, q, 1.0, 0.2, NoiseModel::gaussian(), MeasureMode::induced, 200);
    CHECK(e.mode == MeasureMode::explicit_matrix);
    CHECK(ks_statistic_two_sample(e.y, i.y) < 0.02);
  }
}

TEST_CASE("measure mode names") {
  CHECK(parse_measure_mode("explicit") == MeasureMode::explicit_matrix);
  CHECK(parse_measure_mode("induced") == MeasureMode::induced);
  CHECK(to_string(MeasureMode::explicit_matrix) == "explicit");
  CHECK_THROWS_AS(parse_measure_mode("matrix"), Error);
}
