// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "numsparse/bounds.hpp"
#include "numsparse/deconv.hpp"
#include "numsparse/simlab.hpp"
#include "numsparse/sparsity.hpp"

using namespace numsparse;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Noiseless limiting variances, computed without the library.
// q = 2 with epsilon: (cosh(2u) - 1) / u^2 is increasing, so the minimum sits at u = eps^2.
double oracle_omega2(double eps) {
  const double u = eps * eps;
  return 2.0 * std::sinh(u) * std::sinh(u) / (u * u);
}

// q = 1: (e^{2c} - 1) / (2 c^2), stationary where e^{2c} (1 - c) = 1.
double oracle_omega1() {
  double lo = 0.5, hi = 0.99;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(2 * mid) * (1 - mid) - 1 > 0 ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);
  return std::expm1(2 * c) / (2 * c * c);
}

double oracle_vartheta2(double eps, double pi_bar) {
  // q = 2: (1/(1-q))^2 = 1, (q/(1-q))^2 = 4.
  return oracle_omega2(eps) / pi_bar + 4.0 * oracle_omega1() / (1.0 - pi_bar);
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (runtime limit exceeded)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s | %s | %.1fs\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome criterion1() {
  ExperimentConfig cfg;
  cfg.q = 2.0;
  for (std::size_t p : {10, 100, 1000, 10000}) cfg.signals.push_back(SignalSpec::power_law(p, 1.0));
  cfg.grid = {{500, 500}};
  cfg.replicates = 500;
  cfg.mode = MeasureMode::induced;
  cfg.explicit_validation = false;
  cfg.seed = 20240101;
  cfg.threads = worker_count();
  const auto res = run_relative_error(cfg);

  const double vartheta = oracle_vartheta2(0.3, 0.5);
  const double target = std::sqrt(2.0 * vartheta / kPi) / std::sqrt(500.0);
  bool ok = true;
  std::string detail = "target " + fmt("%.4f", target) + " means";
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    const auto& a = res.cells[i];
    detail += fmt(" %.4f", a.mean_abs_rel_err);
    if (!a.std_err || std::abs(a.mean_abs_rel_err / target - 1.0) > 0.25) ok = false;
    for (std::size_t j = i + 1; j < res.cells.size(); ++j) {
      const auto& b = res.cells[j];
      if (!a.std_err || !b.std_err) continue;
      const double pooled = std::sqrt(*a.std_err * *a.std_err + *b.std_err * *b.std_err);
      if (std::abs(a.mean_abs_rel_err - b.mean_abs_rel_err) > 3.0 * pooled) ok = false;
    }
  }
  detail += "; curve at n_total=1000 is " + fmt("%.4f", std::sqrt(2.0 * vartheta / kPi) / std::sqrt(1000.0));
  return {ok, detail};
}

Outcome criterion2() {
  ExperimentConfig cfg;
  cfg.q = 2.0;
  cfg.signals = {SignalSpec::power_law(10000, 1.0)};
  for (std::size_t n = 50; n <= 500; n += 50) cfg.grid.push_back({n, n});
  cfg.replicates = 500;
  cfg.mode = MeasureMode::induced;
  cfg.explicit_validation = false;
  cfg.seed = 77;
  cfg.threads = worker_count();
  const auto res = run_relative_error(cfg);
  const double vartheta = oracle_vartheta2(0.3, 0.5);
  bool ok = true;
  double worst = 0.0;
  for (const auto& c : res.cells) {
    if (c.n_total() < 400) continue;
    const double theory = std::sqrt(2.0 * vartheta / kPi) / std::sqrt(static_cast<double>(c.n_total()));
    const double dev = std::abs(c.mean_abs_rel_err / theory - 1.0);
    worst = std::max(worst, dev);
    if (!(dev <= 0.35)) ok = false;
  }
  return {ok, "worst relative deviation from curve " + fmt("%.3f", worst)};
}

ExperimentConfig clt_config(const NoiseModel& noise) {
  ExperimentConfig cfg;
  cfg.q = 2.0;
  cfg.signals = {SignalSpec::power_law(10000, 1.0)};  // unit l2 norm
  cfg.grid = {{1000, 1000}};
  cfg.eta0 = 0.3;
  cfg.sigmas = {0.1};
  cfg.noise = noise;
  cfg.replicates = 3000;
  cfg.mode = MeasureMode::induced;
  cfg.explicit_validation = false;
  cfg.alpha = 0.05;
  cfg.alpha_prime = 0.05;
  cfg.seed = 31337;
  cfg.threads = worker_count();
  return cfg;
}

Outcome criterion3() {
  const auto g = run_clt(clt_config(NoiseModel::gaussian()));
  const auto t = run_clt(clt_config(NoiseModel::student_t(2.0)));
  const bool ok = g.mean >= -0.1 && g.mean <= 0.1 && g.variance >= 0.85 && g.variance <= 1.15 &&
                  g.coverage >= 0.87 && g.coverage <= 0.93 && std::isfinite(t.ks) && t.ks > g.ks;
  std::string d = "mean " + fmt("%.4f", g.mean) + " var " + fmt("%.4f", g.variance) + " coverage " +
                  fmt("%.4f", g.coverage) + " KS gauss " + fmt("%.4f", g.ks) + " KS t(2) " + fmt("%.4f", t.ks);
  return {ok, d};
}

Outcome criterion4() {
  int bad_convex = 0, bad_unique = 0, cases = 0;
  for (double q : {0.5, 1.0, 1.5, 2.0}) {
    const auto noise = NoiseModel::stable(q);
    for (double rho : {0.0, 0.5, 1.0}) {
      ++cases;
      const double h = 0.01;
      auto f = [&](double u) { return variance_ext(std::pow(u, 1.0 / q), rho, q, noise); };
      for (double u = 0.01 + h; u <= 10.0 - h + 1e-12; u += h) {
        if (!(f(u - h) - 2.0 * f(u) + f(u + h) > 0.0)) {
          ++bad_convex;
          break;
        }
      }
      const auto m = minimize_variance(rho, q, noise, q == 2.0 ? 0.3 : 0.0);
      if (m.local_minima != 1 || m.near_tie) ++bad_unique;
    }
  }
  return {bad_convex == 0 && bad_unique == 0,
          std::to_string(cases) + " (q, rho) cases, " + std::to_string(bad_convex) + " non-convex, " +
              std::to_string(bad_unique) + " non-unique"};
}

Outcome criterion5() {
  CounterRng rng(5);
  int bad_path = 0, bad_nu = 0, bad_jensen = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform01() * 200);
    std::vector<double> v(p);
    for (auto& e : v) e = (rng.uniform01() - 0.5) * std::exp(6.0 * (rng.uniform01() - 0.5));
    const Signal x(v);
    const double q = k % 10 == 0 ? 1.0 : 4.0 * rng.uniform01();
    const double a = numerical_sparsity(x, q);
    const double b = std::exp(renyi_entropy(induced_distribution(x), q));
    if (!(std::abs(a - b) <= 1e-12 * std::max(1.0, a))) ++bad_path;
  }

  for (int k = 0; k < 1000; ++k) {
    const double q = 0.1 + 1.9 * rng.uniform01();
    const double gamma = 0.5 + rng.uniform01();
    const double sigma = 0.3 * rng.uniform01();
    const double t = 0.05 + rng.uniform01();
    std::vector<double> y(50);
    for (auto& e : y) e = 4.0 * (rng.uniform01() - 0.5);
    const auto noise = NoiseModel::gaussian();
    double re = 0.0;
    for (double e : y) re += std::cos(t * e);
    re /= static_cast<double>(y.size());
    const double r = re / std::exp(-0.5 * sigma * sigma * t * t);
    const double naive = -(r == 0.0 ? 1.0 : std::log(std::abs(r))) / std::pow(gamma * t, q);
    const double lib = nu_hat_at(y, t, q, gamma, sigma, noise);
    if (!(std::abs(lib - naive) <= 1e-12 * std::max(1.0, std::abs(naive)))) ++bad_nu;
  }

  const std::vector<NoiseModel> families{NoiseModel::none(), NoiseModel::gaussian(), NoiseModel::laplace(),
                                         NoiseModel::uniform(), NoiseModel::stable(1.0), NoiseModel::student_t(2.0)};
  long sampled = 0;
  for (const auto& nm : families) {
    for (double q : {0.3, 0.8, 1.0, 1.5, 2.0}) {
      for (double rho : {0.0, 0.25, 1.0, 3.0}) {
        for (double c = 0.01; c <= 5.0; c += 0.01) {
          ++sampled;
          const double v = variance_ext(c, rho, q, nm);
          if (!(v >= variance_lower_bound(c, q) * (1.0 - 1e-12))) ++bad_jensen;
        }
      }
    }
  }
  return {bad_path == 0 && bad_nu == 0 && bad_jensen == 0,
          "path mismatches " + std::to_string(bad_path) + ", nu mismatches " + std::to_string(bad_nu) +
              ", Jensen violations " + std::to_string(bad_jensen) + " of " + std::to_string(sampled)};
}

std::vector<double> random_abs_vector(CounterRng& rng, std::size_t p) {
  std::vector<double> v(p);
  for (auto& e : v) e = rng.uniform01() < 0.2 ? 0.0 : std::exp(4.0 * (rng.uniform01() - 0.5));
  v[0] += 0.1;
  return v;
}

double random_q(CounterRng& rng) {
  const double u = rng.uniform01();
  if (u < 0.05) return 0.0;
  if (u < 0.1) return 1.0;
  if (u < 0.15) return kInf;
  return 5.0 * rng.uniform01();
}

Outcome criterion6() {
  CounterRng rng(6);
  const int cases = 10000;
  int scale = 0, mono = 0, range = 0, schur = 0;
  for (int k = 0; k < cases; ++k) {
    const std::size_t p = 1 + static_cast<std::size_t>(rng.uniform01() * 50);
    const auto v = random_abs_vector(rng, p);
    const Signal x(v);
    const double q = random_q(rng);
    const double s = numerical_sparsity(x, q);

    const double c = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * std::exp(10.0 * (rng.uniform01() - 0.5));
    std::vector<double> cv(v);
    for (auto& e : cv) e *= c;
    if (!(std::abs(numerical_sparsity(Signal(cv), q) - s) <= 1e-9 * s)) ++scale;

    const double q2 = random_q(rng);
    const double lo = std::min(q, q2), hi = std::max(q, q2);
    if (!(numerical_sparsity(x, lo) >= numerical_sparsity(x, hi) * (1.0 - 1e-12))) ++mono;

    if (!(s >= 0.0 && s <= static_cast<double>(p) * (1.0 + 1e-12))) ++range;

    // A T-transform of v is majorized by v, so its s_q can only be larger.
    std::vector<double> w(v);
    if (p >= 2) {
      const std::size_t i = static_cast<std::size_t>(rng.uniform01() * p);
      std::size_t j = static_cast<std::size_t>(rng.uniform01() * (p - 1));
      if (j >= i) ++j;
      const double lam = rng.uniform01();
      w[i] = lam * v[i] + (1 - lam) * v[j];
      w[j] = lam * v[j] + (1 - lam) * v[i];
    }
    const Signal xw(w);
    if (!majorizes(xw, x) || !(numerical_sparsity(xw, q) >= s * (1.0 - 1e-12))) ++schur;
  }
  return {scale + mono + range + schur == 0,
          std::to_string(cases) + " cases each; failures scale " + std::to_string(scale) + ", monotone " +
              std::to_string(mono) + ", range " + std::to_string(range) + ", Schur " + std::to_string(schur)};
}

Outcome criterion7() {
  const std::size_t n = 10, p = 100;
  int successes = 0, residual_bad = 0;
  CounterRng master(7);
  for (int inst = 0; inst < 200; ++inst) {
    CounterRng rng = master.split(static_cast<std::uint64_t>(inst));
    Matrix a(n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) a(i, j) = standard_normal(rng);
    std::vector<double> x0(p);
    for (auto& e : x0) e = standard_normal(rng);
    const Signal sx0(x0);
    const auto r = adversarial_signal(a, sx0, 2.0, 50, rng);
    double diff2 = 0.0, xt2 = 0.0;
    const auto at = a.apply(r.x_tilde.values());
    const auto a0 = a.apply(x0);
    for (std::size_t i = 0; i < n; ++i) diff2 += (at[i] - a0[i]) * (at[i] - a0[i]);
    for (double e : r.x_tilde.values()) xt2 += e * e;
    if (!(std::sqrt(diff2) <= 1e-8 * a.frobenius_norm() * std::sqrt(xt2))) ++residual_bad;
    if (r.success) ++successes;
  }
  const double freq = successes / 200.0;
  return {freq >= 0.95 && residual_bad == 0,
          "success frequency " + fmt("%.3f", freq) + ", fiber violations " + std::to_string(residual_bad)};
}

Outcome criterion8() {
  CounterRng rng(8);
  int bad = 0, bad_scaling = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t p = 2 + static_cast<std::size_t>(rng.uniform01() * 5000);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * (p - 1));
    const double s2 = 1.0 + rng.uniform01() * (p - 1.0);
    const double noise = rng.uniform01();
    const double pp = static_cast<double>(p), nn = static_cast<double>(n);
    const double up = 0.7 * noise + 1.3 * std::sqrt(s2 * std::log(pp * std::exp(1.0) / nn) / nn);
    if (!(std::abs(bpdn_upper_bound(s2, n, p, noise, 0.7, 1.3) - up) <= 1e-12 * std::max(1.0, up))) ++bad;

    for (double q : {0.0, 1.0, 2.0, 3.0, kInf}) {
      const double gap = 1.0 - nn / pp;
      const double raw = q <= 2.0
                             ? gap * gap / (2.0 * kPi * std::exp(1.0)) - 0.5 / pp
                             : gap / std::sqrt(2.0 * kPi * std::exp(1.0)) / (1.0 + std::sqrt(16.0 * std::log(2.0 * pp))) -
                                   0.5 / pp;
      const auto lb = minimax_lower_bound(n, p, q);
      if (!(std::abs(lb.raw - raw) <= 1e-12) || !(std::abs(lb.value - std::max(raw, 0.0)) <= 1e-12)) ++bad;
    }

    if (s2 * 4.0 <= pp) {
      const double r1 = bpdn_upper_bound(s2, n, p, 0.0);
      const double r4 = bpdn_upper_bound(4.0 * s2, n, p, 0.0);
      if (!(std::abs(r4 / r1 - 2.0) <= 1e-12)) ++bad_scaling;
    }
  }
  return {bad == 0 && bad_scaling == 0,
          "oracle mismatches " + std::to_string(bad) + ", scaling mismatches " + std::to_string(bad_scaling)};
}

}  // namespace

int main() {
  run(1, "dimension-free relative error at (500,500)", 120, criterion1);
  run(2, "relative error tracks the theory curve", 180, criterion2);
  run(3, "CLT calibration at (1000,1000)", 120, criterion3);
  run(4, "convexity and unique minimizer of the variance", 0, criterion4);
  run(5, "exact-math oracles", 0, criterion5);
  run(6, "sparsity property suites", 0, criterion6);
  run(7, "adversarial null-space construction", 60, criterion7);
  run(8, "bound calculators", 0, criterion8);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
