#include "numsparse/deconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "numsparse/error.hpp"

namespace numsparse {

namespace {

constexpr double kGridStep = 0.01;
constexpr double kGridCap = 50.0;
constexpr double kGoldenTol = 1e-6;
constexpr double kEta0Cap = 10.0;

struct NuHat {
  double value = 1.0;
  double ratio = 1.0;  // Re(ecf / phi0); NaN when a degenerate convention applied
};

NuHat nu_hat_detail(std::span<const double> y, double t, double q, double gamma, double sigma,
                    const NoiseModel& noise) {
  if (y.empty()) throw Error(ErrorKind::EmptyBatch, "empty measurement batch");
  NuHat out;
  out.ratio = std::numeric_limits<double>::quiet_NaN();
  if (t == 0.0) return out;
  const double phi = noise_cf(noise, sigma * t);
  if (std::abs(phi) < kCfRootTolerance) return out;
  out.ratio = ecf(y, t).real() / phi;
  const double log_plus = out.ratio == 0.0 ? 1.0 : std::log(std::abs(out.ratio));
  out.value = -log_plus / std::pow(gamma * std::abs(t), q);
  return out;
}

double golden_section(double lo, double hi, double q, double rho, const NoiseModel& noise) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = variance_ext(c, rho, q, noise);
  double fd = variance_ext(d, rho, q, noise);
  while (b - a > kGoldenTol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = variance_ext(c, rho, q, noise);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = variance_ext(d, rho, q, noise);
    }
  }
  return fc <= fd ? c : d;
}

void validate_epsilon(double q, double epsilon_q) {
  if (q < 2.0 && epsilon_q != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "epsilon_q must be 0 for q < 2");
  }
  if (q == 2.0 && !(epsilon_q > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon_2 must be positive");
  }
}

}  // namespace

std::complex<double> ecf(std::span<const double> y, double t) {
  if (y.empty()) throw Error(ErrorKind::EmptyBatch, "empty measurement batch");
  double re = 0.0;
  double im = 0.0;
  for (double v : y) {
    re += std::cos(t * v);
    im += std::sin(t * v);
  }
  const double n = static_cast<double>(y.size());
  return {re / n, im / n};
}

double nu_hat_at(std::span<const double> y, double t, double q, double gamma, double sigma,
                 const NoiseModel& noise) {
  return nu_hat_detail(y, t, q, gamma, sigma, noise).value;
}

double mad_statistic(std::span<const double> y) {
  if (y.empty()) throw Error(ErrorKind::EmptyBatch, "empty measurement batch");
  std::vector<double> a(y.size());
  std::transform(y.begin(), y.end(), a.begin(), [](double v) { return std::abs(v); });
  const std::size_t mid = a.size() / 2;
  std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid), a.end());
  double med = a[mid];
  if (a.size() % 2 == 0) {
    const double lower = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (lower + med);
  }
  if (!(med > 0.0)) {
    throw Error(ErrorKind::AllZero, "median absolute measurement is zero; pilot scale undefined");
  }
  return med;
}

double find_eta0(const NoiseModel& noise) {
  for (double step : {0.01, 0.001, 0.0001}) {
    if (!(noise_cf(noise, step) > 0.5)) continue;
    const auto max_k = static_cast<long>(std::llround(kEta0Cap / step));
    long k = 1;
    while (k < max_k && noise_cf(noise, static_cast<double>(k + 1) * step) > 0.5) ++k;
    return static_cast<double>(k) * step;
  }
  throw Error(ErrorKind::NoEta0, "noise CF drops below 1/2 before eta = 1e-4");
}

double variance_ext(double c, double rho, double q, const NoiseModel& noise) {
  if (!(c > 0.0)) return kInf;
  const double phi1 = noise_cf(noise, rho * c);
  if (std::abs(phi1) < kCfRootTolerance) return kInf;
  const double phi2 = noise_cf(noise, 2.0 * rho * c);
  const double u = std::pow(c, q);
  const double kappa = 2.0 - std::pow(2.0, q);
  // (e^{2u}/2 + phi2 e^{kappa u}/2 - phi1^2) written with expm1 for small u.
  const double num = 0.5 * std::expm1(2.0 * u) + 0.5 * phi2 * std::expm1(kappa * u) + 0.5 * (phi2 - 1.0) +
                     (1.0 - phi1) * (1.0 + phi1);
  const double v = num / (phi1 * phi1 * u * u);
  return std::isnan(v) ? kInf : v;
}

double variance_lower_bound(double c, double q) {
  if (!(c > 0.0)) return kInf;
  const double u = std::pow(c, q);
  const double kappa = 2.0 - std::pow(2.0, q);
  return (0.5 * std::expm1(2.0 * u) + 0.5 * std::expm1(kappa * u)) / (u * u);
}

VarianceMinimum minimize_variance(double rho, double q, const NoiseModel& noise, double epsilon_q) {
  validate_q(q);
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::InvalidArgument, "rho must be finite and >= 0");
  validate_epsilon(q, epsilon_q);

  const double lo = std::max(epsilon_q, kGridStep);
  std::vector<double> values;
  double best = kInf;
  std::size_t best_k = 0;
  double c_max = lo;
  for (std::size_t k = 0;; ++k) {
    const double c = lo + static_cast<double>(k) * kGridStep;
    if (c > kGridCap + 1e-12) break;
    c_max = c;
    const double v = variance_ext(c, rho, q, noise);
    values.push_back(v);
    if (v < best) {
      best = v;
      best_k = k;
    }
    if (variance_lower_bound(c, q) > best) break;
  }

  VarianceMinimum out;
  out.c_max = c_max;
  // Local minima on the grid; used for the uniqueness diagnostic.
  std::vector<double> minima;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) continue;
    const bool left = k == 0 || values[k] < values[k - 1];
    const bool right = k + 1 == values.size() || values[k] <= values[k + 1];
    if (left && right) minima.push_back(values[k]);
  }
  out.local_minima = static_cast<int>(minima.size());

  const double c_grid = lo + static_cast<double>(best_k) * kGridStep;
  if (!std::isfinite(best)) {
    out.c_star = c_grid;
    out.v_min = best;
    return out;
  }
  const double a = std::max(epsilon_q, c_grid - kGridStep);
  const double b = c_grid + kGridStep;
  const double c_gold = golden_section(a > 0.0 ? a : 0.5 * c_grid, b, q, rho, noise);
  const double v_gold = variance_ext(c_gold, rho, q, noise);
  if (v_gold < best && c_gold >= epsilon_q) {
    out.c_star = c_gold;
    out.v_min = v_gold;
  } else {
    out.c_star = c_grid;
    out.v_min = best;
  }
  const double tie_tol = 1e-6 * std::max(1.0, std::abs(out.v_min));
  int close = 0;
  for (double m : minima) {
    if (std::abs(m - best) <= tie_tol) ++close;
  }
  out.near_tie = close > 1;
  return out;
}

NormEstimate estimate_norm(std::span<const double> y, double q, double gamma, double sigma,
                           const NoiseModel& noise, double epsilon_q, std::optional<double> eta0_override) {
  validate_q(q);
  validate_epsilon(q, epsilon_q);
  if (y.empty()) throw Error(ErrorKind::EmptyBatch, "empty measurement batch");
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (!(sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be >= 0");

  TuningState ts;
  ts.epsilon_q = epsilon_q;
  ts.m_hat = mad_statistic(y);
  ts.t_initial = 1.0 / ts.m_hat;
  if (eta0_override) {
    if (!(*eta0_override > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta0 override must be positive");
    ts.eta0 = *eta0_override;
  } else {
    ts.eta0 = find_eta0(noise);
  }
  ts.t_pilot = sigma > 0.0 ? std::min(ts.t_initial, ts.eta0 / sigma) : ts.t_initial;
  ts.nu_pilot = nu_hat_at(y, ts.t_pilot, q, gamma, sigma, noise);
  if (!(ts.nu_pilot > 0.0) || !std::isfinite(ts.nu_pilot)) {
    throw Error(ErrorKind::PilotFailure,
                "pilot estimate nu(t_pilot) = " + std::to_string(ts.nu_pilot) + " is not positive");
  }
  const double scale = gamma * std::pow(ts.nu_pilot, 1.0 / q);
  ts.rho_hat = sigma / scale;
  const auto vm = minimize_variance(ts.rho_hat, q, noise, epsilon_q);
  ts.c_star = vm.c_star;
  ts.near_tie = vm.near_tie;
  ts.local_minima = vm.local_minima;
  ts.t_opt = ts.c_star / scale;

  const auto nu = nu_hat_detail(y, ts.t_opt, q, gamma, sigma, noise);
  ts.negative_real_part = nu.ratio < 0.0;

  NormEstimate est;
  est.q = q;
  est.nu_hat = nu.value;
  est.omega_hat = vm.v_min;
  est.n = y.size();
  est.tuning = ts;
  return est;
}

NormEstimate estimate_norm(const MeasurementBatch& batch, const NoiseModel& noise, double epsilon_q,
                           std::optional<double> eta0_override) {
  return estimate_norm(batch.y, batch.q, batch.gamma, batch.sigma, noise, epsilon_q, eta0_override);
}

}  // namespace numsparse
