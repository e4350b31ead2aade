#include "numsparse/inference.hpp"

#include <cmath>

#include "numsparse/error.hpp"
#include "numsparse/stats.hpp"

namespace numsparse {

namespace {

void validate_alphas(double alpha, double alpha_prime) {
  const auto ok = [](double a) { return a >= 0.0 && a <= 0.5; };
  if (!ok(alpha) || !ok(alpha_prime)) throw Error(ErrorKind::InvalidAlpha, "alpha and alpha' must lie in [0, 1/2]");
  if (alpha == 0.0 && alpha_prime == 0.0) throw Error(ErrorKind::InvalidAlpha, "alpha and alpha' cannot both be 0");
}

}  // namespace

ConfidenceInterval relative_interval(double center, double variance, double n, double alpha, double alpha_prime) {
  validate_alphas(alpha, alpha_prime);
  ConfidenceInterval ci;
  ci.alpha = alpha;
  ci.alpha_prime = alpha_prime;
  const double sd = std::sqrt(variance) / std::sqrt(n);
  ci.lower = alpha == 0.0 ? -kInf : (1.0 - sd * normal_quantile(1.0 - alpha)) * center;
  ci.upper = alpha_prime == 0.0 ? kInf : (1.0 + sd * normal_quantile(1.0 - alpha_prime)) * center;
  return ci;
}

SparsityEstimate estimate_sparsity(const NormEstimate& est_q, const NormEstimate& est_1) {
  const double q = est_q.q;
  validate_q(q);
  if (std::abs(q - 1.0) < kMinDistanceFromOne) {
    throw Error(ErrorKind::QTooCloseToOne, "q must differ from 1 for the q-batch (|q - 1| >= 0.05)");
  }
  if (est_1.q != 1.0) throw Error(ErrorKind::WrongQ, "the l1 estimate must have q = 1");
  if (!(est_q.nu_hat > 0.0) || !(est_1.nu_hat > 0.0)) {
    throw Error(ErrorKind::NonPositiveNormEstimate, "norm estimates must be positive to form s_q");
  }
  SparsityEstimate s;
  s.q = q;
  s.part_q = est_q;
  s.part_1 = est_1;
  s.nq = est_q.n;
  s.n1 = est_1.n;
  s.pi_q = static_cast<double>(s.nq) / static_cast<double>(s.nq + s.n1);
  const double e1 = 1.0 / (1.0 - q);
  const double eq = q / (1.0 - q);
  s.s_hat = std::exp(e1 * std::log(est_q.nu_hat) - eq * std::log(est_1.nu_hat));
  s.vartheta_hat = est_q.omega_hat / s.pi_q * e1 * e1 + est_1.omega_hat / (1.0 - s.pi_q) * eq * eq;
  return s;
}

ConfidenceInterval norm_ci(const NormEstimate& est, double alpha, double alpha_prime) {
  return relative_interval(est.nu_hat, est.omega_hat, static_cast<double>(est.n), alpha, alpha_prime);
}

ConfidenceInterval sparsity_ci(const SparsityEstimate& est, double alpha, double alpha_prime) {
  return relative_interval(est.s_hat, est.vartheta_hat, static_cast<double>(est.n_total()), alpha, alpha_prime);
}

SparsityTest test_sparsity(const SparsityEstimate& est, double kappa, double alpha) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw Error(ErrorKind::InvalidKappa, "kappa must be > 1");
  if (!(alpha > 0.0 && alpha <= 0.5)) throw Error(ErrorKind::InvalidAlpha, "alpha must lie in (0, 1/2]");
  SparsityTest t;
  t.kappa = kappa;
  t.alpha = alpha;
  const double z = normal_quantile(1.0 - alpha);
  const double root_n = std::sqrt(static_cast<double>(est.n_total()));
  t.u_hat = (1.0 + std::sqrt(est.vartheta_hat) * z / root_n) * est.s_hat;
  t.u_hat_unsquared = (1.0 + est.vartheta_hat * z / root_n) * est.s_hat;
  t.reject = t.u_hat < kappa;
  return t;
}

double test_power(double s_true, double kappa, double alpha, double vartheta, std::size_t n_total) {
  return test_power_unsquared(s_true, kappa, alpha, std::sqrt(vartheta), n_total);
}

double test_power_unsquared(double s_true, double kappa, double alpha, double vartheta, std::size_t n_total) {
  if (!(s_true > 0.0)) throw Error(ErrorKind::InvalidArgument, "true sparsity must be positive");
  if (!(vartheta > 0.0)) throw Error(ErrorKind::InvalidArgument, "vartheta must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidAlpha, "alpha must lie in (0, 1)");
  const double z = normal_quantile(1.0 - alpha);
  const double arg = std::sqrt(static_cast<double>(n_total)) / vartheta * (kappa / s_true - 1.0) - z;
  return normal_cdf(arg);
}

TuningRadii tuning_radii(const NormEstimate& est_1, const std::optional<NormEstimate>& est_2, double alpha_prime) {
  if (est_1.q != 1.0) throw Error(ErrorKind::WrongQ, "r_hat needs an l1 estimate (q = 1)");
  if (est_2 && est_2->q != 2.0) throw Error(ErrorKind::WrongQ, "varrho_hat needs an l2 estimate (q = 2)");
  TuningRadii out;
  out.r_hat = norm_ci(est_1, 0.0, alpha_prime).upper;
  if (est_2) {
    out.varrho_hat = norm_ci(*est_2, 0.0, alpha_prime).upper;
    out.varrho_hat_sqrt = std::sqrt(*out.varrho_hat);
  }
  return out;
}

}  // namespace numsparse
