#pragma once

#include <cstddef>
#include <optional>

#include "numsparse/deconv.hpp"

namespace numsparse {

/// s_q estimate assembled from an l_q and an l_1 norm estimate built on
/// independent measurement sets.
struct SparsityEstimate {
  double q = 0.0;
  double s_hat = 0.0;
  double vartheta_hat = 0.0;
  std::size_t n1 = 0;
  std::size_t nq = 0;
  double pi_q = 0.0;  // nq / (n1 + nq)
  NormEstimate part_q;
  NormEstimate part_1;

  std::size_t n_total() const noexcept { return n1 + nq; }
};

/// Interval endpoints; a one-sided interval uses -inf / +inf on the open side.
struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;
  double alpha_prime = 0.0;

  bool contains(double v) const noexcept { return lower <= v && v <= upper; }
};

struct SparsityTest {
  double kappa = 0.0;
  double alpha = 0.0;
  double u_hat = 0.0;  // one-sided upper confidence bound for s_q
  bool reject = false;  // H0: s_q >= kappa is rejected iff u_hat < kappa
  // Same bound with vartheta in place of sqrt(vartheta); reported for comparison.
  double u_hat_unsquared = 0.0;
};

struct TuningRadii {
  double r_hat = 0.0;
  std::optional<double> varrho_hat;       // radius for ||x||_2^2
  std::optional<double> varrho_hat_sqrt;  // its square root, a radius for ||x||_2
};

/// Smallest allowed |q - 1| when forming s_q estimates.
inline constexpr double kMinDistanceFromOne = 0.05;

SparsityEstimate estimate_sparsity(const NormEstimate& est_q, const NormEstimate& est_1);

ConfidenceInterval norm_ci(const NormEstimate& est, double alpha, double alpha_prime);

ConfidenceInterval sparsity_ci(const SparsityEstimate& est, double alpha, double alpha_prime);

SparsityTest test_sparsity(const SparsityEstimate& est, double kappa, double alpha);

/// Asymptotic power Phi( sqrt(n) / sqrt(vartheta) * (kappa / s - 1) - z_{1-alpha} ).
double test_power(double s_true, double kappa, double alpha, double vartheta, std::size_t n_total);

/// Power with vartheta (not its root) in the denominator.
double test_power_unsquared(double s_true, double kappa, double alpha, double vartheta, std::size_t n_total);

/// Lasso / Elastic-Net constraint radii from one-sided upper bounds on
/// ||x||_1 and ||x||_2^2.
TuningRadii tuning_radii(const NormEstimate& est_1, const std::optional<NormEstimate>& est_2, double alpha_prime);

/// (1 - sqrt(var) z_{1-alpha} / sqrt(n)) * center, (1 + sqrt(var) z_{1-alpha'} / sqrt(n)) * center
ConfidenceInterval relative_interval(double center, double variance, double n, double alpha, double alpha_prime);

}  // namespace numsparse
