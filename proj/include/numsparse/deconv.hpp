#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>

#include "numsparse/stable.hpp"

namespace numsparse {

/// Threshold below which |phi0| is treated as a root of the noise CF.
inline constexpr double kCfRootTolerance = 1e-12;

/// Empirical characteristic function (1/n) sum_k exp(i t y_k).
std::complex<double> ecf(std::span<const double> y, double t);

/// Deconvolved norm estimate at a fixed tuning parameter t:
///
///   nu(t) = -Log+( Re(ecf(t) / phi0(sigma t)) ) / (gamma^q |t|^q)
///
/// with Log+(r) = log|r| for r != 0 and Log+(0) = 1. Returns 1 when t = 0 or
/// phi0(sigma t) is a root.
double nu_hat_at(std::span<const double> y, double t, double q, double gamma, double sigma,
                 const NoiseModel& noise);

/// Median of |y_1|, ..., |y_n|; even n averages the two middle values.
double mad_statistic(std::span<const double> y);

/// Largest eta0 = k * 0.01 with phi0 > 1/2 on the whole grid [0, eta0],
/// capped at 10. The grid is refined by 10x up to twice before giving up.
double find_eta0(const NoiseModel& noise);

/// Extended asymptotic variance of nu_hat(t) / ||x||_q^q at c = gamma t ||x||_q
/// and noise-to-signal ratio rho. +inf at c <= 0 and at roots of phi0(rho c).
double variance_ext(double c, double rho, double q, const NoiseModel& noise);

/// rho-free lower bound on variance_ext obtained from phi0^2 <= (1 + phi0(2.))/2
/// and |phi0| <= 1.
double variance_lower_bound(double c, double q);

struct VarianceMinimum {
  double c_star = 0.0;
  double v_min = 0.0;
  double c_max = 0.0;        // where the grid scan stopped
  int local_minima = 0;      // distinct local minima seen on the grid
  bool near_tie = false;     // another local minimum within 1e-6 of v_min
};

/// argmin over c >= max(epsilon_q, 0.01) of variance_ext(., rho): grid scan
/// with step 0.01 until the lower bound exceeds the running best (c <= 50),
/// then golden-section refinement to 1e-6. Ties go to the smaller c.
VarianceMinimum minimize_variance(double rho, double q, const NoiseModel& noise, double epsilon_q);

struct TuningState {
  double m_hat = 0.0;
  double t_initial = 0.0;
  double eta0 = 0.0;
  double t_pilot = 0.0;
  double nu_pilot = 0.0;
  double rho_hat = 0.0;
  double c_star = 0.0;
  double t_opt = 0.0;
  double epsilon_q = 0.0;
  bool negative_real_part = false;  // Re(ecf / phi0) < 0 at t_opt
  bool near_tie = false;
  int local_minima = 0;
};

struct NormEstimate {
  double q = 0.0;
  double nu_hat = 0.0;     // estimate of ||x||_q^q
  double omega_hat = 0.0;  // variance proxy at (c_star, rho_hat)
  std::size_t n = 0;
  TuningState tuning;
};

/// Adaptive estimator of ||x||_q^q: pilot from the median absolute value,
/// noise-to-signal estimate, variance-optimal c*, then nu_hat(t_opt).
/// epsilon_q must be 0 for q < 2 and positive for q = 2. Throws PilotFailure
/// when the pilot estimate is not positive.
NormEstimate estimate_norm(std::span<const double> y, double q, double gamma, double sigma,
                           const NoiseModel& noise, double epsilon_q,
                           std::optional<double> eta0_override = std::nullopt);

NormEstimate estimate_norm(const MeasurementBatch& batch, const NoiseModel& noise, double epsilon_q,
                           std::optional<double> eta0_override = std::nullopt);

}  // namespace numsparse
