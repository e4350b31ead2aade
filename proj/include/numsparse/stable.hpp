#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numsparse/rng.hpp"
#include "numsparse/sparsity.hpp"

namespace numsparse {

enum class NoiseFamily { none, gaussian, laplace, stable, uniform, student_t };

/// Standardized symmetric noise law F0; sigma multiplies samples externally.
///   gaussian   N(0,1)                 phi0(t) = exp(-t^2/2)
///   laplace    density exp(-|u|)/2    phi0(t) = 1/(1+t^2)
///   stable     stable_q0(1)           phi0(t) = exp(-|t|^q0)
///   uniform    U[-1,1]                phi0(t) = sin(t)/t
///   student_t  t_nu, nu > 1           Bessel-K form
///   none       point mass at 0        phi0(t) = 1
struct NoiseModel {
  NoiseFamily family = NoiseFamily::gaussian;
  double param = 0.0;  // q0 for stable, nu for student_t; unused otherwise

  static NoiseModel none() { return {NoiseFamily::none, 0.0}; }
  static NoiseModel gaussian() { return {NoiseFamily::gaussian, 0.0}; }
  static NoiseModel laplace() { return {NoiseFamily::laplace, 0.0}; }
  static NoiseModel uniform() { return {NoiseFamily::uniform, 0.0}; }
  static NoiseModel stable(double q0);
  static NoiseModel student_t(double nu);

  /// Parses "gaussian", "laplace", "uniform", "none", "stable(1.5)",
  /// "student_t(2)". Throws UnsupportedFamily otherwise.
  static NoiseModel parse(const std::string& text);
  std::string name() const;

  bool operator==(const NoiseModel&) const = default;
};

/// i.i.d. draws from stable_q(gamma), characteristic function exp(-|gamma t|^q).
std::vector<double> sample_stable(double q, double gamma, std::size_t count, CounterRng& rng);

/// Exact characteristic function phi0(t) of the standardized noise law.
double noise_cf(const NoiseModel& model, double t);

std::vector<double> sample_noise(const NoiseModel& model, std::size_t count, CounterRng& rng);

double standard_normal(CounterRng& rng);

enum class MeasureMode { explicit_matrix, induced };

std::string to_string(MeasureMode mode);
MeasureMode parse_measure_mode(const std::string& text);

/// n scalar observations y_i = <a_i, x> + sigma * eps_i with
/// a_i ~ stable_q(gamma_q)^p.
struct MeasurementBatch {
  double q = 2.0;
  double gamma = 1.0;
  double sigma = 0.0;
  std::size_t n = 0;
  std::vector<double> y;
  MeasureMode mode = MeasureMode::induced;
  std::uint64_t seed = 0;
  NoiseModel noise;
  std::vector<std::string> warnings;
};

/// Generates a measurement batch. Explicit mode materializes the n x p
/// stable matrix; induced mode draws y_i ~ stable_q(gamma ||x||_q) + sigma eps
/// directly, which is the same law by the stability of the sketch.
MeasurementBatch measure(const Signal& x, std::size_t n, double q, double gamma, double sigma,
                         const NoiseModel& noise, MeasureMode mode, std::uint64_t seed);

void validate_q(double q);

}  // namespace numsparse
