#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numsparse/error.hpp"
#include "numsparse/inference.hpp"
#include "numsparse/stats.hpp"

namespace numsparse {

struct SignalSpec {
  enum class Kind { power_law, explicit_values };
  Kind kind = Kind::power_law;
  std::size_t p = 0;
  double tau = 1.0;
  std::vector<double> values;

  static SignalSpec power_law(std::size_t p, double tau) { return {Kind::power_law, p, tau, {}}; }
  static SignalSpec explicit_signal(std::vector<double> v) {
    const auto p = v.size();
    return {Kind::explicit_values, p, 0.0, std::move(v)};
  }

  Signal build() const;
  std::size_t dimension() const noexcept { return kind == Kind::power_law ? p : values.size(); }
  bool operator==(const SignalSpec&) const = default;
};

struct GridPoint {
  std::size_t n1 = 0;
  std::size_t nq = 0;
  bool operator==(const GridPoint&) const = default;
};

/// One Monte Carlo study. Cells are the product signals x sigmas x grid.
struct ExperimentConfig {
  std::vector<SignalSpec> signals;
  double q = 2.0;
  std::vector<GridPoint> grid;
  double gamma_1 = 1.0;
  double gamma_q = 1.0;
  std::vector<double> sigmas{0.0};
  NoiseModel noise = NoiseModel::none();
  std::size_t replicates = 500;
  /// Unset means: induced when replicates >= 500 or p >= 1000, explicit otherwise.
  std::optional<MeasureMode> mode;
  std::optional<double> eta0;
  double epsilon_2 = 0.3;
  double alpha = 0.05;
  double alpha_prime = 0.05;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  /// Re-run the first cell in explicit mode when the study runs induced.
  bool explicit_validation = true;
  std::size_t validation_replicates = 200;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws InvalidConfig naming the offending field.
void validate(const ExperimentConfig& cfg);

MeasureMode resolve_mode(const ExperimentConfig& cfg, std::size_t p);

struct CellResult {
  std::size_t n1 = 0;
  std::size_t nq = 0;
  std::size_t p = 0;
  double q = 0.0;
  double tau = 0.0;  // NaN for explicit signals
  double sigma = 0.0;
  double rho_q = 0.0;
  double s_true = 0.0;
  double mean_abs_rel_err = 0.0;
  std::optional<double> std_err;  // undefined for fewer than two successes
  std::size_t failures = 0;
  std::size_t pilot_failures = 0;
  std::size_t successes = 0;
  double theory = 0.0;
  MeasureMode mode = MeasureMode::induced;

  std::size_t n_total() const noexcept { return n1 + nq; }
};

struct ValidationResult {
  CellResult induced;
  CellResult explicit_matrix;
  double pooled_se = 0.0;
  bool consistent = false;  // means within 3 pooled standard errors
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::optional<ValidationResult> validation;
};

struct CltResult {
  std::vector<std::size_t> replicate;
  std::vector<double> standardized;
  std::vector<bool> covered;
  std::size_t replicates = 0;
  std::size_t failures = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ks = 0.0;
  double coverage = 0.0;
  double nominal_coverage = 0.0;
  Histogram histogram;
  std::vector<std::pair<double, double>> rejection_rates;  // (kappa, fraction rejecting H0: s_q >= kappa)
  double s_true = 0.0;
};

/// Asymptotic mean absolute relative error sqrt(2 vartheta / pi) / sqrt(n_total)
/// at true noise-to-signal ratios rho_q, rho_1 and split pi = nq / (n1 + nq).
double theoretical_error_curve(double q, double rho_q, double rho_1, double pi_bar, const NoiseModel& noise,
                               double epsilon_q, std::size_t n_total);

/// Limiting vartheta_q at the true ratios.
double theoretical_vartheta(double q, double rho_q, double rho_1, double pi_bar, const NoiseModel& noise,
                            double epsilon_q);

/// Outcome of one replicate: a sparsity estimate or the failure kind.
struct ReplicateOutcome {
  std::optional<SparsityEstimate> estimate;
  std::optional<ErrorKind> failure;
};

ReplicateOutcome run_replicate(const ExperimentConfig& cfg, const Signal& x, double sigma, GridPoint g,
                               MeasureMode mode, std::uint64_t key);

ExperimentResult run_relative_error(const ExperimentConfig& cfg);

CltResult run_clt(const ExperimentConfig& cfg, const std::vector<double>& kappa_list = {});

}  // namespace numsparse
