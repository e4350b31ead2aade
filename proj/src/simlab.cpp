#include "numsparse/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace numsparse {

namespace {

constexpr std::uint64_t kValidationStream = 0x7fffffffULL;

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once and results are written by index, so the outcome does
// not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double epsilon_for(const ExperimentConfig& cfg, double q) { return q == 2.0 ? cfg.epsilon_2 : 0.0; }

bool is_statistical_failure(ErrorKind k) {
  return k == ErrorKind::PilotFailure || k == ErrorKind::NonPositiveNormEstimate || k == ErrorKind::AllZero;
}

CellResult run_cell(const ExperimentConfig& cfg, const SignalSpec& spec, const Signal& x, double sigma, GridPoint g,
                    MeasureMode mode, std::size_t replicates, std::uint64_t cell_key) {
  CellResult cell;
  cell.n1 = g.n1;
  cell.nq = g.nq;
  cell.p = x.size();
  cell.q = cfg.q;
  cell.tau = spec.kind == SignalSpec::Kind::power_law ? spec.tau : std::numeric_limits<double>::quiet_NaN();
  cell.sigma = sigma;
  cell.mode = mode;
  cell.s_true = numerical_sparsity(x, cfg.q);
  const double norm_q = lq_norm(x.values(), cfg.q);
  const double norm_1 = lq_norm(x.values(), 1.0);
  cell.rho_q = sigma / (cfg.gamma_q * norm_q);
  const double rho_1 = sigma / (cfg.gamma_1 * norm_1);
  const double pi_bar = static_cast<double>(g.nq) / static_cast<double>(g.n1 + g.nq);
  cell.theory =
      theoretical_error_curve(cfg.q, cell.rho_q, rho_1, pi_bar, cfg.noise, epsilon_for(cfg, cfg.q), g.n1 + g.nq);

  std::vector<ReplicateOutcome> outcomes(replicates);
  parallel_for(replicates, cfg.threads, [&](std::size_t k) {
    outcomes[k] = run_replicate(cfg, x, sigma, g, mode, derive_key(cell_key, k));
  });

  std::vector<double> errs;
  errs.reserve(replicates);
  for (const auto& o : outcomes) {
    if (o.estimate) {
      errs.push_back(std::abs(o.estimate->s_hat / cell.s_true - 1.0));
    } else {
      ++cell.failures;
      if (o.failure == ErrorKind::PilotFailure) ++cell.pilot_failures;
    }
  }
  cell.successes = errs.size();
  cell.mean_abs_rel_err = errs.empty() ? std::numeric_limits<double>::quiet_NaN() : sample_mean(errs);
  if (errs.size() >= 2) cell.std_err = std::sqrt(sample_variance(errs) / static_cast<double>(errs.size()));
  return cell;
}

}  // namespace

Signal SignalSpec::build() const {
  if (kind == Kind::power_law) return power_law_signal(p, tau);
  return Signal(values);
}

void validate(const ExperimentConfig& cfg) {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorKind::InvalidConfig, "field '" + field + "': " + why);
  };
  if (cfg.signals.empty()) fail("signal", "at least one signal is required");
  for (const auto& s : cfg.signals) {
    if (s.kind == SignalSpec::Kind::power_law && s.p == 0) fail("signal.p", "must be >= 1");
    if (s.kind == SignalSpec::Kind::explicit_values && s.values.empty()) fail("signal.values", "must be non-empty");
  }
  if (!(cfg.q > 0.0 && cfg.q <= 2.0)) fail("q", "must lie in (0, 2]");
  if (std::abs(cfg.q - 1.0) < kMinDistanceFromOne) fail("q", "must differ from 1 by at least 0.05");
  if (cfg.grid.empty()) fail("grid", "at least one (n1, nq) pair is required");
  for (const auto& g : cfg.grid) {
    if (g.n1 == 0 || g.nq == 0) fail("grid", "every n1 and nq must be positive");
  }
  if (!(cfg.gamma_1 > 0.0)) fail("gamma_1", "must be positive");
  if (!(cfg.gamma_q > 0.0)) fail("gamma_q", "must be positive");
  if (cfg.sigmas.empty()) fail("sigma", "at least one value is required");
  for (double s : cfg.sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) fail("sigma", "must be finite and >= 0");
  }
  if (cfg.replicates == 0) fail("replicates", "must be >= 1");
  if (cfg.eta0 && !(*cfg.eta0 > 0.0)) fail("eta0", "must be positive");
  if (cfg.q == 2.0 && !(cfg.epsilon_2 > 0.0)) fail("epsilon_2", "must be positive");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 0.5)) fail("alpha", "must lie in [0, 1/2]");
  if (!(cfg.alpha_prime >= 0.0 && cfg.alpha_prime <= 0.5)) fail("alpha_prime", "must lie in [0, 1/2]");
  if (cfg.alpha == 0.0 && cfg.alpha_prime == 0.0) fail("alpha", "alpha and alpha_prime cannot both be 0");
  if (cfg.threads == 0) fail("threads", "must be >= 1");
}

MeasureMode resolve_mode(const ExperimentConfig& cfg, std::size_t p) {
  if (cfg.mode) return *cfg.mode;
  return cfg.replicates >= 500 || p >= 1000 ? MeasureMode::induced : MeasureMode::explicit_matrix;
}

double theoretical_vartheta(double q, double rho_q, double rho_1, double pi_bar, const NoiseModel& noise,
                            double epsilon_q) {
  if (!(pi_bar > 0.0 && pi_bar < 1.0)) throw Error(ErrorKind::InvalidArgument, "pi must lie in (0, 1)");
  const double vq = minimize_variance(rho_q, q, noise, epsilon_q).v_min;
  const double v1 = minimize_variance(rho_1, 1.0, noise, 0.0).v_min;
  const double e1 = 1.0 / (1.0 - q);
  const double eq = q / (1.0 - q);
  return vq / pi_bar * e1 * e1 + v1 / (1.0 - pi_bar) * eq * eq;
}

double theoretical_error_curve(double q, double rho_q, double rho_1, double pi_bar, const NoiseModel& noise,
                               double epsilon_q, std::size_t n_total) {
  if (n_total == 0) throw Error(ErrorKind::InvalidArgument, "n_total must be >= 1");
  const double vartheta = theoretical_vartheta(q, rho_q, rho_1, pi_bar, noise, epsilon_q);
  return std::sqrt(2.0 / std::numbers::pi * vartheta) / std::sqrt(static_cast<double>(n_total));
}

ReplicateOutcome run_replicate(const ExperimentConfig& cfg, const Signal& x, double sigma, GridPoint g,
                               MeasureMode mode, std::uint64_t key) {
  ReplicateOutcome out;
  try {
    const auto bq = measure(x, g.nq, cfg.q, cfg.gamma_q, sigma, cfg.noise, mode, derive_key(key, 0));
    const auto b1 = measure(x, g.n1, 1.0, cfg.gamma_1, sigma, cfg.noise, mode, derive_key(key, 1));
    const auto eq = estimate_norm(bq, cfg.noise, epsilon_for(cfg, cfg.q), cfg.eta0);
    const auto e1 = estimate_norm(b1, cfg.noise, 0.0, cfg.eta0);
    out.estimate = estimate_sparsity(eq, e1);
  } catch (const Error& e) {
    if (!is_statistical_failure(e.kind())) throw;
    out.failure = e.kind();
  }
  return out;
}

ExperimentResult run_relative_error(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult result;
  std::uint64_t cell_index = 0;
  for (const auto& spec : cfg.signals) {
    const Signal x = spec.build();
    const MeasureMode mode = resolve_mode(cfg, x.size());
    for (double sigma : cfg.sigmas) {
      for (const auto& g : cfg.grid) {
        result.cells.push_back(
            run_cell(cfg, spec, x, sigma, g, mode, cfg.replicates, derive_key(cfg.seed, cell_index++)));
      }
    }
  }

  const Signal x0 = cfg.signals.front().build();
  if (cfg.explicit_validation && resolve_mode(cfg, x0.size()) == MeasureMode::induced) {
    ValidationResult v;
    const std::size_t reps = std::min(cfg.replicates, cfg.validation_replicates);
    const std::uint64_t key = derive_key(cfg.seed, kValidationStream);
    const GridPoint g = cfg.grid.front();
    const double sigma = cfg.sigmas.front();
    v.induced = run_cell(cfg, cfg.signals.front(), x0, sigma, g, MeasureMode::induced, reps, derive_key(key, 0));
    v.explicit_matrix =
        run_cell(cfg, cfg.signals.front(), x0, sigma, g, MeasureMode::explicit_matrix, reps, derive_key(key, 1));
    const double se_a = v.induced.std_err.value_or(0.0);
    const double se_b = v.explicit_matrix.std_err.value_or(0.0);
    v.pooled_se = std::sqrt(se_a * se_a + se_b * se_b);
    v.consistent = std::abs(v.induced.mean_abs_rel_err - v.explicit_matrix.mean_abs_rel_err) <= 3.0 * v.pooled_se;
    result.validation = v;
  }
  return result;
}

CltResult run_clt(const ExperimentConfig& cfg, const std::vector<double>& kappa_list) {
  validate(cfg);
  if (cfg.signals.size() != 1 || cfg.grid.size() != 1 || cfg.sigmas.size() != 1) {
    throw Error(ErrorKind::InvalidConfig, "field 'grid': the CLT study takes exactly one signal, sigma and grid point");
  }
  const Signal x = cfg.signals.front().build();
  const MeasureMode mode = resolve_mode(cfg, x.size());
  const GridPoint g = cfg.grid.front();
  const double sigma = cfg.sigmas.front();

  CltResult res;
  res.replicates = cfg.replicates;
  res.s_true = numerical_sparsity(x, cfg.q);
  res.nominal_coverage = 1.0 - cfg.alpha - cfg.alpha_prime;

  std::vector<ReplicateOutcome> outcomes(cfg.replicates);
  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t k) {
    outcomes[k] = run_replicate(cfg, x, sigma, g, mode, derive_key(cfg.seed, k));
  });

  std::vector<std::size_t> rejections(kappa_list.size(), 0);
  std::size_t covered = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& o = outcomes[k];
    if (!o.estimate) {
      ++res.failures;
      continue;
    }
    const auto& est = *o.estimate;
    const double stat = std::sqrt(static_cast<double>(est.n_total())) / std::sqrt(est.vartheta_hat) *
                        (est.s_hat / res.s_true - 1.0);
    const bool cov = sparsity_ci(est, cfg.alpha, cfg.alpha_prime).contains(res.s_true);
    covered += cov ? 1 : 0;
    res.replicate.push_back(k);
    res.standardized.push_back(stat);
    res.covered.push_back(cov);
    for (std::size_t j = 0; j < kappa_list.size(); ++j) {
      if (test_sparsity(est, kappa_list[j], cfg.alpha).reject) ++rejections[j];
    }
  }
  const double ok = static_cast<double>(res.standardized.size());
  res.mean = sample_mean(res.standardized);
  res.variance = sample_variance(res.standardized);
  res.ks = ks_statistic_normal(res.standardized);
  res.coverage = ok > 0 ? static_cast<double>(covered) / ok : std::numeric_limits<double>::quiet_NaN();
  res.histogram = freedman_diaconis_histogram(res.standardized);
  for (std::size_t j = 0; j < kappa_list.size(); ++j) {
    res.rejection_rates.emplace_back(kappa_list[j], ok > 0 ? static_cast<double>(rejections[j]) / ok : 0.0);
  }
  return res;
}

}  // namespace numsparse
