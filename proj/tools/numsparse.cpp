#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "numsparse/bounds.hpp"
#include "numsparse/deconv.hpp"
#include "numsparse/error.hpp"
#include "numsparse/inference.hpp"
#include "numsparse/io.hpp"
#include "numsparse/simlab.hpp"
#include "numsparse/sparsity.hpp"
#include "numsparse/stable.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace numsparse;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::string> mode;
  std::optional<std::size_t> replicates;
  std::optional<double> eta0;
  std::optional<double> epsilon_2;
  std::optional<double> alpha;
  std::optional<double> alpha_prime;
  std::string out;
  std::string config;
};

// Subcommand options are captured as text and merged over the --config
// object, so both sources go through the same typed accessors.
class Args {
 public:
  void add(CLI::App* sub, const std::string& flag, const std::string& help) {
    const std::string key = key_of(flag);
    auto& slot = text_[key];
    options_.emplace_back(key, sub->add_option(flag, slot, help));
  }

  void merge(const std::string& config_path) {
    if (!config_path.empty()) {
      values_ = io::read_json_file(config_path);
      if (!values_.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
    }
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) values_[key] = text_[key];
    }
  }

  const json& raw() const { return values_; }
  bool has(const std::string& key) const { return values_.contains(key) && !values_.at(key).is_null(); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      missing(key);
    }
    const json& v = values_.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_double(key, v.get<std::string>());
    bad(key, "expected a number");
  }

  std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      missing(key);
    }
    const json& v = values_.at(key);
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      std::size_t out = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec == std::errc() && ptr == s.data() + s.size()) return out;
    }
    bad(key, "expected a non-negative integer");
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      missing(key);
    }
    const json& v = values_.at(key);
    if (!v.is_string()) bad(key, "expected a string");
    return v.get<std::string>();
  }

  /// JSON array of numbers or a comma separated list.
  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    const json& v = values_.at(key);
    if (v.is_array()) {
      for (const auto& e : v) {
        if (!e.is_number()) bad(key, "expected numbers");
        out.push_back(e.get<double>());
      }
      return out;
    }
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_string()) bad(key, "expected a list of numbers");
    std::string s = v.get<std::string>();
    std::size_t start = 0;
    while (start <= s.size()) {
      const std::size_t end = std::min(s.find(',', start), s.size());
      out.push_back(parse_double(key, s.substr(start, end - start)));
      start = end + 1;
    }
    return out;
  }

 private:
  static std::string key_of(std::string flag) {
    flag.erase(0, flag.find_first_not_of('-'));
    for (auto& ch : flag) {
      if (ch == '-') ch = '_';
    }
    return flag;
  }

  static double parse_double(const std::string& key, std::string s) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad(key, "'" + s + "' is not a number");
    return out;
  }

  [[noreturn]] static void missing(const std::string& key) {
    throw Error(ErrorKind::InvalidConfig, "field '" + key + "': missing");
  }
  [[noreturn]] static void bad(const std::string& key, const std::string& why) {
    throw Error(ErrorKind::InvalidConfig, "field '" + key + "': " + why);
  }

  std::map<std::string, std::string> text_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
  json values_ = json::object();
};

struct Context {
  Globals g;
  Args args;

  std::uint64_t seed() const {
    if (g.seed) return *g.seed;
    return args.has("seed") ? static_cast<std::uint64_t>(args.count("seed")) : 0;
  }
  double alpha() const { return g.alpha ? *g.alpha : args.number("alpha", 0.05); }
  double alpha_prime() const { return g.alpha_prime ? *g.alpha_prime : args.number("alpha_prime", 0.05); }
  double epsilon_2() const { return g.epsilon_2 ? *g.epsilon_2 : args.number("epsilon_2", 0.3); }
  std::optional<double> eta0() const {
    if (g.eta0) return g.eta0;
    if (args.has("eta0")) return args.number("eta0");
    return std::nullopt;
  }
  MeasureMode mode(MeasureMode fallback) const {
    const std::string m = g.mode ? *g.mode : args.text("mode", to_string(fallback));
    try {
      return parse_measure_mode(m);
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidConfig, "field 'mode': expected 'explicit' or 'induced'");
    }
  }

  fs::path out_dir() const {
    const std::string o = g.out.empty() ? args.text("out", "") : g.out;
    if (o.empty()) return {};
    std::error_code ec;
    fs::create_directories(o, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + o + "': " + ec.message());
    return o;
  }

  void emit(json j, const std::string& name) const {
    j["seed"] = seed();
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (const auto dir = out_dir(); !dir.empty()) io::write_text_file(dir / (name + ".json"), text);
  }
};

void check_alpha(const std::string& field, double a) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::InvalidConfig, "field '" + field + "': must lie in (0, 1)");
}

double epsilon_for(double q, const Context& ctx) { return q == 2.0 ? ctx.epsilon_2() : 0.0; }

struct Pair {
  SparsityEstimate est;
  std::vector<std::string> warnings;
};

Pair estimate_pair(const Context& ctx) {
  const auto bq = io::read_batch(ctx.args.text("q_batch"));
  const auto b1 = io::read_batch(ctx.args.text("l1_batch"));
  if (std::abs(bq.q - 1.0) < kMinDistanceFromOne) {
    throw Error(ErrorKind::InvalidConfig, "q must differ from 1 for the q-batch (|q - 1| >= 0.05)");
  }
  if (b1.q != 1.0) throw Error(ErrorKind::InvalidConfig, "the l1-batch sidecar must have q = 1");
  const auto eq = estimate_norm(bq, bq.noise, epsilon_for(bq.q, ctx), ctx.eta0());
  const auto e1 = estimate_norm(b1, b1.noise, 0.0, ctx.eta0());
  Pair out{estimate_sparsity(eq, e1), bq.warnings};
  out.warnings.insert(out.warnings.end(), b1.warnings.begin(), b1.warnings.end());
  return out;
}

int cmd_estimate(const Context& ctx) {
  const double a = ctx.alpha();
  const double ap = ctx.alpha_prime();
  check_alpha("alpha", a);
  check_alpha("alpha_prime", ap);
  const auto [est, warnings] = estimate_pair(ctx);
  const auto ci = sparsity_ci(est, a, ap);
  json j = io::to_json(est, ci);
  j["nu_hat_q"] = est.part_q.nu_hat;
  j["nu_hat_1"] = est.part_1.nu_hat;
  j["omega_hat_q"] = est.part_q.omega_hat;
  j["omega_hat_1"] = est.part_1.omega_hat;
  j["norm_q_ci"] = io::to_json(norm_ci(est.part_q, a, ap));
  j["norm_1_ci"] = io::to_json(norm_ci(est.part_1, a, ap));
  j["warnings"] = warnings;
  ctx.emit(j, "estimate");
  return 0;
}

int cmd_test(const Context& ctx) {
  const double a = ctx.alpha();
  check_alpha("alpha", a);
  const double kappa = ctx.args.number("kappa");
  const auto [est, warnings] = estimate_pair(ctx);
  const auto t = test_sparsity(est, kappa, a);
  json j = io::to_json(t);
  j["u_hat_unsquared"] = t.u_hat_unsquared;
  j["s_hat"] = est.s_hat;
  j["vartheta_hat"] = est.vartheta_hat;
  j["n_total"] = est.n_total();
  json power = json::array();
  for (double s : ctx.args.numbers("alternatives")) {
    power.push_back({{"s", s},
                     {"power", test_power(s, kappa, a, est.vartheta_hat, est.n_total())},
                     {"power_unsquared", test_power_unsquared(s, kappa, a, est.vartheta_hat, est.n_total())}});
  }
  j["power"] = power;
  j["warnings"] = warnings;
  ctx.emit(j, "test");
  return 0;
}

int cmd_tune(const Context& ctx) {
  const double ap = ctx.alpha_prime();
  check_alpha("alpha_prime", ap);
  const auto b1 = io::read_batch(ctx.args.text("l1_batch"));
  if (b1.q != 1.0) throw Error(ErrorKind::InvalidConfig, "the l1-batch sidecar must have q = 1");
  const auto e1 = estimate_norm(b1, b1.noise, 0.0, ctx.eta0());
  std::optional<NormEstimate> e2;
  if (ctx.args.has("l2_batch")) {
    const auto b2 = io::read_batch(ctx.args.text("l2_batch"));
    if (b2.q != 2.0) throw Error(ErrorKind::InvalidConfig, "the l2-batch sidecar must have q = 2");
    e2 = estimate_norm(b2, b2.noise, ctx.epsilon_2(), ctx.eta0());
  }
  const auto r = tuning_radii(e1, e2, ap);
  json j{{"alpha_prime", ap},
         {"r_hat", r.r_hat},
         {"varrho_hat", r.varrho_hat ? json(*r.varrho_hat) : json(nullptr)},
         {"varrho_hat_sqrt", r.varrho_hat_sqrt ? json(*r.varrho_hat_sqrt) : json(nullptr)},
         {"norm_1", io::to_json(e1)}};
  if (e2) j["norm_2"] = io::to_json(*e2);
  ctx.emit(j, "tune");
  return 0;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_variance(const Context& ctx) {
  const double q = ctx.args.number("q");
  const double rho = ctx.args.number("rho", 0.0);
  validate_q(q);
  if (!(rho >= 0.0)) throw Error(ErrorKind::InvalidConfig, "field 'rho': must be non-negative");
  NoiseModel noise;
  try {
    noise = NoiseModel::parse(ctx.args.text("noise", "none"));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("field 'noise': ") + e.what());
  }
  const double eps = ctx.args.has("epsilon_q") ? ctx.args.number("epsilon_q") : epsilon_for(q, ctx);

  std::vector<double> grid = ctx.args.numbers("grid");
  if (grid.empty()) {
    const double step = ctx.args.number("c_step", 0.05);
    const double c_max = ctx.args.number("c_max", 5.0);
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidConfig, "field 'c_step': must be positive");
    if (!(c_max >= step)) throw Error(ErrorKind::InvalidConfig, "field 'c_max': must be at least c_step");
    for (std::size_t k = 1; static_cast<double>(k) * step <= c_max * (1 + 1e-12); ++k) {
      grid.push_back(static_cast<double>(k) * step);
    }
  }

  std::string csv = "c,v\n";
  json rows = json::array();
  for (double c : grid) {
    const double v = variance_ext(c, rho, q, noise);
    csv += io::format_double(c) + "," + io::format_double(v) + "\n";
    rows.push_back({{"c", c}, {"v", number_or_null(v)}});
  }
  const auto m = minimize_variance(rho, q, noise, eps);
  if (const auto dir = ctx.out_dir(); !dir.empty()) io::write_text_file(dir / "variance.csv", csv);
  ctx.emit(json{{"q", q},
                {"rho", rho},
                {"noise", noise.name()},
                {"epsilon_q", eps},
                {"rows", rows},
                {"c_star", m.c_star},
                {"v_min", m.v_min},
                {"c_max", m.c_max},
                {"local_minima", m.local_minima},
                {"near_tie", m.near_tie},
                {"unique_minimizer", !m.near_tie}},
           "variance");
  return 0;
}

int cmd_bounds(const Context& ctx) {
  const std::size_t n = ctx.args.count("n");
  const std::size_t p = ctx.args.count("p");
  const double q = ctx.args.number("q", 2.0);
  const auto lb = minimax_lower_bound(n, p, q);
  json j{{"n", n},
         {"p", p},
         {"q", q},
         {"minimax_lower_bound", lb.value},
         {"minimax_raw", lb.raw},
         {"clamped", lb.clamped},
         {"adversarial_bound", adversarial_sparsity_bound(n, p, q)}};
  if (ctx.args.has("s2")) {
    const double s2 = ctx.args.number("s2");
    j["s2"] = s2;
    j["bpdn_upper_bound"] = bpdn_upper_bound(s2, n, p, ctx.args.number("noise_term", 0.0),
                                             ctx.args.number("c2", 1.0), ctx.args.number("c3", 1.0));
    j["bpdn_condition_holds"] = bpdn_condition_holds(n, p);
    j["interpretation"] = "matching lower bound holds for any homogenous recovery algorithm";
  }
  ctx.emit(j, "bounds");
  return 0;
}

int cmd_adversarial(const Context& ctx) {
  const double q = ctx.args.number("q", 2.0);
  const std::size_t trials = ctx.args.count("trials", 50);
  CounterRng rng(ctx.seed());
  std::optional<Matrix> a;
  std::vector<double> x0;
  if (ctx.args.has("matrix")) {
    a = io::read_matrix_csv(ctx.args.text("matrix"));
    if (ctx.args.has("signal")) {
      const auto s = io::read_signal_csv(ctx.args.text("signal"));
      x0.assign(s.values().begin(), s.values().end());
    } else {
      x0.resize(a->cols());
      for (auto& e : x0) e = standard_normal(rng);
    }
  } else {
    const std::size_t n = ctx.args.count("n");
    const std::size_t p = ctx.args.count("p");
    if (n == 0 || p == 0) throw Error(ErrorKind::InvalidConfig, "field 'n': n and p must be positive");
    a.emplace(n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) (*a)(i, j) = standard_normal(rng);
    x0.resize(p);
    for (auto& e : x0) e = standard_normal(rng);
  }
  const auto r = adversarial_signal(*a, Signal(x0), q, trials, rng);
  if (const auto dir = ctx.out_dir(); !dir.empty()) {
    std::string csv;
    for (double v : r.x_tilde.values()) csv += io::format_double(v) + "\n";
    io::write_text_file(dir / "x_tilde.csv", csv);
  }
  ctx.emit(json{{"s_q", r.s_q},
                {"bound", r.bound},
                {"success", r.success},
                {"residual", r.residual},
                {"null_dim", r.null_dim},
                {"n", a->rows()},
                {"p", a->cols()},
                {"q", q},
                {"trials", trials}},
           "adversarial");
  return 0;
}

int cmd_measure(const Context& ctx) {
  const auto x = ctx.args.has("signal") ? io::read_signal_csv(ctx.args.text("signal"))
                                        : power_law_signal(ctx.args.count("p"), ctx.args.number("tau", 1.0));
  NoiseModel noise;
  try {
    noise = NoiseModel::parse(ctx.args.text("noise", "none"));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("field 'noise': ") + e.what());
  }
  const auto batch = measure(x, ctx.args.count("n"), ctx.args.number("q"), ctx.args.number("gamma", 1.0),
                             ctx.args.number("sigma", 0.0), noise, ctx.mode(MeasureMode::induced), ctx.seed());
  const fs::path path = ctx.args.text("output");
  io::write_batch(batch, path);
  json j = io::batch_metadata(batch);
  j["output"] = path.string();
  ctx.emit(j, "measure");
  return 0;
}

ExperimentConfig experiment_config(const Context& ctx) {
  json j = ctx.args.raw();
  if (ctx.g.seed) j["seed"] = *ctx.g.seed;
  if (ctx.g.threads) j["threads"] = *ctx.g.threads;
  if (ctx.g.mode) j["mode"] = *ctx.g.mode;
  if (ctx.g.replicates) j["replicates"] = *ctx.g.replicates;
  if (ctx.g.eta0) j["eta0"] = *ctx.g.eta0;
  if (ctx.g.epsilon_2) j["epsilon_2"] = *ctx.g.epsilon_2;
  if (ctx.g.alpha) j["alpha"] = *ctx.g.alpha;
  if (ctx.g.alpha_prime) j["alpha_prime"] = *ctx.g.alpha_prime;
  j.erase("out");
  j.erase("kappa");
  return io::config_from_json(j);
}

int cmd_simulate(const Context& ctx) {
  const auto cfg = experiment_config(ctx);
  const auto result = run_relative_error(cfg);
  const std::string csv = io::relative_error_csv(result);
  json summary = io::to_json(result);
  summary["config"] = io::to_json(cfg);
  summary["seed"] = cfg.seed;
  if (const auto dir = ctx.out_dir(); !dir.empty()) {
    io::write_text_file(dir / "relative_error.csv", csv);
    io::write_text_file(dir / "relative_error.json", summary.dump(2) + "\n");
    io::write_text_file(dir / "config.json", io::to_json(cfg).dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  return 0;
}

int cmd_clt(const Context& ctx) {
  const auto cfg = experiment_config(ctx);
  const auto result = run_clt(cfg, ctx.args.numbers("kappa"));
  const std::string csv = io::clt_csv(result);
  json summary = io::clt_summary(result);
  summary["config"] = io::to_json(cfg);
  summary["seed"] = cfg.seed;
  if (const auto dir = ctx.out_dir(); !dir.empty()) {
    io::write_text_file(dir / "clt.csv", csv);
    io::write_text_file(dir / "clt_summary.json", summary.dump(2) + "\n");
    io::write_text_file(dir / "config.json", io::to_json(cfg).dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  return 0;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::PilotFailure || kind == ErrorKind::NonPositiveNormEstimate ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical sparsity estimation from stable random sketches"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  auto& g = ctx.g;
  app.add_option("--seed", g.seed, "Master seed (u64)");
  app.add_option("--out", g.out, "Output directory for artifacts");
  app.add_option("--threads", g.threads, "Worker thread cap");
  app.add_option("--mode", g.mode, "Measurement mode: explicit or induced");
  app.add_option("--replicates,-R", g.replicates, "Monte Carlo replicates");
  app.add_option("--eta0", g.eta0, "Pilot grid bound override");
  app.add_option("--epsilon-2", g.epsilon_2, "Lower limit on c for q = 2");
  app.add_option("--alpha", g.alpha, "Level of the lower side");
  app.add_option("--alpha-prime", g.alpha_prime, "Level of the upper side");
  app.add_option("--config", g.config, "JSON config for the subcommand");

  using Handler = int (*)(const Context&);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    subs.emplace_back(s, h);
    return s;
  };
  Args& args = ctx.args;

  auto* est = sub("estimate", "Estimate s_q and its confidence interval from two measurement batches", cmd_estimate);
  args.add(est, "--q-batch", "Measurement CSV for the l_q sketch (sidecar JSON alongside)");
  args.add(est, "--l1-batch", "Measurement CSV for the l_1 sketch");

  auto* sim = sub("simulate", "Relative error study over a grid of sample sizes", cmd_simulate);
  (void)sim;
  auto* clt = sub("clt", "Standardized statistic study for one grid cell", cmd_clt);
  args.add(clt, "--kappa", "Comma separated thresholds for rejection rates");

  auto* var = sub("variance", "Tabulate the asymptotic variance and its minimizer", cmd_variance);
  args.add(var, "--q", "Stability index");
  args.add(var, "--rho", "Noise-to-signal ratio");
  args.add(var, "--noise", "Noise family, e.g. gaussian or stable(1)");
  args.add(var, "--epsilon-q", "Lower limit on c");
  args.add(var, "--grid", "Comma separated c values");
  args.add(var, "--c-step", "Grid step when --grid is absent");
  args.add(var, "--c-max", "Grid end when --grid is absent");

  auto* bnd = sub("bounds", "Evaluate the error bound calculators", cmd_bounds);
  args.add(bnd, "--n", "Number of measurements");
  args.add(bnd, "--p", "Signal dimension");
  args.add(bnd, "--q", "Sparsity order");
  args.add(bnd, "--s2", "s_2 value for the BPDN bound");
  args.add(bnd, "--noise-term", "Noise contribution to the BPDN bound");
  args.add(bnd, "--c2", "BPDN noise constant");
  args.add(bnd, "--c3", "BPDN rate constant");

  auto* adv = sub("adversarial", "Search a measurement fiber for a signal with large s_q", cmd_adversarial);
  args.add(adv, "--matrix", "Measurement matrix CSV");
  args.add(adv, "--signal", "Signal CSV");
  args.add(adv, "--n", "Rows of a random Gaussian matrix");
  args.add(adv, "--p", "Columns of a random Gaussian matrix");
  args.add(adv, "--q", "Sparsity order");
  args.add(adv, "--trials", "Random draws");

  auto* tst = sub("test", "One-sided test of H0: s_q >= kappa", cmd_test);
  args.add(tst, "--q-batch", "Measurement CSV for the l_q sketch");
  args.add(tst, "--l1-batch", "Measurement CSV for the l_1 sketch");
  args.add(tst, "--kappa", "Threshold");
  args.add(tst, "--alternatives", "Comma separated s_q values for asymptotic power");

  auto* tune = sub("tune", "Lasso and Elastic-Net radii from norm upper bounds", cmd_tune);
  args.add(tune, "--l1-batch", "Measurement CSV for the l_1 sketch");
  args.add(tune, "--l2-batch", "Measurement CSV for the l_2 sketch");

  auto* mea = sub("measure", "Generate a measurement batch with its sidecar", cmd_measure);
  args.add(mea, "--signal", "Signal CSV");
  args.add(mea, "--p", "Power-law signal dimension when --signal is absent");
  args.add(mea, "--tau", "Power-law exponent");
  args.add(mea, "--n", "Number of measurements");
  args.add(mea, "--q", "Stability index");
  args.add(mea, "--gamma", "Sketch scale");
  args.add(mea, "--sigma", "Noise scale");
  args.add(mea, "--noise", "Noise family");
  args.add(mea, "--output", "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    args.merge(g.config);
    for (const auto& [s, handler] : subs) {
      if (s->parsed()) return handler(ctx);
    }
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const int code = exit_code(e.kind());
    if (code == 2) {
      std::cout << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"seed", g.seed.value_or(0)}}
                       .dump(2)
                << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
