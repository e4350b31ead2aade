#include "numsparse/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "numsparse/error.hpp"

namespace numsparse::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// JSON has no infinities; open interval ends are written as strings.
json endpoint(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return number_or_null(v);
}

template <typename T>
T get_field(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidConfig, std::string("field '") + key + "': wrong type");
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> read_column_csv(const std::filesystem::path& path, const std::string& header) {
  auto in = open_input(path);
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    double v = 0.0;
    if (parse_double(t, v)) {
      out.push_back(v);
      continue;
    }
    if (lineno == 1 && out.empty() && (header.empty() || t == header)) continue;
    throw Error(ErrorKind::Io, path.string() + ":" + std::to_string(lineno) + ": not a number: '" + t + "'");
  }
  return out;
}

Signal read_signal_csv(const std::filesystem::path& path) {
  auto v = read_column_csv(path);
  if (v.empty()) throw Error(ErrorKind::Io, "signal file '" + path.string() + "' is empty");
  return Signal(std::move(v));
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      if (!parse_double(cell, v)) {
        throw Error(ErrorKind::Io, path.string() + ": row " + std::to_string(rows + 1) + ": bad entry '" + cell + "'");
      }
      data.push_back(v);
      ++c;
    }
    if (rows == 0) cols = c;
    if (c != cols) throw Error(ErrorKind::Io, path.string() + ": ragged rows");
    ++rows;
  }
  return Matrix(rows, cols, std::move(data));
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

json batch_metadata(const MeasurementBatch& batch) {
  return json{{"q", batch.q},         {"gamma", batch.gamma},           {"sigma", batch.sigma},
              {"noise", batch.noise.name()}, {"mode", to_string(batch.mode)}, {"seed", batch.seed},
              {"n", batch.n}};
}

void write_batch(const MeasurementBatch& batch, const std::filesystem::path& csv) {
  std::string text = "y\n";
  for (double v : batch.y) text += format_double(v) + "\n";
  write_text_file(csv, text);
  write_text_file(sidecar_path(csv), batch_metadata(batch).dump(2) + "\n");
}

MeasurementBatch read_batch(const std::filesystem::path& csv) {
  const json meta = read_json_file(sidecar_path(csv));
  MeasurementBatch b;
  try {
    b.q = meta.at("q").get<double>();
    b.gamma = meta.at("gamma").get<double>();
    b.sigma = meta.at("sigma").get<double>();
    b.noise = NoiseModel::parse(meta.at("noise").get<std::string>());
    b.mode = parse_measure_mode(meta.value("mode", std::string("induced")));
    b.seed = meta.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, "sidecar for '" + csv.string() + "': " + e.what());
  }
  b.y = read_column_csv(csv, "y");
  b.n = b.y.size();
  if (meta.contains("n") && meta.at("n").get<std::size_t>() != b.n) {
    throw Error(ErrorKind::Io, "sidecar n does not match row count of '" + csv.string() + "'");
  }
  for (double v : b.y) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Io, "non-finite measurement in '" + csv.string() + "'");
  }
  return b;
}

json to_json(const TuningState& ts) {
  return json{{"m_hat", ts.m_hat},
              {"t_initial", ts.t_initial},
              {"eta0", ts.eta0},
              {"t_pilot", ts.t_pilot},
              {"nu_pilot", ts.nu_pilot},
              {"rho_hat", ts.rho_hat},
              {"c_star", ts.c_star},
              {"t_opt", ts.t_opt},
              {"epsilon_q", ts.epsilon_q},
              {"negative_real_part", ts.negative_real_part},
              {"near_tie", ts.near_tie},
              {"local_minima", ts.local_minima}};
}

json to_json(const NormEstimate& est) {
  return json{{"q", est.q},
              {"n", est.n},
              {"nu_hat", number_or_null(est.nu_hat)},
              {"omega_hat", number_or_null(est.omega_hat)},
              {"tuning", to_json(est.tuning)}};
}

json to_json(const ConfidenceInterval& ci) { return json::array({endpoint(ci.lower), endpoint(ci.upper)}); }

json to_json(const SparsityEstimate& est, const ConfidenceInterval& ci) {
  return json{{"q", est.q},
              {"s_hat", number_or_null(est.s_hat)},
              {"vartheta_hat", number_or_null(est.vartheta_hat)},
              {"n1", est.n1},
              {"nq", est.nq},
              {"pi_q", est.pi_q},
              {"ci", to_json(ci)},
              {"alpha", ci.alpha},
              {"alpha_prime", ci.alpha_prime},
              {"norm_q", to_json(est.part_q)},
              {"norm_1", to_json(est.part_1)}};
}

json to_json(const SparsityTest& test) {
  return json{{"kappa", test.kappa}, {"alpha", test.alpha}, {"u_hat", test.u_hat}, {"reject", test.reject}};
}

SignalSpec signal_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "field 'signal': expected an object");
  const std::string kind = get_field<std::string>(j, "kind", "");
  if (kind == "power_law") {
    if (!j.contains("p")) throw Error(ErrorKind::InvalidConfig, "field 'signal.p': missing");
    return SignalSpec::power_law(get_field<std::size_t>(j, "p", 0), get_field<double>(j, "tau", 1.0));
  }
  if (kind == "explicit") {
    auto values = get_field<std::vector<double>>(j, "values", {});
    if (values.empty()) throw Error(ErrorKind::InvalidConfig, "field 'signal.values': missing or empty");
    return SignalSpec::explicit_signal(std::move(values));
  }
  throw Error(ErrorKind::InvalidConfig, "field 'signal.kind': expected 'power_law' or 'explicit'");
}

json to_json(const SignalSpec& s) {
  if (s.kind == SignalSpec::Kind::power_law) return json{{"kind", "power_law"}, {"p", s.p}, {"tau", s.tau}};
  return json{{"kind", "explicit"}, {"values", s.values}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
  ExperimentConfig cfg;
  if (!j.contains("signal")) throw Error(ErrorKind::InvalidConfig, "field 'signal': missing");
  const json& sig = j.at("signal");
  if (sig.is_array()) {
    for (const auto& s : sig) cfg.signals.push_back(signal_from_json(s));
  } else {
    cfg.signals.push_back(signal_from_json(sig));
  }
  cfg.q = get_field<double>(j, "q", cfg.q);
  if (!j.contains("grid")) throw Error(ErrorKind::InvalidConfig, "field 'grid': missing");
  for (const auto& g : j.at("grid")) {
    if (!g.is_array() || g.size() != 2) throw Error(ErrorKind::InvalidConfig, "field 'grid': expected [n1, nq] pairs");
    try {
      cfg.grid.push_back({g[0].get<std::size_t>(), g[1].get<std::size_t>()});
    } catch (const json::exception&) {
      throw Error(ErrorKind::InvalidConfig, "field 'grid': entries must be non-negative integers");
    }
  }
  cfg.gamma_1 = get_field<double>(j, "gamma_1", cfg.gamma_1);
  cfg.gamma_q = get_field<double>(j, "gamma_q", cfg.gamma_q);
  if (j.contains("sigma")) {
    cfg.sigmas = j.at("sigma").is_array() ? get_field<std::vector<double>>(j, "sigma", {})
                                          : std::vector<double>{get_field<double>(j, "sigma", 0.0)};
  }
  try {
    cfg.noise = NoiseModel::parse(get_field<std::string>(j, "noise", "none"));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("field 'noise': ") + e.what());
  }
  cfg.replicates = get_field<std::size_t>(j, "replicates", cfg.replicates);
  const std::string mode = get_field<std::string>(j, "mode", "auto");
  if (mode != "auto") {
    try {
      cfg.mode = parse_measure_mode(mode);
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidConfig, "field 'mode': expected 'explicit', 'induced' or 'auto'");
    }
  }
  if (j.contains("eta0") && !j.at("eta0").is_null()) cfg.eta0 = get_field<double>(j, "eta0", 0.0);
  cfg.epsilon_2 = get_field<double>(j, "epsilon_2", cfg.epsilon_2);
  cfg.alpha = get_field<double>(j, "alpha", cfg.alpha);
  cfg.alpha_prime = get_field<double>(j, "alpha_prime", cfg.alpha_prime);
  cfg.seed = get_field<std::uint64_t>(j, "seed", cfg.seed);
  cfg.threads = get_field<std::size_t>(j, "threads", cfg.threads);
  cfg.explicit_validation = get_field<bool>(j, "explicit_validation", cfg.explicit_validation);
  cfg.validation_replicates = get_field<std::size_t>(j, "validation_replicates", cfg.validation_replicates);
  validate(cfg);
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json signals = json::array();
  for (const auto& s : cfg.signals) signals.push_back(to_json(s));
  json grid = json::array();
  for (const auto& g : cfg.grid) grid.push_back(json::array({g.n1, g.nq}));
  return json{{"signal", signals},
              {"q", cfg.q},
              {"grid", grid},
              {"gamma_1", cfg.gamma_1},
              {"gamma_q", cfg.gamma_q},
              {"sigma", cfg.sigmas},
              {"noise", cfg.noise.name()},
              {"replicates", cfg.replicates},
              {"mode", cfg.mode ? to_string(*cfg.mode) : std::string("auto")},
              {"eta0", cfg.eta0 ? json(*cfg.eta0) : json(nullptr)},
              {"epsilon_2", cfg.epsilon_2},
              {"alpha", cfg.alpha},
              {"alpha_prime", cfg.alpha_prime},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"explicit_validation", cfg.explicit_validation},
              {"validation_replicates", cfg.validation_replicates}};
}

json read_json_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Io, "'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
}

std::string relative_error_csv(const ExperimentResult& result) {
  std::string text = "n_total,p,q,tau,rho_q,mean_abs_rel_err,std_err,failures,theory\n";
  for (const auto& c : result.cells) {
    text += std::to_string(c.n_total()) + "," + std::to_string(c.p) + "," + format_double(c.q) + "," +
            format_double(c.tau) + "," + format_double(c.rho_q) + "," + format_double(c.mean_abs_rel_err) + "," +
            (c.std_err ? format_double(*c.std_err) : std::string("null")) + "," + std::to_string(c.failures) + "," +
            format_double(c.theory) + "\n";
  }
  return text;
}

namespace {

json cell_json(const CellResult& c) {
  return json{{"n1", c.n1},
              {"nq", c.nq},
              {"n_total", c.n_total()},
              {"p", c.p},
              {"q", c.q},
              {"tau", number_or_null(c.tau)},
              {"sigma", c.sigma},
              {"rho_q", c.rho_q},
              {"s_true", c.s_true},
              {"mean_abs_rel_err", number_or_null(c.mean_abs_rel_err)},
              {"std_err", c.std_err ? json(*c.std_err) : json(nullptr)},
              {"failures", c.failures},
              {"pilot_failures", c.pilot_failures},
              {"successes", c.successes},
              {"theory", c.theory},
              {"mode", to_string(c.mode)}};
}

}  // namespace

json to_json(const ExperimentResult& result) {
  json cells = json::array();
  for (const auto& c : result.cells) cells.push_back(cell_json(c));
  json out{{"cells", cells}};
  if (result.validation) {
    const auto& v = *result.validation;
    out["validation"] = json{{"induced", cell_json(v.induced)},
                             {"explicit", cell_json(v.explicit_matrix)},
                             {"pooled_se", v.pooled_se},
                             {"consistent", v.consistent}};
  }
  return out;
}

std::string clt_csv(const CltResult& result) {
  std::string text = "replicate,standardized_stat,covered\n";
  for (std::size_t i = 0; i < result.standardized.size(); ++i) {
    text += std::to_string(result.replicate[i]) + "," + format_double(result.standardized[i]) + "," +
            (result.covered[i] ? "1" : "0") + "\n";
  }
  return text;
}

json clt_summary(const CltResult& r) {
  json rates = json::array();
  for (const auto& [kappa, rate] : r.rejection_rates) rates.push_back(json{{"kappa", kappa}, {"reject_rate", rate}});
  return json{{"replicates", r.replicates},
              {"failures", r.failures},
              {"successes", r.standardized.size()},
              {"s_true", r.s_true},
              {"mean", number_or_null(r.mean)},
              {"variance", number_or_null(r.variance)},
              {"ks", number_or_null(r.ks)},
              {"coverage", number_or_null(r.coverage)},
              {"nominal_coverage", r.nominal_coverage},
              {"histogram", json{{"lo", r.histogram.lo}, {"width", r.histogram.width}, {"counts", r.histogram.counts}}},
              {"tests", rates}};
}

}  // namespace numsparse::io
