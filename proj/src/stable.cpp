#include "numsparse/stable.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

#include "numsparse/error.hpp"

namespace numsparse {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double exponential(CounterRng& rng) { return -std::log(rng.uniform01()); }

// Marsaglia-Tsang; shapes below 1 use the U^(1/k) boost.
double gamma_variate(double shape, CounterRng& rng) {
  if (shape < 1.0) {
    const double u = rng.uniform01();
    return gamma_variate(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z;
    double v;
    do {
      z = standard_normal(rng);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Symmetric stable_q(1) via Chambers-Mallows-Stuck.
double standard_stable(double q, CounterRng& rng) {
  if (q == 2.0) return std::numbers::sqrt2 * standard_normal(rng);
  const double v = kPi * (rng.uniform01() - 0.5);
  if (q == 1.0) return std::tan(v);
  const double w = exponential(rng);
  return std::sin(q * v) / std::pow(std::cos(v), 1.0 / q) *
         std::pow(std::cos((1.0 - q) * v) / w, (1.0 - q) / q);
}

// phi(t) = (sqrt(nu)|t|)^(nu/2) K_{nu/2}(sqrt(nu)|t|) / (Gamma(nu/2) 2^(nu/2-1))
double student_t_cf(double nu, double t) {
  const double a = std::sqrt(nu) * std::abs(t);
  if (a == 0.0) return 1.0;
  if (nu == 3.0) return std::exp(-a) * (1.0 + a);
  const double order = 0.5 * nu;
  const double k = std::cyl_bessel_k(order, a);
  if (k == 0.0) return 0.0;
  return std::exp(order * std::log(a) + std::log(k) - std::lgamma(order) - (order - 1.0) * std::numbers::ln2);
}

}  // namespace

void validate_q(double q) {
  if (!(q > 0.0 && q <= 2.0)) throw Error(ErrorKind::InvalidQ, "stability index must lie in (0, 2]");
}

NoiseModel NoiseModel::stable(double q0) {
  validate_q(q0);
  return {NoiseFamily::stable, q0};
}

NoiseModel NoiseModel::student_t(double nu) {
  if (!(nu > 1.0) || !std::isfinite(nu)) {
    throw Error(ErrorKind::UnsupportedFamily, "student_t needs nu > 1 so that E|eps| is finite");
  }
  return {NoiseFamily::student_t, nu};
}

NoiseModel NoiseModel::parse(const std::string& text) {
  static const std::regex with_param(R"(^\s*(stable|student_t)\s*\(\s*([0-9eE.+-]+)\s*\)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, with_param)) {
    double v = 0.0;
    try {
      v = std::stod(m[2].str());
    } catch (const std::exception&) {
      throw Error(ErrorKind::UnsupportedFamily, "bad noise parameter in '" + text + "'");
    }
    return m[1] == "stable" ? stable(v) : student_t(v);
  }
  if (text == "none" || text == "noiseless") return none();
  if (text == "gaussian") return gaussian();
  if (text == "laplace") return laplace();
  if (text == "uniform") return uniform();
  throw Error(ErrorKind::UnsupportedFamily, "unknown noise family '" + text + "'");
}

std::string NoiseModel::name() const {
  switch (family) {
    case NoiseFamily::none: return "none";
    case NoiseFamily::gaussian: return "gaussian";
    case NoiseFamily::laplace: return "laplace";
    case NoiseFamily::uniform: return "uniform";
    case NoiseFamily::stable: return "stable(" + format_param(param) + ")";
    case NoiseFamily::student_t: return "student_t(" + format_param(param) + ")";
  }
  return "unknown";
}

double standard_normal(CounterRng& rng) {
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::vector<double> sample_stable(double q, double gamma, std::size_t count, CounterRng& rng) {
  validate_q(q);
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "stable scale must be positive");
  std::vector<double> out(count);
  for (double& v : out) v = gamma * standard_stable(q, rng);
  return out;
}

double noise_cf(const NoiseModel& model, double t) {
  const double a = std::abs(t);
  switch (model.family) {
    case NoiseFamily::none: return 1.0;
    case NoiseFamily::gaussian: return std::exp(-0.5 * a * a);
    case NoiseFamily::laplace: return 1.0 / (1.0 + a * a);
    case NoiseFamily::stable: return std::exp(-std::pow(a, model.param));
    case NoiseFamily::uniform: return a == 0.0 ? 1.0 : std::sin(a) / a;
    case NoiseFamily::student_t: return student_t_cf(model.param, a);
  }
  throw Error(ErrorKind::UnsupportedFamily, "unknown noise family");
}

std::vector<double> sample_noise(const NoiseModel& model, std::size_t count, CounterRng& rng) {
  std::vector<double> out(count, 0.0);
  switch (model.family) {
    case NoiseFamily::none:
      break;
    case NoiseFamily::gaussian:
      for (double& v : out) v = standard_normal(rng);
      break;
    case NoiseFamily::laplace:
      for (double& v : out) {
        const double u = rng.uniform01();
        v = u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
      }
      break;
    case NoiseFamily::stable:
      for (double& v : out) v = standard_stable(model.param, rng);
      break;
    case NoiseFamily::uniform:
      for (double& v : out) v = 2.0 * rng.uniform01() - 1.0;
      break;
    case NoiseFamily::student_t: {
      const double nu = model.param;
      for (double& v : out) {
        const double z = standard_normal(rng);
        const double chi2 = nu == 2.0 ? 2.0 * exponential(rng) : 2.0 * gamma_variate(0.5 * nu, rng);
        v = z / std::sqrt(chi2 / nu);
      }
      break;
    }
  }
  return out;
}

std::string to_string(MeasureMode mode) {
  return mode == MeasureMode::explicit_matrix ? "explicit" : "induced";
}

MeasureMode parse_measure_mode(const std::string& text) {
  if (text == "explicit") return MeasureMode::explicit_matrix;
  if (text == "induced") return MeasureMode::induced;
  throw Error(ErrorKind::InvalidArgument, "mode must be 'explicit' or 'induced', got '" + text + "'");
}

MeasurementBatch measure(const Signal& x, std::size_t n, double q, double gamma, double sigma,
                         const NoiseModel& noise, MeasureMode mode, std::uint64_t seed) {
  validate_q(q);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "measurement count n must be >= 1");
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::InvalidArgument, "sigma must be >= 0");

  MeasurementBatch batch;
  batch.q = q;
  batch.gamma = gamma;
  batch.sigma = sigma;
  batch.n = n;
  batch.mode = mode;
  batch.seed = seed;
  batch.noise = noise;
  if (x.is_zero()) batch.warnings.emplace_back("zero signal: measurements carry no signal component");

  CounterRng sketch_rng(derive_key(seed, 0));
  CounterRng noise_rng(derive_key(seed, 1));

  batch.y.assign(n, 0.0);
  if (mode == MeasureMode::induced) {
    const double scale = lq_norm(x.values(), q);
    if (scale > 0.0) {
      for (double& v : batch.y) v = gamma * scale * standard_stable(q, sketch_rng);
    }
  } else {
    const auto xs = x.values();
    for (double& v : batch.y) {
      double acc = 0.0;
      for (double xj : xs) acc += standard_stable(q, sketch_rng) * xj;
      v = gamma * acc;
    }
  }
  if (sigma > 0.0) {
    const auto eps = sample_noise(noise, n, noise_rng);
    for (std::size_t i = 0; i < n; ++i) batch.y[i] += sigma * eps[i];
  }
  return batch;
}

}  // namespace numsparse
