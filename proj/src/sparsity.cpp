#include "numsparse/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "numsparse/error.hpp"

namespace numsparse {

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidDims, "signal must have p >= 1 entries");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "signal entries must be finite");
  }
}

bool Signal::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double norm_pow(std::span<const double> x, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : x) {
    if (v != 0.0) s += std::pow(std::abs(v), q);
  }
  return s;
}

double lq_norm(std::span<const double> x, double q) {
  if (std::isinf(q)) return norm_pow(x, q);
  return std::pow(norm_pow(x, q), 1.0 / q);
}

IndexDistribution induced_distribution(const Signal& x, double t_norm) {
  if (!(t_norm > 0.0) || !std::isfinite(t_norm)) {
    throw Error(ErrorKind::InvalidArgument, "t_norm must be a positive finite number");
  }
  if (x.is_zero()) throw Error(ErrorKind::ZeroSignal, "induced distribution of the zero signal");
  // Rescale by the max entry so |x_j|^t cannot overflow.
  const double scale = norm_pow(x.values(), kInf);
  IndexDistribution pi;
  pi.t_norm = t_norm;
  pi.masses.resize(x.size());
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = std::abs(x[j]) / scale;
    pi.masses[j] = a == 0.0 ? 0.0 : std::pow(a, t_norm);
    total += pi.masses[j];
  }
  for (double& m : pi.masses) m /= total;
  return pi;
}

double renyi_entropy(const IndexDistribution& pi, double q) {
  if (!(q >= 0.0)) throw Error(ErrorKind::InvalidQ, "Renyi order must lie in [0, inf]");
  const auto& m = pi.masses;
  if (q == 0.0) {
    const auto support = std::count_if(m.begin(), m.end(), [](double v) { return v > 0.0; });
    return std::log(static_cast<double>(support));
  }
  if (q == 1.0) {
    double h = 0.0;
    for (double v : m) {
      if (v > 0.0) h -= v * std::log(v);
    }
    return std::max(h, 0.0);
  }
  if (std::isinf(q)) {
    return -std::log(*std::max_element(m.begin(), m.end()));
  }
  double s = 0.0;
  for (double v : m) {
    if (v > 0.0) s += std::pow(v, q);
  }
  return std::max(std::log(s) / (1.0 - q), 0.0);
}

double numerical_sparsity(const Signal& x, double q) {
  if (!(q >= 0.0)) throw Error(ErrorKind::InvalidQ, "sparsity order must lie in [0, inf]");
  if (x.is_zero()) return 0.0;
  const auto v = x.values();
  const double p = static_cast<double>(x.size());
  if (q == 0.0) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [](double a) { return a != 0.0; }));
  }
  const double linf = norm_pow(v, kInf);
  double l1 = 0.0;
  for (double a : v) l1 += std::abs(a) / linf;
  if (std::isinf(q)) return std::min(l1, p);
  if (q == 1.0) {
    double h = 0.0;
    for (double a : v) {
      if (a == 0.0) continue;
      const double m = std::abs(a) / linf / l1;
      h -= m * std::log(m);
    }
    return std::clamp(std::exp(h), 1.0, p);
  }
  // (||u||_q / ||u||_1)^(q/(1-q)) for u = |x| / ||x||_inf, evaluated in logs.
  double lq_pow = 0.0;
  for (double a : v) {
    if (a != 0.0) lq_pow += std::pow(std::abs(a) / linf, q);
  }
  const double log_s = (std::log(lq_pow) - q * std::log(l1)) / (1.0 - q);
  return std::clamp(std::exp(log_s), 1.0, p);
}

namespace {

std::vector<double> sorted_abs_desc(const Signal& s) {
  std::vector<double> out(s.size());
  std::transform(s.values().begin(), s.values().end(), out.begin(), [](double v) { return std::abs(v); });
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

bool majorizes(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "majorization needs equal lengths");
  const auto sa = sorted_abs_desc(a);
  const auto sb = sorted_abs_desc(b);
  const double ta = std::accumulate(sa.begin(), sa.end(), 0.0);
  const double tb = std::accumulate(sb.begin(), sb.end(), 0.0);
  if (std::abs(ta - tb) > 1e-9) throw Error(ErrorKind::TotalMismatch, "majorization needs equal totals");
  const double tol = 1e-12 * std::max(1.0, ta);
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    pa += sa[k];
    pb += sb[k];
    if (pb < pa - tol) return false;
  }
  return true;
}

Signal power_law_signal(std::size_t p, double tau) {
  if (p == 0) throw Error(ErrorKind::InvalidDims, "power-law signal needs p >= 1");
  if (!std::isfinite(tau)) throw Error(ErrorKind::InvalidArgument, "decay exponent must be finite");
  std::vector<double> x(p);
  double ss = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    x[i] = std::pow(static_cast<double>(i + 1), -tau);
    ss += x[i] * x[i];
  }
  const double c = 1.0 / std::sqrt(ss);
  for (double& v : x) v *= c;
  return Signal(std::move(x));
}

}  // namespace numsparse
