#include "numsparse/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "numsparse/error.hpp"
#include "numsparse/stable.hpp"

namespace numsparse {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void project_out(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (const auto& b : basis) {
    const double c = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorKind::InvalidDims, "matrix needs n >= 1 and p >= 1");
  if (data_.size() != rows_ * cols_) throw Error(ErrorKind::InvalidDims, "matrix data size does not match n x p");
  for (double v : data_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "matrix entries must be finite");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw Error(ErrorKind::LengthMismatch, "matrix-vector size mismatch");
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), x);
  return out;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

double bpdn_upper_bound(double s2, std::size_t n, std::size_t p, double noise_term, double c2, double c3) {
  if (n < 1 || n > p) throw Error(ErrorKind::InvalidDims, "BPDN bound needs 1 <= n <= p");
  if (!(s2 >= 0.0 && s2 <= static_cast<double>(p))) {
    throw Error(ErrorKind::InvalidArgument, "s2 must lie in [0, p]");
  }
  if (!(noise_term >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise term must be >= 0");
  const double nn = static_cast<double>(n);
  const double log_term = std::log(static_cast<double>(p) * kE / nn);
  return c2 * noise_term + c3 * std::sqrt(s2 * log_term / nn);
}

bool bpdn_condition_holds(std::size_t n, std::size_t p) {
  return n >= 1 && n <= p && std::log(static_cast<double>(p) * kE / static_cast<double>(n)) <= static_cast<double>(n);
}

LowerBound minimax_lower_bound(std::size_t n, std::size_t p, double q) {
  if (n < 1 || n >= p) throw Error(ErrorKind::InvalidDims, "minimax bound needs 1 <= n < p");
  if (!(q >= 0.0)) throw Error(ErrorKind::InvalidQ, "q must lie in [0, inf]");
  const double pp = static_cast<double>(p);
  const double gap = 1.0 - static_cast<double>(n) / pp;
  LowerBound lb;
  if (q <= 2.0) {
    lb.raw = gap * gap / (2.0 * kPi * kE) - 1.0 / (2.0 * pp);
  } else {
    lb.raw = gap / (std::sqrt(2.0 * kPi * kE) * (1.0 + std::sqrt(16.0 * std::log(2.0 * pp)))) - 1.0 / (2.0 * pp);
  }
  lb.clamped = lb.raw < 0.0;
  lb.value = std::max(lb.raw, 0.0);
  return lb;
}

double adversarial_sparsity_bound(std::size_t n, std::size_t p, double q) {
  if (n >= p) throw Error(ErrorKind::InvalidDims, "adversarial bound needs n < p");
  const double pp = static_cast<double>(p);
  const double nn = static_cast<double>(n);
  if (q <= 2.0) {
    const double gap = 1.0 - nn / pp;
    return gap * gap * pp / (kPi * kE);
  }
  return std::sqrt(2.0 / (kPi * kE)) * (pp - nn) / (1.0 + std::sqrt(16.0 * std::log(2.0 * pp)));
}

std::vector<std::vector<double>> null_space_basis(const Matrix& a, double tol) {
  const std::size_t p = a.cols();
  // Orthonormal basis of the row space, modified Gram-Schmidt with one
  // re-orthogonalization pass.
  std::vector<std::vector<double>> rowspace;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<double> v(a.row(i).begin(), a.row(i).end());
    const double original = norm2(v);
    if (original == 0.0) continue;
    project_out(v, rowspace);
    project_out(v, rowspace);
    const double nv = norm2(v);
    if (nv <= tol * original) continue;
    for (double& x : v) x /= nv;
    rowspace.push_back(std::move(v));
  }
  const std::size_t dim = p - rowspace.size();

  // Complete with projected standard basis vectors, choosing the largest
  // residual each time.
  std::vector<std::vector<double>> residual(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) {
    residual[j][j] = 1.0;
    project_out(residual[j], rowspace);
  }
  std::vector<std::vector<double>> basis;
  std::vector<bool> used(p, false);
  while (basis.size() < dim) {
    std::size_t pick = p;
    double best = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (used[j]) continue;
      const double nj = norm2(residual[j]);
      if (nj > best) {
        best = nj;
        pick = j;
      }
    }
    if (pick == p || best <= tol) break;
    used[pick] = true;
    std::vector<double> v(p, 0.0);
    v[pick] = 1.0;
    project_out(v, rowspace);
    project_out(v, basis);
    project_out(v, rowspace);
    project_out(v, basis);
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    for (std::size_t j = 0; j < p; ++j) {
      if (used[j]) continue;
      const double c = dot(residual[j], v);
      for (std::size_t i = 0; i < p; ++i) residual[j][i] -= c * v[i];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

AdversarialResult adversarial_signal(const Matrix& a, const Signal& x0, double q, std::size_t trials,
                                     CounterRng& rng) {
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  if (n >= p) throw Error(ErrorKind::InvalidDims, "adversarial construction needs n < p");
  if (x0.size() != p) throw Error(ErrorKind::LengthMismatch, "x0 length must equal the number of columns of A");
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
  if (!(q >= 0.0)) throw Error(ErrorKind::InvalidQ, "q must lie in [0, inf]");

  const auto basis = null_space_basis(a);
  const double scale = x0.is_zero() ? 1.0 : norm_pow(x0.values(), kInf);
  const std::size_t d = basis.size();

  std::vector<double> best_x;
  double best_s = -1.0;
  std::vector<double> cand(p);
  for (std::size_t t = 0; t < trials; ++t) {
    std::copy(x0.values().begin(), x0.values().end(), cand.begin());
    for (std::size_t k = 0; k < d; ++k) {
      const double z = scale * standard_normal(rng);
      for (std::size_t i = 0; i < p; ++i) cand[i] += z * basis[k][i];
    }
    const double s = numerical_sparsity(Signal(cand), q);
    if (s > best_s) {
      best_s = s;
      best_x = cand;
    }
  }

  AdversarialResult out{Signal(best_x)};
  out.s_q = best_s;
  out.bound = adversarial_sparsity_bound(n, p, q);
  out.success = out.s_q >= out.bound;
  out.null_dim = d;
  const auto ax = a.apply(best_x);
  const auto a0 = a.apply(x0.values());
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) r2 += (ax[i] - a0[i]) * (ax[i] - a0[i]);
  out.residual = std::sqrt(r2);
  if (out.residual > 1e-8 * a.frobenius_norm() * norm2(best_x)) {
    throw Error(ErrorKind::Numerical, "constructed signal leaves the affine fiber of x0");
  }
  return out;
}

}  // namespace numsparse
