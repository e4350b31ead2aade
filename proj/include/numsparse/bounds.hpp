#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "numsparse/rng.hpp"
#include "numsparse/sparsity.hpp"

namespace numsparse {

/// Dense row-major n x p matrix.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  const std::vector<double>& data() const noexcept { return data_; }

  std::vector<double> apply(std::span<const double> x) const;
  double frobenius_norm() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Relative l2 error bound for BPDN in terms of s_2:
/// c2 * noise_term + c3 * sqrt(s2 * log(p e / n) / n).
double bpdn_upper_bound(double s2, std::size_t n, std::size_t p, double noise_term, double c2 = 1.0,
                        double c3 = 1.0);

/// log(p e / n) <= n, the sample-size condition under which the bound holds.
bool bpdn_condition_holds(std::size_t n, std::size_t p);

struct LowerBound {
  double value = 0.0;  // clamped at 0
  double raw = 0.0;
  bool clamped = false;
};

/// Minimax relative error lower bound for estimating s_q(x) from noiseless
/// deterministic measurements (n < p).
LowerBound minimax_lower_bound(std::size_t n, std::size_t p, double q);

/// s_q value that some point of every affine fiber {v : A v = A x0} attains.
double adversarial_sparsity_bound(std::size_t n, std::size_t p, double q);

/// Orthonormal basis of null(A); basis[k] is the k-th basis vector in R^p.
std::vector<std::vector<double>> null_space_basis(const Matrix& a, double tol = 1e-10);

struct AdversarialResult {
  Signal x_tilde;
  double s_q = 0.0;
  double bound = 0.0;
  bool success = false;
  double residual = 0.0;  // ||A x_tilde - A x0||_2
  std::size_t null_dim = 0;
};

/// Random search over x0 + ||x0||_inf B z (B an orthonormal null-space basis,
/// z standard normal) for a signal indistinguishable from x0 under A but with
/// large s_q. Returns the best of `trials` draws.
AdversarialResult adversarial_signal(const Matrix& a, const Signal& x0, double q, std::size_t trials,
                                     CounterRng& rng);

}  // namespace numsparse
