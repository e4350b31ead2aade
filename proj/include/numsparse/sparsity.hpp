#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace numsparse {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense real signal x in R^p; p >= 1 and all entries finite.
class Signal {
 public:
  explicit Signal(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  bool is_zero() const noexcept;

 private:
  std::vector<double> values_;
};

/// Probability vector over coordinates, masses_j = |x_j|^t / sum_k |x_k|^t.
struct IndexDistribution {
  std::vector<double> masses;
  double t_norm = 1.0;
};

/// sum_j |x_j|^q, i.e. ||x||_q^q for q > 0. q = infinity gives max |x_j|.
double norm_pow(std::span<const double> x, double q);

/// ||x||_q for q > 0 (q = infinity allowed).
double lq_norm(std::span<const double> x, double q);

IndexDistribution induced_distribution(const Signal& x, double t_norm = 1.0);

/// Renyi entropy H_q of a distribution; q in [0, inf], with the closed-form
/// limits at q = 0 (log support size), 1 (Shannon) and inf (-log max mass).
double renyi_entropy(const IndexDistribution& pi, double q);

/// Numerical sparsity s_q(x) = exp(H_q(pi(x))) with pi_j = |x_j| / ||x||_1.
/// s_q(0) = 0. Result lies in [0, p].
double numerical_sparsity(const Signal& x, double q);

/// True iff |a| is majorized by |b|: partial sums of the descending-sorted
/// |b| dominate those of |a|. Totals must agree within 1e-9.
bool majorizes(const Signal& a, const Signal& b);

/// x_i = c * i^-tau, i = 1..p, with c chosen so that ||x||_2 = 1.
Signal power_law_signal(std::size_t p, double tau);

}  // namespace numsparse
