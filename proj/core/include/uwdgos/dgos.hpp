#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uwdgos/random.hpp"
#include "uwdgos/unit_weibull.hpp"

namespace uwdgos {

/// Configuration (n, k, m_1..m_{n-1}) of dual generalized order statistics with the derived
/// weights gamma_r = k + n - r + M_r, M_r = sum_{j=r}^{n-1} m_j, and gamma_n = k.
///
/// Construction fails with InvalidScheme unless every gamma_r is positive. k in (0,1) is
/// accepted but flagged through k_warning().
class DgosScheme {
 public:
  static DgosScheme order_statistics(std::size_t n);
  static DgosScheme lower_records(std::size_t n);
  static DgosScheme general(std::size_t n, double k, std::vector<double> m);

  std::size_t n() const noexcept { return gamma_.size(); }
  double k() const noexcept { return k_; }
  std::span<const double> m() const noexcept { return m_; }
  std::span<const double> gamma() const noexcept { return gamma_; }

  /// Exponent weights of the likelihood: m_i + 1 for i < n, k for i = n.
  std::span<const double> weights() const noexcept { return weights_; }

  /// ln k + sum_{j<n} ln gamma_j.
  double log_normalizer() const noexcept { return log_normalizer_; }

  bool k_warning() const noexcept { return k_ < 1.0; }

  friend bool operator==(const DgosScheme& a, const DgosScheme& b) { return a.k_ == b.k_ && a.m_ == b.m_; }

 private:
  DgosScheme(std::size_t n, double k, std::vector<double> m);

  double k_;
  std::vector<double> m_;
  std::vector<double> gamma_;
  std::vector<double> weights_;
  double log_normalizer_ = 0.0;
};

/// Observed dgos values 1 > x_1 >= x_2 >= ... >= x_n > 0.
class DgosSample {
 public:
  explicit DgosSample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  /// y_i = -ln x_i (non-decreasing).
  std::span<const double> neg_log() const noexcept { return neg_log_; }
  /// ln y_i.
  std::span<const double> log_neg_log() const noexcept { return log_neg_log_; }
  /// sum_i ln y_i.
  double sum_log_neg_log() const noexcept { return sum_log_neg_log_; }
  /// sum_i y_i = -sum_i ln x_i.
  double sum_neg_log() const noexcept { return sum_neg_log_; }

 private:
  std::vector<double> values_;
  std::vector<double> neg_log_;
  std::vector<double> log_neg_log_;
  double sum_log_neg_log_ = 0.0;
  double sum_neg_log_ = 0.0;
};

/// The sums S_j(beta) = sum_i w_i y_i^beta (ln y_i)^j, j = 0..3, shared by the likelihood,
/// score, Hessian and third derivatives. Stored as exp(log_scale) * scaled_j so that large
/// beta does not overflow.
class PowerSums {
 public:
  PowerSums(const DgosSample& sample, const DgosScheme& scheme, double beta);

  double s(int order) const;
  /// S_j / S_0; finite even when S_0 itself overflows.
  double ratio(int order) const { return scaled_[order] / scaled_[0]; }
  double log_s0() const;

 private:
  double log_scale_ = 0.0;
  double scaled_[4] = {0.0, 0.0, 0.0, 0.0};
};

/// Draws one dgos sample from the UW parent with the product representation
/// W_i = prod_{j<=i} U_j^{1/gamma_j}, X_i = F^{-1}(W_i).
DgosSample sample_dgos(Rng& rng, const DgosScheme& scheme, const UwParams& p);

/// Full log-likelihood including ln k + sum ln gamma_j. Throws DomainError when the sample
/// length differs from the scheme's n.
double log_likelihood(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p);

/// Same value given precomputed sums at p.beta().
double log_likelihood(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p,
                      const PowerSums& sums);

void check_compatible(const DgosSample& sample, const DgosScheme& scheme);

}  // namespace uwdgos
