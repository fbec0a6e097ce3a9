#pragma once

#include <cstddef>
#include <vector>

#include "uwdgos/random.hpp"

namespace uwdgos {

/// Shape pair (alpha, beta) of the Unit-Weibull law on (0,1):
///   F(x) = exp(-alpha * (-ln x)^beta).
/// Both shapes must be finite and strictly positive.
class UwParams {
 public:
  UwParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const UwParams&, const UwParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// A reliability time t in (0,1).
class ReliabilityQuery {
 public:
  explicit ReliabilityQuery(double t);
  double t() const noexcept { return t_; }

 private:
  double t_;
};

double pdf(double x, const UwParams& p);
double log_pdf(double x, const UwParams& p);
double cdf(double x, const UwParams& p);
double quantile(double u, const UwParams& p);

/// quantile() taking ln(u) instead of u, for probabilities too small to represent.
double quantile_from_log(double log_u, const UwParams& p);

/// R(t) = 1 - F(t).
double reliability(const ReliabilityQuery& q, const UwParams& p);

/// Inverse-transform sampling. Throws DomainError when count == 0.
std::vector<double> sample_iid(Rng& rng, const UwParams& p, std::size_t count);

}  // namespace uwdgos
