#include "uwdgos/mle.hpp"

#include <cmath>
#include <string>

#include "uwdgos/errors.hpp"

namespace uwdgos {

std::array<double, 2> score(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p) {
  const PowerSums sums(sample, scheme, p.beta());
  const auto n = static_cast<double>(sample.size());
  return {n / p.alpha() - sums.s(0),
          n / p.beta() + sample.sum_log_neg_log() - p.alpha() * sums.s(1)};
}

double profile_score(const DgosSample& sample, const DgosScheme& scheme, double beta) {
  const PowerSums sums(sample, scheme, beta);
  const auto n = static_cast<double>(sample.size());
  return n / beta + sample.sum_log_neg_log() - n * sums.ratio(1);
}

namespace {

// d/dbeta of profile_score: -n/beta^2 - n (S_2/S - (S_1/S)^2).
double profile_slope(const DgosSample& sample, const DgosScheme& scheme, double beta) {
  const PowerSums sums(sample, scheme, beta);
  const auto n = static_cast<double>(sample.size());
  const double r1 = sums.ratio(1);
  return -n / (beta * beta) - n * (sums.ratio(2) - r1 * r1);
}

double score_norm_at(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p) {
  const auto g = score(sample, scheme, p);
  return std::hypot(g[0], g[1]);
}

}  // namespace

MleResult fit_mle(const DgosSample& sample, const DgosScheme& scheme, const MleOptions& options) {
  check_compatible(sample, scheme);
  if (sample.size() < 2) throw DegenerateSample("MLE needs at least two observations");

  double lo = options.beta_lower;
  double hi = options.beta_upper;
  double g_lo = profile_score(sample, scheme, lo);
  double g_hi = profile_score(sample, scheme, hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
    throw DegenerateSample("profile score has no root for beta in [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }

  int iterations = 0;
  // Bisection in log(beta) until the bracket is narrow enough for Newton.
  while (std::log(hi / lo) > 1e-6 && iterations < options.max_iterations) {
    const double mid = std::sqrt(lo * hi);
    const double g_mid = profile_score(sample, scheme, mid);
    ++iterations;
    if (g_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double beta = std::sqrt(lo * hi);
  for (; iterations < options.max_iterations; ++iterations) {
    const double g = profile_score(sample, scheme, beta);
    const double step = g / profile_slope(sample, scheme, beta);
    double next = beta - step;
    if (!(next > lo * 0.5 && next < hi * 2.0)) next = std::sqrt(lo * hi);
    const bool done = std::abs(next - beta) <= 1e-15 * beta;
    beta = next;
    if (done) break;
  }

  const PowerSums sums(sample, scheme, beta);
  const double alpha = static_cast<double>(sample.size()) * std::exp(-sums.log_s0());
  MleResult result{UwParams(alpha, beta), false, iterations, 0.0};
  result.score_norm = score_norm_at(sample, scheme, result.params);
  result.converged = result.score_norm < options.tolerance;
  if (!result.converged) {
    throw NoConvergence("MLE stopped after " + std::to_string(iterations) +
                        " iterations with score norm " + std::to_string(result.score_norm));
  }
  return result;
}

}  // namespace uwdgos
