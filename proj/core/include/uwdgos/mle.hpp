#pragma once

#include <array>

#include "uwdgos/dgos.hpp"
#include "uwdgos/unit_weibull.hpp"

namespace uwdgos {

struct MleOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
  double beta_lower = 1e-3;
  double beta_upper = 1e3;
};

struct MleResult {
  UwParams params;
  bool converged = false;
  int iterations = 0;
  double score_norm = 0.0;
};

/// Gradient (dl/dalpha, dl/dbeta) of the dgos log-likelihood.
std::array<double, 2> score(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p);

/// Profile score in beta after substituting alpha = n / S(beta):
///   n/beta + sum ln y_i - n S_1(beta)/S(beta).
/// Strictly decreasing in beta.
double profile_score(const DgosSample& sample, const DgosScheme& scheme, double beta);

/// Maximum-likelihood fit. The beta root is bracketed on [beta_lower, beta_upper], refined
/// by bisection on log(beta), then Newton-polished; alpha follows as n / S(beta).
///
/// Throws DegenerateSample when n < 2 or the profile score has no root in the bracket, and
/// NoConvergence when the polish fails to reach the tolerance.
MleResult fit_mle(const DgosSample& sample, const DgosScheme& scheme, const MleOptions& options = {});

}  // namespace uwdgos
