#pragma once

#include <array>

#include "uwdgos/bayes.hpp"
#include "uwdgos/dgos.hpp"
#include "uwdgos/mle.hpp"

namespace uwdgos {

/// Log-likelihood derivatives, their inverse information matrix and the log-prior gradient at
/// one parameter point (normally the MLE). Index 1 is alpha, index 2 is beta.
struct LindleyWorkspace {
  double L11 = 0.0, L22 = 0.0, L12 = 0.0;
  double L111 = 0.0, L222 = 0.0, L112 = 0.0, L122 = 0.0;
  /// Inverse of [-L_ij].
  std::array<std::array<double, 2>, 2> tau{};
  double phi1 = 0.0, phi2 = 0.0;
};

LindleyWorkspace lindley_derivatives(const DgosSample& sample, const DgosScheme& scheme,
                                     const GammaPriors& priors, const UwParams& at);

/// Second-order Lindley approximation of E[zeta | x]:
///
///   zeta + 1/2 sum zeta_ij tau_ij + sum phi_i P_i
///        + 1/2 [L111 tau11 P1 + L222 tau22 P2]
///        + 1/2 [L112 (2 tau12 P1 + tau11 P2) + L122 (tau22 P1 + 2 tau12 P2)],
///
/// with P_r = sum_j zeta_j tau_rj. `zeta` must be evaluated at the workspace point.
double lindley_expectation(const LindleyWorkspace& ws, const Jet& zeta);

/// Bayes estimate of `target` under `loss`, expanding around the MLE.
double lindley_estimate(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                        const LossSpec& loss, const Target& target);

/// Same, reusing an MLE and workspace already computed for this sample.
double lindley_estimate(const LindleyWorkspace& ws, const UwParams& mle, const LossSpec& loss,
                        const Target& target);

}  // namespace uwdgos
