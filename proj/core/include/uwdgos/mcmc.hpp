#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "uwdgos/bayes.hpp"
#include "uwdgos/dgos.hpp"
#include "uwdgos/random.hpp"

namespace uwdgos {

struct McmcConfig {
  std::size_t iterations = 11000;
  std::size_t burn_in = 1000;
  std::size_t thinning = 1;
  /// Random-walk scale for beta. Zero selects it with a pilot run.
  double proposal_sd = 0.0;
  std::size_t chains = 2;
  std::uint64_t seed = 20240917;
  std::size_t pilot_steps = 500;

  /// Throws DomainError unless (iterations - burn_in) / thinning >= 100.
  void validate() const;
  std::size_t retained() const { return (iterations - burn_in + thinning - 1) / thinning; }
};

struct PosteriorDraws {
  std::vector<double> alpha;
  std::vector<double> beta;
  /// Iteration index (0-based, before burn-in removal) of each retained draw.
  std::vector<std::size_t> iteration;
  double acceptance_rate_beta = 0.0;
  double proposal_sd = 0.0;
};

/// One draw from alpha | beta, x ~ Gamma(shape n + a1, rate b1 + S(beta)).
double sample_alpha_conditional(Rng& rng, const DgosSample& sample, const DgosScheme& scheme,
                                const GammaPriors& priors, double beta);

/// Log kernel of beta | alpha, x:
///   (n + a2 - 1) ln beta + (beta - 1) sum ln y_i - b2 beta - alpha S(beta).
double beta_log_kernel(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                       double alpha, double beta);

struct MhOutcome {
  double beta;
  bool accepted;
};

/// Metropolis accept/reject of a given proposal; non-positive proposals are rejected.
MhOutcome mh_accept_beta(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                         double alpha, double beta_current, double beta_proposed);

/// Random-walk step: proposes beta' ~ Normal(beta_current, proposal_sd^2) and accepts it with
/// probability min(1, pi(beta'|alpha,x) / pi(beta|alpha,x)).
MhOutcome mh_step_beta(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                       double alpha, double beta_current, double proposal_sd);

/// Proposal scale from short pilot runs aiming at a 0.2-0.5 acceptance rate.
double tune_proposal_sd(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                        const UwParams& start, std::size_t pilot_steps);

/// One chain alternating the alpha Gibbs draw and the beta MH step. Uses config.proposal_sd
/// when positive, otherwise tunes it first from the same stream.
PosteriorDraws run_chain(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                         const McmcConfig& config, const UwParams& start);

/// Chain starting point: the MLE, or the prior means when the MLE does not exist.
UwParams chain_start(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors);

/// config.chains chains on streams derived from config.seed, run concurrently. Chain 0 starts
/// at chain_start(); the others at that point times exp(N(0, 0.25)) per coordinate. The result
/// depends only on (seed, chains, config), not on thread scheduling.
std::vector<PosteriorDraws> run_chains(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                                       const McmcConfig& config, bool parallel = true);

PosteriorDraws pool(const std::vector<PosteriorDraws>& chains);

/// SELF: mean; LINEX: -(1/c) ln mean exp(-c theta); GE: (mean theta^-c)^(-1/c).
double mcmc_estimate(const PosteriorDraws& draws, const LossSpec& loss, const Target& target);

/// Potential scale reduction factor sqrt(((L-1)/L W + B/L) / W) for equal-length chains.
/// Throws DomainError for fewer than two chains, unequal lengths, or chains shorter than 10.
double gelman_rubin(const std::vector<std::vector<double>>& chains);

}  // namespace uwdgos
