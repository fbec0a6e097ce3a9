#include "uwdgos/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <string>

#include "uwdgos/errors.hpp"
#include "uwdgos/mle.hpp"

namespace uwdgos {

void McmcConfig::validate() const {
  if (iterations == 0) throw DomainError("MCMC needs at least one iteration");
  if (burn_in >= iterations) throw DomainError("burn-in must be smaller than the iteration count");
  if (thinning == 0) throw DomainError("thinning must be positive");
  if (chains == 0) throw DomainError("MCMC needs at least one chain");
  if (proposal_sd < 0.0 || !std::isfinite(proposal_sd)) throw DomainError("proposal_sd must be non-negative");
  if ((iterations - burn_in) / thinning < 100) {
    throw DomainError("MCMC config keeps fewer than 100 draws per chain");
  }
}

double sample_alpha_conditional(Rng& rng, const DgosSample& sample, const DgosScheme& scheme,
                                const GammaPriors& priors, double beta) {
  const PowerSums sums(sample, scheme, beta);
  const double shape = static_cast<double>(sample.size()) + priors.a1();
  const double rate = priors.b1() + sums.s(0);
  std::gamma_distribution<double> g(shape, 1.0 / rate);
  return g(rng);
}

double beta_log_kernel(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                       double alpha, double beta) {
  const PowerSums sums(sample, scheme, beta);
  const auto n = static_cast<double>(sample.size());
  return (n + priors.a2() - 1.0) * std::log(beta) + (beta - 1.0) * sample.sum_log_neg_log() - priors.b2() * beta -
         alpha * sums.s(0);
}

MhOutcome mh_accept_beta(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                         double alpha, double beta_current, double beta_proposed) {
  if (!(beta_proposed > 0.0)) return {beta_current, false};
  const double log_ratio = beta_log_kernel(sample, scheme, priors, alpha, beta_proposed) -
                           beta_log_kernel(sample, scheme, priors, alpha, beta_current);
  if (log_ratio >= 0.0) return {beta_proposed, true};
  if (std::log(uniform_open(rng)) < log_ratio) return {beta_proposed, true};
  return {beta_current, false};
}

MhOutcome mh_step_beta(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                       double alpha, double beta_current, double proposal_sd) {
  std::normal_distribution<double> step(0.0, proposal_sd);
  return mh_accept_beta(rng, sample, scheme, priors, alpha, beta_current, beta_current + step(rng));
}

namespace {

struct ChainState {
  double alpha;
  double beta;
  double s_beta;  // S(beta) at the current beta
};

// One Gibbs sweep with S(beta) cached across the alpha draw and the MH step.
bool sweep(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors, double sd,
           ChainState& st) {
  const auto n = static_cast<double>(sample.size());
  std::gamma_distribution<double> g(n + priors.a1(), 1.0 / (priors.b1() + st.s_beta));
  st.alpha = g(rng);

  std::normal_distribution<double> step(0.0, sd);
  const double proposal = st.beta + step(rng);
  if (!(proposal > 0.0)) return false;
  const double s_prop = PowerSums(sample, scheme, proposal).s(0);
  const double log_ratio = (n + priors.a2() - 1.0) * std::log(proposal / st.beta) +
                           (proposal - st.beta) * sample.sum_log_neg_log() - priors.b2() * (proposal - st.beta) -
                           st.alpha * (s_prop - st.s_beta);
  if (log_ratio >= 0.0 || std::log(uniform_open(rng)) < log_ratio) {
    st.beta = proposal;
    st.s_beta = s_prop;
    return true;
  }
  return false;
}

}  // namespace

double tune_proposal_sd(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                        const UwParams& start, std::size_t pilot_steps) {
  double sd = 0.25 * start.beta();
  if (pilot_steps == 0) return sd;
  for (int round = 0; round < 12; ++round) {
    ChainState st{start.alpha(), start.beta(), PowerSums(sample, scheme, start.beta()).s(0)};
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < pilot_steps; ++i) accepted += sweep(rng, sample, scheme, priors, sd, st) ? 1 : 0;
    const double rate = static_cast<double>(accepted) / static_cast<double>(pilot_steps);
    if (rate >= 0.2 && rate <= 0.5) break;
    // Rescale toward a 0.35 acceptance rate, at most a factor of 4 per round.
    sd *= std::clamp(rate / 0.35, 0.25, 4.0);
  }
  return sd;
}

PosteriorDraws run_chain(Rng& rng, const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                         const McmcConfig& config, const UwParams& start) {
  config.validate();
  PosteriorDraws out;
  out.proposal_sd = config.proposal_sd > 0.0
                        ? config.proposal_sd
                        : tune_proposal_sd(rng, sample, scheme, priors, start, config.pilot_steps);
  out.alpha.reserve(config.retained());
  out.beta.reserve(config.retained());
  out.iteration.reserve(config.retained());

  ChainState st{start.alpha(), start.beta(), PowerSums(sample, scheme, start.beta()).s(0)};
  std::size_t accepted = 0;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    accepted += sweep(rng, sample, scheme, priors, out.proposal_sd, st) ? 1 : 0;
    if (it >= config.burn_in && (it - config.burn_in) % config.thinning == 0) {
      out.alpha.push_back(st.alpha);
      out.beta.push_back(st.beta);
      out.iteration.push_back(it);
    }
  }
  out.acceptance_rate_beta = static_cast<double>(accepted) / static_cast<double>(config.iterations);
  return out;
}

UwParams chain_start(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors) {
  try {
    return fit_mle(sample, scheme).params;
  } catch (const Error&) {
    return UwParams(priors.a1() / priors.b1(), priors.a2() / priors.b2());
  }
}

std::vector<PosteriorDraws> run_chains(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                                       const McmcConfig& config, bool parallel) {
  config.validate();
  const UwParams start = chain_start(sample, scheme, priors);
  auto one = [&](std::size_t c) {
    Rng rng = make_rng(derive_seed(config.seed, {c}));
    if (c == 0) return run_chain(rng, sample, scheme, priors, config, start);
    // Later chains start off the mode so the between-chain spread means something.
    std::normal_distribution<double> z(0.0, 0.5);
    const double a = start.alpha() * std::exp(z(rng));
    const double b = start.beta() * std::exp(z(rng));
    return run_chain(rng, sample, scheme, priors, config, UwParams(a, b));
  };

  std::vector<PosteriorDraws> out(config.chains);
  if (!parallel || config.chains == 1) {
    for (std::size_t c = 0; c < config.chains; ++c) out[c] = one(c);
    return out;
  }
  std::vector<std::future<PosteriorDraws>> pending;
  pending.reserve(config.chains);
  for (std::size_t c = 0; c < config.chains; ++c) pending.push_back(std::async(std::launch::async, one, c));
  for (std::size_t c = 0; c < config.chains; ++c) out[c] = pending[c].get();
  return out;
}

PosteriorDraws pool(const std::vector<PosteriorDraws>& chains) {
  PosteriorDraws out;
  double weighted_rate = 0.0;
  for (const auto& c : chains) {
    out.alpha.insert(out.alpha.end(), c.alpha.begin(), c.alpha.end());
    out.beta.insert(out.beta.end(), c.beta.begin(), c.beta.end());
    out.iteration.insert(out.iteration.end(), c.iteration.begin(), c.iteration.end());
    weighted_rate += c.acceptance_rate_beta;
  }
  if (!chains.empty()) {
    out.acceptance_rate_beta = weighted_rate / static_cast<double>(chains.size());
    out.proposal_sd = chains.front().proposal_sd;
  }
  return out;
}

double mcmc_estimate(const PosteriorDraws& draws, const LossSpec& loss, const Target& target) {
  if (draws.alpha.empty() || draws.alpha.size() != draws.beta.size()) {
    throw DomainError("posterior draws are empty or of unequal length");
  }
  const std::size_t count = draws.alpha.size();
  std::vector<double> theta(count);
  for (std::size_t i = 0; i < count; ++i) theta[i] = target.value(UwParams(draws.alpha[i], draws.beta[i]));

  if (loss.kind() == LossKind::self) {
    const double mean = std::accumulate(theta.begin(), theta.end(), 0.0) / static_cast<double>(count);
    return finish_estimate(loss, target, mean);
  }

  // Both asymmetric estimators are -(1/c) times a log-mean-exp of an exponent per draw.
  const double c = loss.c();
  std::vector<double> expo(count);
  for (std::size_t i = 0; i < count; ++i) {
    expo[i] = loss.kind() == LossKind::linex ? -c * theta[i] : -c * std::log(std::max(theta[i], 1e-300));
  }
  const double top = *std::max_element(expo.begin(), expo.end());
  double acc = 0.0;
  for (double e : expo) acc += std::exp(e - top);
  const double log_mean = top + std::log(acc / static_cast<double>(count));
  const double estimate = loss.kind() == LossKind::linex ? -log_mean / c : std::exp(-log_mean / c);
  if (target.kind() == TargetKind::reliability && !(estimate > 0.0 && estimate < 1.0)) {
    throw ApproximationOutOfRange("reliability estimate is outside (0,1)");
  }
  if (!std::isfinite(estimate)) throw ApproximationOutOfRange("MCMC estimate is not finite");
  return estimate;
}

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
  if (chains.size() < 2) throw DomainError("Gelman-Rubin needs at least two chains");
  const std::size_t len = chains.front().size();
  if (len < 10) throw DomainError("Gelman-Rubin needs chains of length >= 10");
  for (const auto& c : chains) {
    if (c.size() != len) throw DomainError("Gelman-Rubin needs chains of equal length");
  }
  const auto L = static_cast<double>(len);
  const auto J = static_cast<double>(chains.size());

  std::vector<double> means;
  double within = 0.0;
  for (const auto& c : chains) {
    const double m = std::accumulate(c.begin(), c.end(), 0.0) / L;
    double ss = 0.0;
    for (double v : c) ss += (v - m) * (v - m);
    means.push_back(m);
    within += ss / (L - 1.0);
  }
  within /= J;
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / J;
  double between = 0.0;
  for (double m : means) between += (m - grand) * (m - grand);
  between *= L / (J - 1.0);

  if (!(within > 0.0)) throw DomainError("Gelman-Rubin is undefined for constant chains");
  const double pooled = (L - 1.0) / L * within + between / L;
  return std::sqrt(pooled / within);
}

}  // namespace uwdgos
