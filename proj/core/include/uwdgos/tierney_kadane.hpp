#pragma once

#include <array>
#include <functional>
#include <optional>

#include "uwdgos/bayes.hpp"
#include "uwdgos/dgos.hpp"
#include "uwdgos/mle.hpp"

namespace uwdgos {

/// Which prior terms enter psi.
enum class TkPriorConvention {
  /// psi = (log-likelihood + full log-prior) / n.
  full_prior,
  /// Drops the alpha prior, so the alpha score equation is 1/alpha - S(beta)/n = 0.
  flat_alpha_prior,
};

struct TkOptions {
  TkPriorConvention convention = TkPriorConvention::full_prior;
  double tolerance = 1e-8;
  int max_iterations = 200;
};

/// ln zeta(alpha, beta) with gradient and Hessian. An empty function means zeta == 1.
using LogZeta = std::function<Jet(double alpha, double beta)>;

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct PsiOptimum {
  UwParams argmax;
  double value;
  Matrix2 hessian;
  int iterations;
};

/// Both maxima of the ratio plus the determinants of Sigma = (-Hessian)^{-1}.
struct TkWorkspace {
  PsiOptimum psi_hat;
  PsiOptimum psi_star_hat;
  double det_sigma;
  double det_sigma_star;
};

/// psi(alpha, beta) = (log-likelihood + log-prior) / n; the constant convention is fixed, so
/// only differences in psi are meaningful.
double psi(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors, const UwParams& p,
           TkPriorConvention convention = TkPriorConvention::full_prior);

/// psi + (1/n) ln zeta as a jet at p.
Jet psi_jet(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors, const UwParams& p,
            const LogZeta& log_zeta = {}, TkPriorConvention convention = TkPriorConvention::full_prior);

/// Damped Newton ascent on psi (or psi* when log_zeta is set), halving steps that leave the
/// positive quadrant or lower the objective. Throws NoConvergence, or NonConcaveAtOptimum
/// when the final Hessian is not negative definite.
PsiOptimum maximize_psi(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                        const LogZeta& log_zeta, const UwParams& start, const TkOptions& options = {});

/// Caches the MLE start and the psi maximum for one data set; each expectation then costs a
/// single psi* maximization.
class TkEngine {
 public:
  TkEngine(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
           const TkOptions& options = {});

  TkWorkspace workspace(const LogZeta& log_zeta) const;

  /// sqrt(det Sigma* / det Sigma) exp(n [psi*(max) - psi(max)]).
  double expectation(const LogZeta& log_zeta) const;

  double estimate(const LossSpec& loss, const Target& target) const;

  const PsiOptimum& psi_maximum() const noexcept { return psi_hat_; }
  const UwParams& start() const noexcept { return start_; }

 private:
  DgosSample sample_;
  DgosScheme scheme_;
  GammaPriors priors_;
  TkOptions options_;
  UwParams start_;
  PsiOptimum psi_hat_;
};

double tk_estimate(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                   const LossSpec& loss, const Target& target, const TkOptions& options = {});

}  // namespace uwdgos
