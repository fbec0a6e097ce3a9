#include "uwdgos/tierney_kadane.hpp"

#include <cmath>
#include <string>

#include "uwdgos/errors.hpp"

namespace uwdgos {

namespace {

double det2(const Matrix2& h) { return h[0][0] * h[1][1] - h[0][1] * h[1][0]; }

bool negative_definite(const Matrix2& h) { return h[0][0] < 0.0 && det2(h) > 0.0; }

double largest_eigenvalue(const Matrix2& h) {
  const double mean = 0.5 * (h[0][0] + h[1][1]);
  const double half_gap = std::hypot(0.5 * (h[0][0] - h[1][1]), h[0][1]);
  return mean + half_gap;
}

}  // namespace

Jet psi_jet(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors, const UwParams& p,
            const LogZeta& log_zeta, TkPriorConvention convention) {
  const PowerSums sums(sample, scheme, p.beta());
  const auto n = static_cast<double>(sample.size());
  const double a = p.alpha();
  const double b = p.beta();

  double a1 = priors.a1();
  double b1 = priors.b1();
  if (convention == TkPriorConvention::flat_alpha_prior) {
    a1 = 1.0;
    b1 = 0.0;
  }
  const double log_prior = (a1 - 1.0) * std::log(a) - b1 * a + (priors.a2() - 1.0) * std::log(b) - priors.b2() * b;

  Jet j;
  j.value = (log_likelihood(sample, scheme, p, sums) + log_prior) / n;
  j.grad = {((n + a1 - 1.0) / a - b1 - sums.s(0)) / n,
            ((n + priors.a2() - 1.0) / b + sample.sum_log_neg_log() - a * sums.s(1) - priors.b2()) / n};
  const double h12 = -sums.s(1) / n;
  j.hess = {{{-(n + a1 - 1.0) / (n * a * a), h12}, {h12, (-(n + priors.a2() - 1.0) / (b * b) - a * sums.s(2)) / n}}};

  if (log_zeta) {
    const Jet z = log_zeta(a, b);
    j.value += z.value / n;
    for (int i = 0; i < 2; ++i) {
      j.grad[i] += z.grad[i] / n;
      for (int k = 0; k < 2; ++k) j.hess[i][k] += z.hess[i][k] / n;
    }
  }
  return j;
}

double psi(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors, const UwParams& p,
           TkPriorConvention convention) {
  return psi_jet(sample, scheme, priors, p, {}, convention).value;
}

PsiOptimum maximize_psi(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                        const LogZeta& log_zeta, const UwParams& start, const TkOptions& options) {
  auto eval = [&](double a, double b) {
    return psi_jet(sample, scheme, priors, UwParams(a, b), log_zeta, options.convention);
  };

  double a = start.alpha();
  double b = start.beta();
  Jet cur = eval(a, b);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (!std::isfinite(cur.value)) throw NoConvergence("psi is not finite at the current iterate");
    if (std::hypot(cur.grad[0], cur.grad[1]) < options.tolerance) break;

    Matrix2 h = cur.hess;
    if (!negative_definite(h)) {
      const double shift = largest_eigenvalue(h) + std::max(1e-6, 1e-3 * (std::abs(h[0][0]) + std::abs(h[1][1])));
      h[0][0] -= shift;
      h[1][1] -= shift;
    }
    const double det = det2(h);
    // Newton direction d = -H^{-1} g.
    const double da = -(h[1][1] * cur.grad[0] - h[0][1] * cur.grad[1]) / det;
    const double db = -(-h[1][0] * cur.grad[0] + h[0][0] * cur.grad[1]) / det;

    double step = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
      const double na = a + step * da;
      const double nb = b + step * db;
      if (!(na > 0.0 && nb > 0.0)) continue;
      const Jet next = eval(na, nb);
      // Accept any non-decreasing step; near the optimum the value change is below rounding.
      if (std::isfinite(next.value) && next.value >= cur.value - 1e-14 * std::abs(cur.value)) {
        a = na;
        b = nb;
        cur = next;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  const double gnorm = std::hypot(cur.grad[0], cur.grad[1]);
  if (!(gnorm < options.tolerance)) {
    throw NoConvergence("psi maximization stopped after " + std::to_string(it) + " iterations, gradient norm " +
                        std::to_string(gnorm));
  }
  if (!negative_definite(cur.hess)) throw NonConcaveAtOptimum("psi Hessian is not negative definite at the optimum");
  return PsiOptimum{UwParams(a, b), cur.value, cur.hess, it};
}

namespace {

UwParams start_point(const DgosSample& sample, const DgosScheme& scheme) { return fit_mle(sample, scheme).params; }

}  // namespace

TkEngine::TkEngine(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                   const TkOptions& options)
    : sample_(sample),
      scheme_(scheme),
      priors_(priors),
      options_(options),
      start_(start_point(sample, scheme)),
      psi_hat_(maximize_psi(sample, scheme, priors, {}, start_, options)) {}

TkWorkspace TkEngine::workspace(const LogZeta& log_zeta) const {
  PsiOptimum star = maximize_psi(sample_, scheme_, priors_, log_zeta, start_, options_);
  const double det_sigma = 1.0 / det2(psi_hat_.hessian);
  const double det_sigma_star = 1.0 / det2(star.hessian);
  return TkWorkspace{psi_hat_, star, det_sigma, det_sigma_star};
}

double TkEngine::expectation(const LogZeta& log_zeta) const {
  const TkWorkspace ws = workspace(log_zeta);
  const auto n = static_cast<double>(sample_.size());
  return std::sqrt(ws.det_sigma_star / ws.det_sigma) * std::exp(n * (ws.psi_star_hat.value - ws.psi_hat.value));
}

double TkEngine::estimate(const LossSpec& loss, const Target& target) const {
  const LogZeta log_zeta = [&](double a, double b) { return loss_log_zeta(loss, target, a, b); };
  return finish_estimate(loss, target, expectation(log_zeta));
}

double tk_estimate(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                   const LossSpec& loss, const Target& target, const TkOptions& options) {
  return TkEngine(sample, scheme, priors, options).estimate(loss, target);
}

}  // namespace uwdgos
