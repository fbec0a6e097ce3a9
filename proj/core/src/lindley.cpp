#include "uwdgos/lindley.hpp"

#include <cmath>

#include "uwdgos/errors.hpp"

namespace uwdgos {

LindleyWorkspace lindley_derivatives(const DgosSample& sample, const DgosScheme& scheme,
                                     const GammaPriors& priors, const UwParams& at) {
  const PowerSums sums(sample, scheme, at.beta());
  const auto n = static_cast<double>(sample.size());
  const double a = at.alpha();
  const double b = at.beta();

  LindleyWorkspace ws;
  ws.L11 = -n / (a * a);
  ws.L12 = -sums.s(1);
  ws.L22 = -n / (b * b) - a * sums.s(2);
  ws.L111 = 2.0 * n / (a * a * a);
  ws.L112 = 0.0;
  ws.L122 = -sums.s(2);
  ws.L222 = 2.0 * n / (b * b * b) - a * sums.s(3);

  const double i11 = -ws.L11;
  const double i12 = -ws.L12;
  const double i22 = -ws.L22;
  const double det = i11 * i22 - i12 * i12;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw ApproximationOutOfRange("observed information is not positive definite at the expansion point");
  }
  ws.tau = {{{i22 / det, -i12 / det}, {-i12 / det, i11 / det}}};

  ws.phi1 = (priors.a1() - 1.0) / a - priors.b1();
  ws.phi2 = (priors.a2() - 1.0) / b - priors.b2();
  return ws;
}

double lindley_expectation(const LindleyWorkspace& ws, const Jet& zeta) {
  const auto& t = ws.tau;
  const double p1 = zeta.grad[0] * t[0][0] + zeta.grad[1] * t[0][1];
  const double p2 = zeta.grad[0] * t[1][0] + zeta.grad[1] * t[1][1];

  double curvature = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) curvature += zeta.hess[i][j] * t[i][j];
  }

  return zeta.value + 0.5 * curvature + ws.phi1 * p1 + ws.phi2 * p2 +
         0.5 * (ws.L111 * t[0][0] * p1 + ws.L222 * t[1][1] * p2) +
         0.5 * (ws.L112 * (2.0 * t[0][1] * p1 + t[0][0] * p2) + ws.L122 * (t[1][1] * p1 + 2.0 * t[0][1] * p2));
}

double lindley_estimate(const LindleyWorkspace& ws, const UwParams& mle, const LossSpec& loss,
                        const Target& target) {
  const Jet zeta = loss_zeta(loss, target, mle.alpha(), mle.beta());
  return finish_estimate(loss, target, lindley_expectation(ws, zeta));
}

double lindley_estimate(const DgosSample& sample, const DgosScheme& scheme, const GammaPriors& priors,
                        const LossSpec& loss, const Target& target) {
  const MleResult fit = fit_mle(sample, scheme);
  const LindleyWorkspace ws = lindley_derivatives(sample, scheme, priors, fit.params);
  return lindley_estimate(ws, fit.params, loss, target);
}

}  // namespace uwdgos
