#include "uwdgos/bayes.hpp"

#include <algorithm>
#include <cmath>

#include "uwdgos/errors.hpp"

namespace uwdgos {

namespace {
constexpr double kGeFloor = 1e-300;
}

GammaPriors::GammaPriors(double a1, double b1, double a2, double b2) : a1_(a1), b1_(b1), a2_(a2), b2_(b2) {
  for (double v : {a1, b1, a2, b2}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("gamma prior hyperparameters must be positive");
  }
}

double GammaPriors::log_kernel(double alpha, double beta) const {
  return (a1_ - 1.0) * std::log(alpha) - b1_ * alpha + (a2_ - 1.0) * std::log(beta) - b2_ * beta;
}

LossSpec LossSpec::linex(double c) {
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("LINEX loss needs a finite nonzero c");
  return LossSpec(LossKind::linex, c);
}

LossSpec LossSpec::ge(double c) {
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("GE loss needs a finite nonzero c");
  return LossSpec(LossKind::ge, c);
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::self: return "SELF";
    case LossKind::linex: return "LINEX";
    case LossKind::ge: return "GE";
  }
  return "?";
}

Target Target::reliability(double t) {
  ReliabilityQuery check(t);
  return Target(TargetKind::reliability, check.t());
}

double Target::value(const UwParams& p) const {
  switch (kind_) {
    case TargetKind::alpha: return p.alpha();
    case TargetKind::beta: return p.beta();
    case TargetKind::reliability: return uwdgos::reliability(ReliabilityQuery(t_), p);
  }
  return 0.0;
}

std::string Target::name() const {
  switch (kind_) {
    case TargetKind::alpha: return "alpha";
    case TargetKind::beta: return "beta";
    case TargetKind::reliability: return "R(t)";
  }
  return "?";
}

Jet target_jet(const Target& target, double alpha, double beta) {
  Jet j;
  switch (target.kind()) {
    case TargetKind::alpha:
      j.value = alpha;
      j.grad = {1.0, 0.0};
      return j;
    case TargetKind::beta:
      j.value = beta;
      j.grad = {0.0, 1.0};
      return j;
    case TargetKind::reliability: {
      // R = 1 - exp(-alpha q), q = u^beta, u = -ln t.
      const double log_u = std::log(-std::log(target.t()));
      const double q = std::exp(beta * log_u);
      const double e = std::exp(-alpha * q);
      j.value = -std::expm1(-alpha * q);
      j.grad = {q * e, alpha * q * log_u * e};
      const double h12 = q * log_u * e * (1.0 - alpha * q);
      j.hess = {{{-q * q * e, h12}, {h12, alpha * q * log_u * log_u * e * (1.0 - alpha * q)}}};
      return j;
    }
  }
  return j;
}

Jet compose(const Jet& inner, double g, double dg, double d2g) {
  Jet out;
  out.value = g;
  for (int a = 0; a < 2; ++a) {
    out.grad[a] = dg * inner.grad[a];
    for (int b = 0; b < 2; ++b) {
      out.hess[a][b] = d2g * inner.grad[a] * inner.grad[b] + dg * inner.hess[a][b];
    }
  }
  return out;
}

Jet loss_zeta(const LossSpec& loss, const Target& target, double alpha, double beta) {
  const Jet theta = target_jet(target, alpha, beta);
  const double c = loss.c();
  switch (loss.kind()) {
    case LossKind::self: return theta;
    case LossKind::linex: {
      const double e = std::exp(-c * theta.value);
      return compose(theta, e, -c * e, c * c * e);
    }
    case LossKind::ge: {
      const double th = std::max(theta.value, kGeFloor);
      const double p = std::pow(th, -c);
      return compose(theta, p, -c * p / th, c * (c + 1.0) * p / (th * th));
    }
  }
  return theta;
}

Jet loss_log_zeta(const LossSpec& loss, const Target& target, double alpha, double beta) {
  const Jet theta = target_jet(target, alpha, beta);
  const double c = loss.c();
  const double th = theta.value;
  switch (loss.kind()) {
    case LossKind::self:
      if (!(th > 0.0)) throw DomainError("ln(target) needs a positive target");
      return compose(theta, std::log(th), 1.0 / th, -1.0 / (th * th));
    case LossKind::linex: return compose(theta, -c * th, -c, 0.0);
    case LossKind::ge:
      if (!(th > 0.0)) throw DomainError("ln(target) needs a positive target");
      return compose(theta, -c * std::log(th), -c / th, c / (th * th));
  }
  return theta;
}

double finish_estimate(const LossSpec& loss, const Target& target, double expectation) {
  double estimate = expectation;
  if (!std::isfinite(expectation)) throw ApproximationOutOfRange("posterior expectation is not finite");
  if (loss.kind() != LossKind::self) {
    if (!(expectation > 0.0)) {
      throw ApproximationOutOfRange(to_string(loss.kind()) + " inner expectation " +
                                    std::to_string(expectation) + " is not positive");
    }
    estimate = loss.kind() == LossKind::linex ? -std::log(expectation) / loss.c()
                                              : std::pow(expectation, -1.0 / loss.c());
  }
  if (!std::isfinite(estimate)) throw ApproximationOutOfRange("estimate is not finite");
  if (target.kind() == TargetKind::reliability && !(estimate > 0.0 && estimate < 1.0)) {
    throw ApproximationOutOfRange("reliability estimate " + std::to_string(estimate) + " is outside (0,1)");
  }
  if (!(estimate > 0.0)) {
    throw ApproximationOutOfRange(target.name() + " estimate " + std::to_string(estimate) + " is not positive");
  }
  return estimate;
}

}  // namespace uwdgos
