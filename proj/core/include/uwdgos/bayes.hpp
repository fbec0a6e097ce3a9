#pragma once

#include <array>
#include <string>

#include "uwdgos/unit_weibull.hpp"

namespace uwdgos {

/// Independent gamma priors alpha ~ Gamma(a1, rate b1), beta ~ Gamma(a2, rate b2).
class GammaPriors {
 public:
  GammaPriors(double a1, double b1, double a2, double b2);

  double a1() const noexcept { return a1_; }
  double b1() const noexcept { return b1_; }
  double a2() const noexcept { return a2_; }
  double b2() const noexcept { return b2_; }

  /// Log prior density without the normalizing constants.
  double log_kernel(double alpha, double beta) const;

  friend bool operator==(const GammaPriors&, const GammaPriors&) = default;

 private:
  double a1_, b1_, a2_, b2_;
};

enum class LossKind { self, linex, ge };

/// Loss selector. LINEX and GE carry a nonzero constant c.
class LossSpec {
 public:
  static LossSpec self() { return LossSpec(LossKind::self, 0.0); }
  static LossSpec linex(double c);
  static LossSpec ge(double c);

  LossKind kind() const noexcept { return kind_; }
  double c() const noexcept { return c_; }

  friend bool operator==(const LossSpec&, const LossSpec&) = default;

 private:
  LossSpec(LossKind kind, double c) : kind_(kind), c_(c) {}
  LossKind kind_;
  double c_;
};

std::string to_string(LossKind kind);

enum class TargetKind { alpha, beta, reliability };

/// Quantity being estimated: alpha, beta or R(t).
class Target {
 public:
  static Target alpha() { return Target(TargetKind::alpha, 0.5); }
  static Target beta() { return Target(TargetKind::beta, 0.5); }
  static Target reliability(double t);

  TargetKind kind() const noexcept { return kind_; }
  double t() const noexcept { return t_; }
  double value(const UwParams& p) const;
  std::string name() const;

 private:
  Target(TargetKind kind, double t) : kind_(kind), t_(t) {}
  TargetKind kind_;
  double t_;
};

/// Value, gradient and Hessian of a scalar field over (alpha, beta).
struct Jet {
  double value = 0.0;
  std::array<double, 2> grad{0.0, 0.0};
  std::array<std::array<double, 2>, 2> hess{{{0.0, 0.0}, {0.0, 0.0}}};

  static Jet constant(double v) { return Jet{v, {0.0, 0.0}, {{{0.0, 0.0}, {0.0, 0.0}}}}; }
};

/// Second-order jet of the target at (alpha, beta).
Jet target_jet(const Target& target, double alpha, double beta);

/// Chain rule for g(inner) given g, g', g'' at inner.value.
Jet compose(const Jet& inner, double g, double dg, double d2g);

/// zeta whose posterior expectation yields the Bayes estimate: theta, exp(-c theta) or
/// theta^(-c). Theta is floored at 1e-300 before the GE power.
Jet loss_zeta(const LossSpec& loss, const Target& target, double alpha, double beta);

/// ln zeta, expressed without forming zeta: ln theta, -c theta, or -c ln theta.
Jet loss_log_zeta(const LossSpec& loss, const Target& target, double alpha, double beta);

/// Turns an approximate E[zeta] into the Bayes estimate: E, -(1/c) ln E, or E^(-1/c).
/// Throws ApproximationOutOfRange when E is not positive (LINEX, GE) or not finite, or when
/// a reliability estimate leaves (0,1).
double finish_estimate(const LossSpec& loss, const Target& target, double expectation);

}  // namespace uwdgos
