#pragma once

namespace uwdgos {

/// psi(x) = d/dx ln Gamma(x) for x > 0: upward recurrence to x >= 10, then the asymptotic
/// series. Absolute error below 1e-12.
double digamma(double x);

/// psi'(x) for x > 0, same scheme.
double trigamma(double x);

}  // namespace uwdgos
