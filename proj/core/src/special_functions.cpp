#include "uwdgos/special_functions.hpp"

#include <cmath>

#include "uwdgos/errors.hpp"

namespace uwdgos {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma needs a positive finite argument");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  // ln x - 1/(2x) - sum B_2k / (2k x^2k)
  const double series =
      r2 * (1.0 / 12 - r2 * (1.0 / 120 - r2 * (1.0 / 252 - r2 * (1.0 / 240 - r2 * (1.0 / 132 - r2 * 691.0 / 32760)))));
  return acc + std::log(x) - 0.5 * r - series;
}

double trigamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("trigamma needs a positive finite argument");
  double acc = 0.0;
  while (x < 10.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  // 1/x + 1/(2x^2) + sum B_2k / x^(2k+1)
  const double series = r * r2 * (1.0 / 6 - r2 * (1.0 / 30 - r2 * (1.0 / 42 - r2 * (1.0 / 30 - r2 * 5.0 / 66))));
  return acc + r + 0.5 * r2 + series;
}

}  // namespace uwdgos
