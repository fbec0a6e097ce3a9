#pragma once

// Reference computations for the tests. Nothing here calls into the library, so agreement
// with it is evidence rather than tautology.

#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Real = long double;
using Field = std::function<Real(Real, Real)>;

struct Scheme {
  std::size_t n;
  Real k;
  std::vector<Real> m;  // m_1..m_{n-1}

  static Scheme order_statistics(std::size_t n) { return {n, 1.0L, std::vector<Real>(n - 1, 0.0L)}; }
  static Scheme records(std::size_t n) { return {n, 1.0L, std::vector<Real>(n - 1, -1.0L)}; }
  // gamma_r = k + n - r + m_r + ... + m_{n-1}
  Real gamma(std::size_t r) const;
};

struct Prior {
  Real a1, b1, a2, b2;
};

Real uw_cdf(Real x, Real alpha, Real beta);
Real uw_pdf(Real x, Real alpha, Real beta);

// Straight from the dgos joint density
//   k prod_{j<n} gamma_j  prod_{i<n} F(x_i)^{m_i} f(x_i)  F(x_n)^{k-1} f(x_n).
Real log_likelihood(const std::vector<double>& x, const Scheme& s, Real alpha, Real beta);
Real log_prior(const Prior& p, Real alpha, Real beta);

// Posterior on a trapezoid grid. The box is found by scanning outward from the grid maximum
// until the log density on every edge is at least `drop` below the peak.
class PosteriorGrid {
 public:
  PosteriorGrid(const std::vector<double>& x, const Scheme& s, const Prior& p, std::size_t points = 800,
                Real drop = 30.0L);

  Real expect(const Field& g) const;
  Real alpha_lo() const { return a0_; }
  Real alpha_hi() const { return a1_; }
  Real beta_lo() const { return b0_; }
  Real beta_hi() const { return b1_; }

 private:
  std::vector<Real> alpha_, beta_, weight_;
  Real a0_, a1_, b0_, b1_;
};

// Partial derivative d^{p+q} f / d alpha^p d beta^q by tensor central differences, one
// Richardson step. Steps are relative to the coordinates.
Real partial(const Field& f, Real alpha, Real beta, int p, int q, Real rel_step = 1e-3L);

// P(X <= x) for Gamma(shape, rate).
double gamma_cdf(double shape, double rate, double x);

// Plain sup-distance statistics.
double ks_distance(std::vector<double> data, const std::function<double(double)>& cdf);
double ks_distance_two(std::vector<double> a, std::vector<double> b);

// Asymptotic two-sided critical value of sqrt(n) D at level 0.01.
inline constexpr double kKsCritical01 = 1.6276;

// Normalized 1-D density on a fine grid with its cdf by the trapezoid rule.
class GridCdf {
 public:
  GridCdf(const std::function<Real(Real)>& log_density, Real lo, Real hi, std::size_t points);
  double operator()(double x) const;

 private:
  std::vector<Real> x_, cdf_;
};

}  // namespace oracle
