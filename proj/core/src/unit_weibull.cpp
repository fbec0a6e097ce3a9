#include "uwdgos/unit_weibull.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "uwdgos/errors.hpp"

namespace uwdgos {

namespace {

void require_open_unit(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0,1), got " + std::to_string(x));
  }
}

}  // namespace

UwParams::UwParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("Unit-Weibull shapes must be positive and finite (alpha=" + std::to_string(alpha) +
                      ", beta=" + std::to_string(beta) + ")");
  }
}

ReliabilityQuery::ReliabilityQuery(double t) : t_(t) { require_open_unit(t, "reliability time t"); }

double log_pdf(double x, const UwParams& p) {
  require_open_unit(x, "x");
  const double y = -std::log(x);
  const double log_y = std::log(y);
  // (-ln x)^(beta-1) and (-ln x)^beta are taken through log_y to stay finite near 0 and 1.
  return y + std::log(p.alpha()) + std::log(p.beta()) + (p.beta() - 1.0) * log_y -
         p.alpha() * std::exp(p.beta() * log_y);
}

double pdf(double x, const UwParams& p) { return std::exp(log_pdf(x, p)); }

double cdf(double x, const UwParams& p) {
  require_open_unit(x, "x");
  const double y = -std::log(x);
  return std::exp(-p.alpha() * std::pow(y, p.beta()));
}

double quantile_from_log(double log_u, const UwParams& p) {
  if (!(log_u < 0.0)) throw DomainError("quantile: log probability must be negative");
  const double y = std::pow(-log_u / p.alpha(), 1.0 / p.beta());
  double x = std::exp(-y);
  // Keep draws inside the open support when y under- or overflows double resolution.
  if (x <= 0.0) x = std::numeric_limits<double>::min();
  if (x >= 1.0) x = std::nextafter(1.0, 0.0);
  return x;
}

double quantile(double u, const UwParams& p) {
  require_open_unit(u, "u");
  return quantile_from_log(std::log(u), p);
}

double reliability(const ReliabilityQuery& q, const UwParams& p) {
  const double y = -std::log(q.t());
  return -std::expm1(-p.alpha() * std::pow(y, p.beta()));
}

std::vector<double> sample_iid(Rng& rng, const UwParams& p, std::size_t count) {
  if (count == 0) throw DomainError("sample_iid: count must be positive");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(quantile(uniform_open(rng), p));
  return out;
}

}  // namespace uwdgos
