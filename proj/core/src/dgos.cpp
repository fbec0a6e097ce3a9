#include "uwdgos/dgos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uwdgos/errors.hpp"

namespace uwdgos {

DgosScheme::DgosScheme(std::size_t n, double k, std::vector<double> m) : k_(k), m_(std::move(m)) {
  if (n == 0) throw InvalidScheme("dgos scheme needs n >= 1");
  if (m_.size() != n - 1) {
    throw InvalidScheme("dgos scheme needs n-1 = " + std::to_string(n - 1) + " m-values, got " +
                        std::to_string(m_.size()));
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidScheme("dgos scheme needs k > 0");
  for (double mi : m_) {
    if (!std::isfinite(mi)) throw InvalidScheme("dgos scheme m-values must be finite");
  }

  gamma_.assign(n, k);
  double tail = 0.0;  // M_r
  for (std::size_t r = n - 1; r-- > 0;) {
    tail += m_[r];
    gamma_[r] = k + static_cast<double>(n - (r + 1)) + tail;
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!(gamma_[r] > 0.0)) {
      throw InvalidScheme("gamma_" + std::to_string(r + 1) + " = " + std::to_string(gamma_[r]) +
                          " is not positive");
    }
  }

  weights_.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) weights_[i] = m_[i] + 1.0;
  weights_[n - 1] = k;

  log_normalizer_ = std::log(k);
  for (std::size_t j = 0; j + 1 < n; ++j) log_normalizer_ += std::log(gamma_[j]);
}

DgosScheme DgosScheme::order_statistics(std::size_t n) {
  if (n == 0) throw InvalidScheme("dgos scheme needs n >= 1");
  return DgosScheme(n, 1.0, std::vector<double>(n - 1, 0.0));
}

DgosScheme DgosScheme::lower_records(std::size_t n) {
  if (n == 0) throw InvalidScheme("dgos scheme needs n >= 1");
  return DgosScheme(n, 1.0, std::vector<double>(n - 1, -1.0));
}

DgosScheme DgosScheme::general(std::size_t n, double k, std::vector<double> m) {
  return DgosScheme(n, k, std::move(m));
}

DgosSample::DgosSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("dgos sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    if (!(x > 0.0 && x < 1.0)) {
      throw DomainError("dgos sample value x_" + std::to_string(i + 1) + " = " + std::to_string(x) +
                        " is outside (0,1)");
    }
    if (i > 0 && x > values_[i - 1]) {
      throw DomainError("dgos sample must be non-increasing (x_" + std::to_string(i + 1) + " > x_" +
                        std::to_string(i) + ")");
    }
  }
  neg_log_.reserve(values_.size());
  log_neg_log_.reserve(values_.size());
  for (double x : values_) {
    const double y = -std::log(x);
    neg_log_.push_back(y);
    log_neg_log_.push_back(std::log(y));
    sum_neg_log_ += y;
    sum_log_neg_log_ += log_neg_log_.back();
  }
}

PowerSums::PowerSums(const DgosSample& sample, const DgosScheme& scheme, double beta) {
  check_compatible(sample, scheme);
  const auto w = scheme.weights();
  const auto ly = sample.log_neg_log();
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) top = std::max(top, beta * ly[i] + std::log(std::abs(w[i])));
  }
  log_scale_ = top;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const double term = std::copysign(std::exp(beta * ly[i] + std::log(std::abs(w[i])) - top), w[i]);
    scaled_[0] += term;
    scaled_[1] += term * ly[i];
    scaled_[2] += term * ly[i] * ly[i];
    scaled_[3] += term * ly[i] * ly[i] * ly[i];
  }
}

double PowerSums::s(int order) const { return std::exp(log_scale_) * scaled_[order]; }

double PowerSums::log_s0() const {
  if (!(scaled_[0] > 0.0)) throw DomainError("S(beta) is not positive for this scheme");
  return log_scale_ + std::log(scaled_[0]);
}

void check_compatible(const DgosSample& sample, const DgosScheme& scheme) {
  if (sample.size() != scheme.n()) {
    throw DomainError("sample has " + std::to_string(sample.size()) + " values but scheme expects n = " +
                      std::to_string(scheme.n()));
  }
}

DgosSample sample_dgos(Rng& rng, const DgosScheme& scheme, const UwParams& p) {
  const auto gamma = scheme.gamma();
  std::vector<double> x(gamma.size());
  double log_w = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    log_w += std::log(uniform_open(rng)) / gamma[i];
    x[i] = quantile_from_log(log_w, p);
  }
  return DgosSample(std::move(x));
}

double log_likelihood(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p,
                      const PowerSums& sums) {
  const auto n = static_cast<double>(sample.size());
  return scheme.log_normalizer() + n * std::log(p.alpha() * p.beta()) +
         (p.beta() - 1.0) * sample.sum_log_neg_log() + sample.sum_neg_log() - p.alpha() * sums.s(0);
}

double log_likelihood(const DgosSample& sample, const DgosScheme& scheme, const UwParams& p) {
  return log_likelihood(sample, scheme, p, PowerSums(sample, scheme, p.beta()));
}

}  // namespace uwdgos
