#include "uwdgos/data_tools.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "uwdgos/csv.hpp"
#include "uwdgos/errors.hpp"
#include "uwdgos/mle.hpp"
#include "uwdgos/special_functions.hpp"
#include "uwdgos/unit_weibull.hpp"

namespace uwdgos {

Dataset::Dataset(std::vector<double> v, std::string l) : values(std::move(v)), label(std::move(l)) {
  if (values.empty()) throw DomainError("dataset is empty");
  for (double x : values) {
    if (!std::isfinite(x)) throw DomainError("dataset contains a non-finite value");
  }
}

Dataset cotton_production() { return Dataset({2.81, 3.55, 2.81, 3.74, 4.56, 4.0, 4.34}, "US cotton production"); }

Dataset transform_unit(const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.values.size());
  for (double x : data.values) {
    if (!(x > 0.0)) throw DomainError("exp(-x) transform needs positive values, got " + std::to_string(x));
    out.push_back(std::exp(-x));
  }
  return Dataset(std::move(out), data.label + " (exp(-x))");
}

Dataset extract_lower_records(const Dataset& data) {
  std::vector<double> out{data.values.front()};
  for (double x : data.values) {
    if (x < out.back()) out.push_back(x);
  }
  return Dataset(std::move(out), data.label + " lower records");
}

Dataset sorted_distinct_descending(const Dataset& data) {
  std::vector<double> out = data.values;
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Dataset(std::move(out), data.label + " sorted distinct");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::weibull: return "weibull";
    case Family::gamma: return "gamma";
    case Family::normal: return "normal";
    case Family::exponential: return "exponential";
    case Family::unit_weibull: return "unit_weibull";
  }
  return "?";
}

Family parse_family(const std::string& text) {
  for (Family f : {Family::weibull, Family::gamma, Family::normal, Family::exponential, Family::unit_weibull}) {
    if (to_string(f) == text) return f;
  }
  throw ParseError("unknown distribution family '" + text + "'");
}

double FitReport::estimate(const std::string& name) const {
  for (const auto& [k, v] : estimates) {
    if (k == name) return v;
  }
  throw DomainError("fit report has no parameter '" + name + "'");
}

namespace {

void require_positive(const Dataset& d, Family f) {
  for (double x : d.values) {
    if (!(x > 0.0)) throw SupportViolation(to_string(f) + " fit needs positive data");
  }
}

FitReport make_report(Family f, std::vector<std::pair<std::string, double>> est, double ll, std::size_t n,
                      std::function<double(double)> cdf) {
  const auto p = static_cast<double>(est.size());
  return FitReport{to_string(f), std::move(est), ll, 2.0 * p - 2.0 * ll, p * std::log(static_cast<double>(n)) - 2.0 * ll,
                   std::move(cdf)};
}

FitReport fit_weibull(const Dataset& d) {
  require_positive(d, Family::weibull);
  const auto& x = d.values;
  const auto n = static_cast<double>(x.size());
  double mean_log = 0.0;
  for (double v : x) mean_log += std::log(v) / n;

  // Profile equation 1/k + mean ln x - sum x^k ln x / sum x^k = 0, decreasing in k.
  auto profile = [&](double k) {
    double s0 = 0.0, s1 = 0.0;
    const double top = std::log(*std::max_element(x.begin(), x.end()));
    for (double v : x) {
      const double w = std::exp(k * (std::log(v) - top));
      s0 += w;
      s1 += w * std::log(v);
    }
    return 1.0 / k + mean_log - s1 / s0;
  };
  double lo = 1e-3, hi = 1e3;
  if (!(profile(lo) > 0.0) || !(profile(hi) < 0.0)) throw NoConvergence("Weibull shape equation has no root");
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (profile(mid) > 0.0 ? lo : hi) = mid;
  }
  const double k = 0.5 * (lo + hi);
  double sk = 0.0;
  for (double v : x) sk += std::pow(v, k);
  const double lambda = std::pow(sk / n, 1.0 / k);

  double ll = 0.0;
  for (double v : x) ll += std::log(k / lambda) + (k - 1.0) * std::log(v / lambda) - std::pow(v / lambda, k);
  return make_report(Family::weibull, {{"shape", k}, {"scale", lambda}}, ll, x.size(),
                     [k, lambda](double v) { return v <= 0.0 ? 0.0 : -std::expm1(-std::pow(v / lambda, k)); });
}

// Regularized lower incomplete gamma P(a, x): series for x < a + 1, continued fraction beyond.
double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double log_front = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a, sum = term;
    for (int k = 1; k < 1000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    return std::exp(log_front) * sum;
  }
  // Lentz's method for the continued fraction of Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, dd = 1.0 / b, h = dd;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    dd = an * dd + b;
    if (std::abs(dd) < tiny) dd = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    dd = 1.0 / dd;
    const double delta = dd * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(log_front) * h;
}

FitReport fit_gamma(const Dataset& d) {
  require_positive(d, Family::gamma);
  const auto& x = d.values;
  const auto n = static_cast<double>(x.size());
  double mean = 0.0, mean_log = 0.0;
  for (double v : x) {
    mean += v / n;
    mean_log += std::log(v) / n;
  }
  const double s = std::log(mean) - mean_log;
  if (!(s > 0.0)) throw NoConvergence("gamma fit needs non-constant data");
  // Newton on ln a - digamma(a) = s from the usual closed-form start.
  double a = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  bool ok = false;
  for (int i = 0; i < 100; ++i) {
    const double f = std::log(a) - digamma(a) - s;
    const double df = 1.0 / a - trigamma(a);
    double next = a - f / df;
    if (!(next > 0.0)) next = 0.5 * a;
    if (std::abs(next - a) < 1e-14 * a) {
      a = next;
      ok = true;
      break;
    }
    a = next;
  }
  if (!ok) throw NoConvergence("gamma shape iteration did not converge");
  const double rate = a / mean;
  double ll = 0.0;
  for (double v : x) ll += a * std::log(rate) - std::lgamma(a) + (a - 1.0) * std::log(v) - rate * v;
  return make_report(Family::gamma, {{"shape", a}, {"rate", rate}}, ll, x.size(),
                     [a, rate](double v) { return gamma_p(a, rate * v); });
}

FitReport fit_normal(const Dataset& d) {
  const auto& x = d.values;
  const auto n = static_cast<double>(x.size());
  const double mu = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  const double sigma = std::sqrt(ss / n);
  if (!(sigma > 0.0)) throw NoConvergence("normal fit needs non-constant data");
  const double ll = -0.5 * n * std::log(2.0 * M_PI * sigma * sigma) - 0.5 * n;
  return make_report(Family::normal, {{"mu", mu}, {"sigma", sigma}}, ll, x.size(),
                     [mu, sigma](double v) { return 0.5 * std::erfc(-(v - mu) / (sigma * M_SQRT2)); });
}

FitReport fit_exponential(const Dataset& d) {
  require_positive(d, Family::exponential);
  const auto n = static_cast<double>(d.values.size());
  const double rate = n / std::accumulate(d.values.begin(), d.values.end(), 0.0);
  const double ll = n * std::log(rate) - n;
  return make_report(Family::exponential, {{"rate", rate}}, ll, d.values.size(),
                     [rate](double v) { return v <= 0.0 ? 0.0 : -std::expm1(-rate * v); });
}

FitReport fit_unit_weibull(const Dataset& d) {
  for (double x : d.values) {
    if (!(x > 0.0 && x < 1.0)) throw SupportViolation("unit_weibull fit needs data in (0,1)");
  }
  std::vector<double> sorted = d.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const DgosSample sample(sorted);
  const MleResult fit = fit_mle(sample, DgosScheme::order_statistics(sorted.size()));
  double ll = 0.0;
  for (double x : sorted) ll += log_pdf(x, fit.params);
  const UwParams p = fit.params;
  return make_report(Family::unit_weibull, {{"alpha", p.alpha()}, {"beta", p.beta()}}, ll, sorted.size(),
                     [p](double v) { return v <= 0.0 ? 0.0 : (v >= 1.0 ? 1.0 : cdf(v, p)); });
}

}  // namespace

FitReport fit_classical(const Dataset& data, Family family) {
  switch (family) {
    case Family::weibull: return fit_weibull(data);
    case Family::gamma: return fit_gamma(data);
    case Family::normal: return fit_normal(data);
    case Family::exponential: return fit_exponential(data);
    case Family::unit_weibull: return fit_unit_weibull(data);
  }
  throw DomainError("unknown family");
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // The alternating series converges slowly below ~0.2, where Q is 1 to double precision.
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j < 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-10) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(const std::vector<double>& data, const std::function<double(double)>& cdf) {
  if (data.empty()) throw DomainError("KS test needs data");
  std::vector<double> x = data;
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_q(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("two-sample KS needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, kolmogorov_q(std::sqrt(na * nb / (na + nb)) * d)};
}

CottonReport analyze_cotton(const CottonConfig& config) {
  CottonReport r{config.data, transform_unit(config.data), {}, {}, {}, {}, {}, {}, {}, {}};

  for (Family f : {Family::weibull, Family::gamma, Family::normal, Family::exponential}) {
    r.fits.push_back(fit_classical(r.raw, f));
  }
  r.fits.push_back(fit_classical(r.transformed, Family::unit_weibull));
  r.ks_weibull = ks_test(r.raw.values, r.fits.front().cdf);
  r.ks_unit_weibull = ks_test(r.transformed.values, r.fits.back().cdf);

  r.order_sample = r.transformed.values;
  std::sort(r.order_sample.begin(), r.order_sample.end(), std::greater<>());
  r.record_sample =
      (config.sorted_records ? sorted_distinct_descending(r.transformed) : extract_lower_records(r.transformed)).values;
  if (config.sorted_records) r.notes.push_back("record sample: sorted distinct transformed values");

  const DgosSample order_sample(r.order_sample);
  const DgosScheme order_scheme = DgosScheme::order_statistics(order_sample.size());
  const DgosSample record_sample(r.record_sample);
  const DgosScheme record_scheme = DgosScheme::lower_records(record_sample.size());
  for (Method m : config.methods) {
    r.order_table.push_back({m, compute_estimates(m, order_sample, order_scheme, config.priors, config.settings)});
    r.record_table.push_back({m, compute_estimates(m, record_sample, record_scheme, config.priors, config.settings)});
  }
  return r;
}

namespace {

void write_estimate_block(std::ostringstream& o, const std::string& title, const std::vector<MethodRow>& rows) {
  o << "# " << title << '\n';
  o << "method,SELF_alpha,SELF_beta,SELF_R,LINEX_alpha,LINEX_beta,LINEX_R,GE_alpha,GE_beta,GE_R\n";
  for (const auto& row : rows) {
    o << to_string(row.method);
    for (const auto& v : row.grid.value) o << ',' << (v ? format_number(*v) : "NA");
    o << '\n';
  }
}

}  // namespace

std::string format_cotton_report(const CottonReport& r) {
  std::ostringstream o;
  o << "# classical fits (weibull/gamma/normal/exponential on raw data, unit_weibull on exp(-x))\n";
  o << "distribution,parameters,log_likelihood,aic,bic\n";
  for (const auto& f : r.fits) {
    std::string params;
    for (const auto& [k, v] : f.estimates) params += (params.empty() ? "" : " ") + k + "=" + format_number(v);
    o << f.distribution << ',' << params << ',' << format_number(f.log_likelihood) << ',' << format_number(f.aic)
      << ',' << format_number(f.bic) << '\n';
  }
  o << "# Kolmogorov-Smirnov\n";
  o << "fit,D,p_value\n";
  o << "weibull," << format_number(r.ks_weibull.statistic) << ',' << format_number(r.ks_weibull.p_value) << '\n';
  o << "unit_weibull," << format_number(r.ks_unit_weibull.statistic) << ','
    << format_number(r.ks_unit_weibull.p_value) << '\n';
  o << "# samples\n";
  o << "model,values\n";
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + format_number(x);
    return s;
  };
  o << "order-statistics," << join(r.order_sample) << '\n';
  o << "records," << join(r.record_sample) << '\n';
  for (const auto& note : r.notes) o << "# note: " << note << '\n';
  write_estimate_block(o, "Bayes estimates: order statistics", r.order_table);
  write_estimate_block(o, "Bayes estimates: lower records", r.record_table);
  return o.str();
}

}  // namespace uwdgos
