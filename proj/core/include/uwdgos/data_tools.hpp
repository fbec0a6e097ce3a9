#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uwdgos/bayes.hpp"
#include "uwdgos/estimation.hpp"

namespace uwdgos {

/// Nonempty list of finite values with a label.
struct Dataset {
  Dataset(std::vector<double> values, std::string label = "");

  std::vector<double> values;
  std::string label;
};

/// US cotton production 2013-14 to 2019-20, chronological.
Dataset cotton_production();

/// x -> exp(-x). Inputs must be positive so outputs stay inside (0,1).
Dataset transform_unit(const Dataset& data);

/// Strict running minima in input order, starting with the first element.
Dataset extract_lower_records(const Dataset& data);

/// Distinct values in descending order; the list some analyses report as "records" for
/// non-monotone series.
Dataset sorted_distinct_descending(const Dataset& data);

enum class Family { weibull, gamma, normal, exponential, unit_weibull };

std::string to_string(Family f);
Family parse_family(const std::string& text);

struct FitReport {
  std::string distribution;
  std::vector<std::pair<std::string, double>> estimates;
  double log_likelihood;
  double aic;
  double bic;

  double estimate(const std::string& name) const;
  /// CDF of the fitted law.
  std::function<double(double)> cdf;
};

/// Maximum-likelihood fit; aic = 2p - 2 logL, bic = p ln n - 2 logL.
///   weibull      shape k, scale lambda: (k/lambda)(x/lambda)^(k-1) exp(-(x/lambda)^k)
///   gamma        shape a, rate r
///   normal       mu, sigma (divisor n)
///   exponential  rate
///   unit_weibull alpha, beta through the order-statistics MLE (iid likelihood)
/// Throws SupportViolation for data outside the family's support.
FitReport fit_classical(const Dataset& data, Family family);

struct KsResult {
  double statistic;
  double p_value;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sided one-sample KS with the p-value Q(sqrt(n) D), parameters treated as known.
KsResult ks_test(const std::vector<double>& data, const std::function<double(double)>& cdf);

/// Two-sample KS with p-value Q(sqrt(n m / (n + m)) D).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct CottonConfig {
  Dataset data = cotton_production();
  GammaPriors priors{2, 2, 2, 2};
  std::vector<Method> methods{Method::lindley, Method::tk, Method::mcmc};
  EstimationSettings settings{};
  /// Use the sorted distinct transformed values as the record sample.
  bool sorted_records = false;
};

struct MethodRow {
  Method method;
  EstimateGrid grid;
};

struct CottonReport {
  Dataset raw;
  Dataset transformed;
  std::vector<FitReport> fits;
  KsResult ks_weibull;
  KsResult ks_unit_weibull;
  std::vector<double> order_sample;
  std::vector<double> record_sample;
  std::vector<MethodRow> order_table;
  std::vector<MethodRow> record_table;
  std::vector<std::string> notes;
};

/// Classical fits and KS checks, then Bayes estimates for the order-statistics sample (all
/// transformed values, descending) and for the lower records of the transformed series.
CottonReport analyze_cotton(const CottonConfig& config);

/// CSV blocks: fits, KS results, samples, then one estimate table per model.
std::string format_cotton_report(const CottonReport& report);

}  // namespace uwdgos
