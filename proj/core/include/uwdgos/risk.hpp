#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uwdgos/bayes.hpp"
#include "uwdgos/dgos.hpp"
#include "uwdgos/estimation.hpp"

namespace uwdgos {

enum class SchemeKind { order_statistics, lower_records };

std::string to_string(SchemeKind s);
SchemeKind parse_scheme_kind(const std::string& text);
DgosScheme make_scheme(SchemeKind kind, std::size_t n);

/// Experiment grid of a Monte-Carlo risk study.
struct SimulationPlan {
  std::vector<UwParams> truths;
  std::vector<std::size_t> sizes;
  std::vector<SchemeKind> schemes;
  std::vector<GammaPriors> priors;
  std::vector<LossKind> losses;
  std::vector<Method> methods;
  std::size_t replications = 1000;
  double t = 0.5;
  double c = 0.5;
  std::uint64_t seed = 20240917;
  McmcConfig mcmc{};
  TkOptions tk{};

  /// Default grid: (alpha,beta) in {(1,1),(1.5,1),(1,1.5),(1.5,1.5)}, n in {5,10,15}, both
  /// schemes, priors (2,2,2,2) and (0.05,...), all losses and methods, t = c = 0.5.
  static SimulationPlan defaults();

  /// Throws DomainError for empty lists, zero replications, or a bad t / c.
  void validate() const;
  EstimationSettings settings() const;
};

/// Parses flat `key = value` text. Lists are comma separated; a truth is `alpha:beta` and a
/// prior is `a1:b1:a2:b2`. Keys not present keep their defaults() values.
SimulationPlan parse_plan(const std::string& text);
std::string format_plan(const SimulationPlan& plan);

struct RiskKey {
  UwParams truth;
  std::size_t n;
  SchemeKind scheme;
  GammaPriors prior;
  Method method;
};

struct RiskCell {
  RiskKey key;
  /// Mean loss per grid column (SELF/LINEX/GE x alpha/beta/R(t)); empty when no replication
  /// succeeded or the loss was not requested.
  std::array<std::optional<double>, kGridSize> risk{};
  std::array<std::size_t, kGridSize> failures{};
  std::size_t replications = 0;

  std::size_t max_failures() const;
  /// True when some requested column failed in at least 5% of the replications.
  bool flagged() const;
};

struct RiskTable {
  std::vector<RiskCell> cells;
};

/// SELF (e-t)^2, LINEX exp(c(e-t)) - c(e-t) - 1, GE (e/t)^c - c ln(e/t) - 1.
/// GE needs positive estimate (InvalidEstimate otherwise) and truth (DomainError).
double loss_value(const LossSpec& loss, double estimate, double truth);

/// Everything an estimator sees for one replication of one cell.
struct ReplicationContext {
  const RiskKey& key;
  const DgosSample& sample;
  const DgosScheme& scheme;
  const EstimationSettings& settings;
};

using CellEstimator = std::function<EstimateGrid(const ReplicationContext&)>;

/// Runs the plan with the Bayes engines. `jobs` worker threads share the replications;
/// results are identical for any job count.
RiskTable run_plan(const SimulationPlan& plan, std::size_t jobs = 1);

/// Same with a custom estimator in place of the engines.
RiskTable run_plan(const SimulationPlan& plan, const CellEstimator& estimator, std::size_t jobs = 1);

enum class TableFormat { risks, failures };

/// CSV with columns truth,n followed by SELF/LINEX/GE x alpha,beta,R. Rows are grouped by
/// (scheme, prior, method); each group starts with a `# scheme=...;prior=...;method=...` line.
void emit_table(const RiskTable& table, std::ostream& out, TableFormat format = TableFormat::risks);
std::string emit_table(const RiskTable& table, TableFormat format = TableFormat::risks);

/// Reads the risks format back. Values round to the 6 printed decimals.
RiskTable parse_table(const std::string& csv);

}  // namespace uwdgos
