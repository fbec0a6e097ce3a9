#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uwdgos/csv.hpp"
#include "uwdgos/data_tools.hpp"
#include "uwdgos/errors.hpp"
#include "uwdgos/estimation.hpp"
#include "uwdgos/mcmc.hpp"
#include "uwdgos/random.hpp"
#include "uwdgos/risk.hpp"

namespace uwdgos::cli {

namespace {

// Machine output goes to the file when one is named, else to stdout; the summary then moves
// to stderr so stdout stays parseable.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& log) : log_(&log) {
    if (path.empty()) {
      out_ = &std::cout;
      log_ = &std::cerr;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& out() { return *out_; }
  std::ostream& log() { return *log_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
  std::ostream* log_;
};

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (seps.find(ch) != std::string::npos) {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

GammaPriors parse_prior(const std::string& text) {
  const auto parts = split(text, ",:");
  if (parts.size() != 4) throw UsageError("prior needs four numbers a1,b1,a2,b2, got '" + text + "'");
  double v[4];
  for (int i = 0; i < 4; ++i) {
    try {
      std::size_t used = 0;
      v[i] = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("bad prior value '" + parts[i] + "'");
    }
  }
  return GammaPriors(v[0], v[1], v[2], v[3]);
}

DgosScheme build_scheme(const SchemeArgs& s, std::size_t n) {
  if (n == 0) throw UsageError("--n must be at least 1");
  if (s.model == "records") return DgosScheme::lower_records(n);
  if (s.model == "order-statistics") return DgosScheme::order_statistics(n);
  if (s.model == "general") {
    std::vector<double> m = s.m;
    if (m.empty()) m.assign(n - 1, 0.0);
    if (m.size() == 1 && n > 2) m.assign(n - 1, m.front());
    if (m.size() != n - 1) throw UsageError("--m needs one value or n-1 values");
    return DgosScheme::general(n, s.k, m);
  }
  throw UsageError("unknown model '" + s.model + "' (records, order-statistics, general)");
}

// Reads a one-column file and brings it into the descending order a dgos sample needs.
DgosSample load_sample(const std::string& path, const std::string& model, bool transform, bool extract_records) {
  Dataset data(read_column_file(path, {"value", "x"}), path);
  if (transform) data = transform_unit(data);
  if (extract_records) data = extract_lower_records(data);
  std::vector<double> v = data.values;
  if (model == "order-statistics") std::sort(v.begin(), v.end(), std::greater<>());
  return DgosSample(std::move(v));
}

std::size_t checked_n(const SchemeArgs& s, std::size_t data_n) {
  if (s.n != 0 && s.n != data_n) {
    throw UsageError("--n " + std::to_string(s.n) + " does not match " + std::to_string(data_n) + " data values");
  }
  return data_n;
}

void write_grid_rows(std::ostream& out, Method m, const EstimateGrid& g, const std::vector<LossKind>& losses) {
  for (LossKind l : losses) {
    const std::size_t li = loss_position(l);
    out << to_string(m) << ',' << to_string(l);
    for (std::size_t ti = 0; ti < 3; ++ti) {
      const auto& v = g.value[grid_index(li, ti)];
      out << ',' << (v ? format_number(*v) : "NA");
    }
    out << '\n';
  }
}

}  // namespace

int run_generate(const GenerateArgs& a, std::ostream& log) {
  const DgosScheme scheme = build_scheme(a.scheme, a.scheme.n);
  const UwParams truth(a.alpha, a.beta);
  if (a.reps == 0) throw UsageError("--reps must be at least 1");
  Sink sink(a.output, log);
  auto& out = sink.out();
  for (std::size_t i = 1; i <= scheme.n(); ++i) out << (i > 1 ? "," : "") << 'x' << i;
  out << '\n';
  for (std::size_t r = 0; r < a.reps; ++r) {
    Rng rng = make_rng(derive_seed(a.seed, {r}));
    const DgosSample s = sample_dgos(rng, scheme, truth);
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << format_number(s.values()[i]);
    out << '\n';
  }
  sink.log() << "generated " << a.reps << " " << a.scheme.model << " samples of size " << scheme.n() << '\n';
  return ok;
}

int run_estimate(const EstimateArgs& a, std::ostream& log) {
  const DgosSample sample = load_sample(a.data, a.scheme.model, a.transform, a.extract_records);
  const DgosScheme scheme = build_scheme(a.scheme, checked_n(a.scheme, sample.size()));
  const GammaPriors priors = parse_prior(a.prior);

  EstimationSettings settings;
  settings.losses.clear();
  for (const auto& l : a.losses) settings.losses.push_back(parse_loss_kind(l));
  std::vector<Method> methods;
  for (const auto& m : a.methods) methods.push_back(parse_method(m));
  if (settings.losses.empty() || methods.empty()) throw UsageError("need at least one loss and one method");
  settings.t = a.t;
  settings.c = a.c;
  settings.mcmc.seed = a.seed;
  settings.mcmc.iterations = a.iterations;
  settings.mcmc.burn_in = a.burn_in;
  settings.mcmc.chains = a.chains;
  settings.mcmc.validate();
  if (a.tk_alpha_prior == "flat") {
    settings.tk.convention = TkPriorConvention::flat_alpha_prior;
  } else if (a.tk_alpha_prior != "full") {
    throw UsageError("--tk-alpha-prior is full or flat");
  }
  // Surface a bad t / c as a usage problem rather than as nine failed cells.
  (void)settings.targets();
  for (LossKind l : settings.losses) (void)settings.loss(l);

  Sink sink(a.output, log);
  sink.out() << "method,loss,alpha,beta,R\n";
  bool any = false;
  for (Method m : methods) {
    const EstimateGrid g = compute_estimates(m, sample, scheme, priors, settings);
    any = any || g.any();
    write_grid_rows(sink.out(), m, g, settings.losses);
    for (std::size_t i = 0; i < kGridSize; ++i) {
      if (!g.error[i].empty()) {
        sink.log() << to_string(m) << " " << to_string(kLossOrder[i / 3]) << " "
                   << settings.targets()[i % 3].name() << ": " << g.error[i] << '\n';
      }
    }
  }
  if (!any) {
    sink.log() << "error: every requested estimate failed\n";
    return numerical;
  }
  sink.log() << "estimated " << methods.size() << " method(s) on n = " << sample.size() << " (" << a.scheme.model
             << ")\n";
  return ok;
}

int run_simulate(const SimulateArgs& a, std::ostream& log) {
  SimulationPlan plan = SimulationPlan::defaults();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw UsageError("cannot open config '" + a.config + "'");
    std::stringstream text;
    text << in.rdbuf();
    plan = parse_plan(text.str());
  }
  if (a.replications >= 0) plan.replications = static_cast<std::size_t>(a.replications);
  if (a.seed >= 0) plan.seed = static_cast<std::uint64_t>(a.seed);
  plan.validate();
  if (a.print_plan) {
    log << format_plan(plan);
    return ok;
  }

  const RiskTable table = run_plan(plan, std::max<std::size_t>(1, a.jobs));
  Sink sink(a.output, log);
  emit_table(table, sink.out(), TableFormat::risks);
  if (!a.failures.empty()) {
    std::ofstream f(a.failures, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + a.failures + "'");
    emit_table(table, f, TableFormat::failures);
  }
  std::size_t flagged = 0;
  for (const auto& cell : table.cells) {
    if (cell.flagged()) {
      ++flagged;
      sink.log() << "warning: " << to_string(cell.key.method) << " n=" << cell.key.n << " "
                 << to_string(cell.key.scheme) << " failed in " << cell.max_failures() << " of "
                 << cell.replications << " replications\n";
    }
  }
  sink.log() << table.cells.size() << " cells x " << plan.replications << " replications, " << flagged
             << " flagged\n";
  return ok;
}

int run_diagnose(const DiagnoseArgs& a, std::ostream& log) {
  if (a.chains < 2) throw UsageError("the Gelman-Rubin diagnostic needs at least 2 chains");
  DgosSample sample = a.data.empty()
                          ? DgosSample(extract_lower_records(transform_unit(cotton_production())).values)
                          : load_sample(a.data, a.scheme.model, a.transform, false);
  const DgosScheme scheme = build_scheme(a.scheme, checked_n(a.scheme, sample.size()));
  const GammaPriors priors = parse_prior(a.prior);

  McmcConfig config;
  config.iterations = a.iterations;
  config.burn_in = 0;
  config.chains = a.chains;
  config.seed = a.seed;
  config.validate();
  const auto chains = run_chains(sample, scheme, priors, config, true);

  std::vector<std::size_t> checkpoints;
  for (std::size_t c = 1000; c < a.iterations; c *= 10) checkpoints.push_back(c);
  checkpoints.push_back(a.iterations);

  Sink sink(a.output, log);
  sink.out() << "iterations,gr_alpha,gr_beta\n";
  double last_a = 0.0, last_b = 0.0;
  for (std::size_t c : checkpoints) {
    std::vector<std::vector<double>> al, be;
    for (const auto& ch : chains) {
      al.emplace_back(ch.alpha.begin(), ch.alpha.begin() + static_cast<std::ptrdiff_t>(c));
      be.emplace_back(ch.beta.begin(), ch.beta.begin() + static_cast<std::ptrdiff_t>(c));
    }
    last_a = gelman_rubin(al);
    last_b = gelman_rubin(be);
    sink.out() << c << ',' << format_number(last_a) << ',' << format_number(last_b) << '\n';
  }
  if (!a.draws.empty()) {
    std::ofstream f(a.draws, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + a.draws + "'");
    write_chains(f, chains);
  }
  for (std::size_t i = 0; i < chains.size(); ++i) {
    sink.log() << "chain " << i << ": beta acceptance " << format_number(chains[i].acceptance_rate_beta)
               << ", proposal sd " << format_number(chains[i].proposal_sd) << '\n';
  }
  sink.log() << "GR at " << a.iterations << ": alpha " << format_number(last_a) << ", beta "
             << format_number(last_b) << (std::max(last_a, last_b) < 1.1 ? " (converged)" : " (not converged)")
             << '\n';
  return ok;
}

int run_analyze_cotton(const CottonArgs& a, std::ostream& log) {
  CottonConfig config;
  if (!a.data.empty()) config.data = Dataset(read_column_file(a.data, {"value"}), a.data);
  config.priors = parse_prior(a.prior);
  config.sorted_records = a.sorted_records;
  config.settings.t = a.t;
  config.settings.c = a.c;
  config.settings.mcmc.seed = a.seed;
  config.settings.mcmc.iterations = a.iterations;
  config.settings.mcmc.burn_in = a.burn_in;
  config.settings.mcmc.validate();
  const CottonReport report = analyze_cotton(config);

  Sink sink(a.output, log);
  sink.out() << format_cotton_report(report);
  bool any = false;
  for (const auto* table : {&report.order_table, &report.record_table}) {
    for (const auto& row : *table) {
      any = any || row.grid.any();
      for (std::size_t i = 0; i < kGridSize; ++i) {
        if (!row.grid.error[i].empty()) sink.log() << to_string(row.method) << ": " << row.grid.error[i] << '\n';
      }
    }
  }
  sink.log() << "cotton: n = " << report.raw.values.size() << ", " << report.record_sample.size()
             << " record values, KS D (weibull) = " << format_number(report.ks_weibull.statistic, 4) << '\n';
  if (!any && !config.methods.empty()) return numerical;
  return ok;
}

}  // namespace uwdgos::cli
