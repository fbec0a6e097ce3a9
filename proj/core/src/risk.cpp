#include "uwdgos/risk.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "uwdgos/csv.hpp"
#include "uwdgos/errors.hpp"

namespace uwdgos {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("plan key '" + key + "': '" + s + "' is not a number");
  }
}

std::size_t to_count(const std::string& s, const std::string& key) {
  const double v = to_double(s, key);
  if (v < 0.0 || v != std::floor(v)) throw ParseError("plan key '" + key + "': '" + s + "' is not a count");
  return static_cast<std::size_t>(v);
}

std::string prior_text(const GammaPriors& p) {
  std::ostringstream o;
  o << format_number(p.a1(), 6) << ':' << format_number(p.b1(), 6) << ':' << format_number(p.a2(), 6) << ':'
    << format_number(p.b2(), 6);
  return o.str();
}

std::string truth_text(const UwParams& p) { return format_number(p.alpha(), 6) + ":" + format_number(p.beta(), 6); }

GammaPriors parse_prior(const std::string& s, const std::string& key) {
  const auto parts = split(s, ':');
  if (parts.size() != 4) throw ParseError("plan key '" + key + "': prior '" + s + "' needs a1:b1:a2:b2");
  return GammaPriors(to_double(parts[0], key), to_double(parts[1], key), to_double(parts[2], key),
                     to_double(parts[3], key));
}

UwParams parse_truth(const std::string& s, const std::string& key) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ParseError("plan key '" + key + "': truth '" + s + "' needs alpha:beta");
  return UwParams(to_double(parts[0], key), to_double(parts[1], key));
}

}  // namespace

std::string to_string(SchemeKind s) {
  return s == SchemeKind::order_statistics ? "order-statistics" : "records";
}

SchemeKind parse_scheme_kind(const std::string& text) {
  std::string s = text;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "order-statistics" || s == "order_statistics" || s == "order") return SchemeKind::order_statistics;
  if (s == "records" || s == "lower-records" || s == "lower_records") return SchemeKind::lower_records;
  throw ParseError("unknown scheme '" + text + "' (expected order-statistics or records)");
}

DgosScheme make_scheme(SchemeKind kind, std::size_t n) {
  return kind == SchemeKind::order_statistics ? DgosScheme::order_statistics(n) : DgosScheme::lower_records(n);
}

SimulationPlan SimulationPlan::defaults() {
  SimulationPlan p;
  p.truths = {UwParams(1, 1), UwParams(1.5, 1), UwParams(1, 1.5), UwParams(1.5, 1.5)};
  p.sizes = {5, 10, 15};
  p.schemes = {SchemeKind::lower_records, SchemeKind::order_statistics};
  p.priors = {GammaPriors(2, 2, 2, 2), GammaPriors(0.05, 0.05, 0.05, 0.05)};
  p.losses = {LossKind::self, LossKind::linex, LossKind::ge};
  p.methods = {Method::lindley, Method::tk, Method::mcmc};
  return p;
}

void SimulationPlan::validate() const {
  if (truths.empty() || sizes.empty() || schemes.empty() || priors.empty()) {
    throw DomainError("simulation plan needs at least one truth, size, scheme and prior");
  }
  if (methods.empty()) throw DomainError("simulation plan has no methods");
  if (losses.empty()) throw DomainError("simulation plan has no losses");
  if (replications == 0) throw DomainError("simulation plan needs replications >= 1");
  for (auto n : sizes) {
    if (n == 0) throw DomainError("sample sizes must be positive");
  }
  ReliabilityQuery check(t);
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("loss constant c must be finite and nonzero");
  if (std::find(methods.begin(), methods.end(), Method::mcmc) != methods.end()) mcmc.validate();
}

EstimationSettings SimulationPlan::settings() const {
  EstimationSettings s;
  s.losses = losses;
  s.t = t;
  s.c = c;
  s.mcmc = mcmc;
  s.tk = tk;
  // Replications already run on the worker pool.
  s.parallel_chains = false;
  return s;
}

SimulationPlan parse_plan(const std::string& text) {
  SimulationPlan plan = SimulationPlan::defaults();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("plan line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto items = split(value, ',');

    if (key == "truths") {
      plan.truths.clear();
      for (const auto& s : items) plan.truths.push_back(parse_truth(s, key));
    } else if (key == "sizes") {
      plan.sizes.clear();
      for (const auto& s : items) plan.sizes.push_back(to_count(s, key));
    } else if (key == "schemes") {
      plan.schemes.clear();
      for (const auto& s : items) plan.schemes.push_back(parse_scheme_kind(s));
    } else if (key == "priors") {
      plan.priors.clear();
      for (const auto& s : items) plan.priors.push_back(parse_prior(s, key));
    } else if (key == "losses") {
      plan.losses.clear();
      for (const auto& s : items) plan.losses.push_back(parse_loss_kind(s));
    } else if (key == "methods") {
      plan.methods.clear();
      for (const auto& s : items) plan.methods.push_back(parse_method(s));
    } else if (key == "replications") {
      plan.replications = to_count(value, key);
    } else if (key == "t") {
      plan.t = to_double(value, key);
    } else if (key == "c") {
      plan.c = to_double(value, key);
    } else if (key == "seed") {
      plan.seed = static_cast<std::uint64_t>(to_count(value, key));
    } else if (key == "mcmc_iterations") {
      plan.mcmc.iterations = to_count(value, key);
    } else if (key == "mcmc_burn_in") {
      plan.mcmc.burn_in = to_count(value, key);
    } else if (key == "mcmc_thinning") {
      plan.mcmc.thinning = to_count(value, key);
    } else if (key == "mcmc_chains") {
      plan.mcmc.chains = to_count(value, key);
    } else if (key == "mcmc_proposal_sd") {
      plan.mcmc.proposal_sd = to_double(value, key);
    } else if (key == "tk_alpha_prior") {
      if (value == "full") {
        plan.tk.convention = TkPriorConvention::full_prior;
      } else if (value == "flat") {
        plan.tk.convention = TkPriorConvention::flat_alpha_prior;
      } else {
        throw ParseError("plan key 'tk_alpha_prior' must be full or flat");
      }
    } else {
      throw ParseError("plan line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return plan;
}

std::string format_plan(const SimulationPlan& plan) {
  std::ostringstream o;
  auto join = [&](const auto& items, auto fmt) {
    std::string s;
    for (const auto& it : items) s += (s.empty() ? "" : ", ") + fmt(it);
    return s;
  };
  o << "truths = " << join(plan.truths, truth_text) << '\n';
  o << "sizes = " << join(plan.sizes, [](std::size_t n) { return std::to_string(n); }) << '\n';
  o << "schemes = " << join(plan.schemes, [](SchemeKind s) { return to_string(s); }) << '\n';
  o << "priors = " << join(plan.priors, prior_text) << '\n';
  o << "losses = " << join(plan.losses, [](LossKind k) { return to_string(k); }) << '\n';
  o << "methods = " << join(plan.methods, [](Method m) { return to_string(m); }) << '\n';
  o << "replications = " << plan.replications << '\n';
  o << "t = " << format_number(plan.t, 6) << '\n';
  o << "c = " << format_number(plan.c, 6) << '\n';
  o << "seed = " << plan.seed << '\n';
  o << "mcmc_iterations = " << plan.mcmc.iterations << '\n';
  o << "mcmc_burn_in = " << plan.mcmc.burn_in << '\n';
  o << "mcmc_thinning = " << plan.mcmc.thinning << '\n';
  o << "mcmc_chains = " << plan.mcmc.chains << '\n';
  o << "tk_alpha_prior = " << (plan.tk.convention == TkPriorConvention::full_prior ? "full" : "flat") << '\n';
  return o.str();
}

double loss_value(const LossSpec& loss, double estimate, double truth) {
  const double d = estimate - truth;
  switch (loss.kind()) {
    case LossKind::self: return d * d;
    case LossKind::linex: {
      const double cd = loss.c() * d;
      // expm1 keeps the small-|cd| case from cancelling to zero.
      return std::max(0.0, std::expm1(cd) - cd);
    }
    case LossKind::ge: {
      if (!(truth > 0.0)) throw DomainError("GE loss needs a positive true value");
      if (!(estimate > 0.0)) throw InvalidEstimate("GE loss needs a positive estimate");
      const double log_ratio = std::log(estimate / truth);
      const double cl = loss.c() * log_ratio;
      return std::max(0.0, std::expm1(cl) - cl);
    }
  }
  return 0.0;
}

std::size_t RiskCell::max_failures() const { return *std::max_element(failures.begin(), failures.end()); }

bool RiskCell::flagged() const {
  return replications > 0 && static_cast<double>(max_failures()) >= 0.05 * static_cast<double>(replications);
}

RiskTable run_plan(const SimulationPlan& plan, std::size_t jobs) {
  const CellEstimator engines = [](const ReplicationContext& ctx) {
    return compute_estimates(ctx.key.method, ctx.sample, ctx.scheme, ctx.key.prior, ctx.settings);
  };
  return run_plan(plan, engines, jobs);
}

RiskTable run_plan(const SimulationPlan& plan, const CellEstimator& estimator, std::size_t jobs) {
  plan.validate();
  const EstimationSettings base = plan.settings();

  struct CellPlan {
    RiskKey key;
    std::size_t truth_idx, scheme_idx, prior_idx, method_idx;
  };
  std::vector<CellPlan> cells;
  for (std::size_t ti = 0; ti < plan.truths.size(); ++ti) {
    for (std::size_t n : plan.sizes) {
      for (std::size_t si = 0; si < plan.schemes.size(); ++si) {
        for (std::size_t pi = 0; pi < plan.priors.size(); ++pi) {
          for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
            cells.push_back({RiskKey{plan.truths[ti], n, plan.schemes[si], plan.priors[pi], plan.methods[mi]}, ti,
                             si, pi, mi});
          }
        }
      }
    }
  }

  const std::size_t reps = plan.replications;
  // losses[cell][rep][column]; NaN marks a failed or unrequested column.
  std::vector<std::array<double, kGridSize>> losses(cells.size() * reps);
  const auto targets = base.targets();

  auto work = [&](std::size_t item) {
    const std::size_t ci = item / reps;
    const std::size_t rep = item % reps;
    const CellPlan& cell = cells[ci];
    const DgosScheme scheme = make_scheme(cell.key.scheme, cell.key.n);

    // Data depend on (truth, n, scheme, replication) only, so every prior and method sees
    // the same samples.
    Rng data_rng = make_rng(derive_seed(plan.seed, {cell.truth_idx, cell.key.n, cell.scheme_idx, rep}));
    const DgosSample sample = sample_dgos(data_rng, scheme, cell.key.truth);

    EstimationSettings settings = base;
    settings.mcmc.seed = derive_seed(plan.seed, {cell.truth_idx, cell.key.n, cell.scheme_idx, rep,
                                                 1000 + cell.prior_idx, 2000 + cell.method_idx});

    auto& row = losses[item];
    row.fill(std::nan(""));
    const EstimateGrid grid = estimator(ReplicationContext{cell.key, sample, scheme, settings});
    for (LossKind kind : plan.losses) {
      const LossSpec loss = settings.loss(kind);
      for (std::size_t t = 0; t < 3; ++t) {
        const std::size_t idx = grid_index(loss_position(kind), t);
        if (!grid.value[idx]) continue;
        try {
          row[idx] = loss_value(loss, *grid.value[idx], targets[t].value(cell.key.truth));
        } catch (const Error&) {
          // Counted as a failure below.
        }
      }
    }
  };

  const std::size_t total = cells.size() * reps;
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, total));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  RiskTable table;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    RiskCell out{cells[ci].key};
    out.replications = reps;
    bool any_success = false;
    for (LossKind kind : plan.losses) {
      for (std::size_t t = 0; t < 3; ++t) {
        const std::size_t idx = grid_index(loss_position(kind), t);
        double sum = 0.0;
        std::size_t ok = 0;
        // Fixed replication order keeps the sum independent of the thread schedule.
        for (std::size_t rep = 0; rep < reps; ++rep) {
          const double v = losses[ci * reps + rep][idx];
          if (std::isnan(v)) continue;
          sum += v;
          ++ok;
        }
        out.failures[idx] = reps - ok;
        if (ok > 0) {
          out.risk[idx] = sum / static_cast<double>(ok);
          any_success = true;
        }
      }
    }
    if (!any_success) {
      throw PlanInfeasible("no replication succeeded for " + to_string(out.key.method) + ", " +
                           to_string(out.key.scheme) + ", n = " + std::to_string(out.key.n));
    }
    table.cells.push_back(std::move(out));
  }
  return table;
}

namespace {

const char* kColumnNames[kGridSize] = {"SELF_alpha",  "SELF_beta", "SELF_R", "LINEX_alpha", "LINEX_beta",
                                       "LINEX_R",     "GE_alpha",  "GE_beta", "GE_R"};

std::string group_line(const RiskKey& k) {
  return "# scheme=" + to_string(k.scheme) + ";prior=" + prior_text(k.prior) + ";method=" + to_string(k.method);
}

}  // namespace

void emit_table(const RiskTable& table, std::ostream& out, TableFormat format) {
  out << "truth,n";
  for (const char* name : kColumnNames) out << ',' << name;
  out << '\n';

  // Group order follows first appearance; rows inside a group keep table order.
  std::vector<std::string> groups;
  std::map<std::string, std::vector<const RiskCell*>> rows;
  for (const auto& cell : table.cells) {
    const std::string g = group_line(cell.key);
    if (!rows.count(g)) groups.push_back(g);
    rows[g].push_back(&cell);
  }
  for (const auto& g : groups) {
    out << g << '\n';
    for (const RiskCell* cell : rows[g]) {
      out << truth_text(cell->key.truth) << ',' << cell->key.n;
      for (std::size_t i = 0; i < kGridSize; ++i) {
        out << ',';
        if (format == TableFormat::failures) {
          out << cell->failures[i];
        } else {
          out << (cell->risk[i] ? format_number(*cell->risk[i], 6) : "NA");
        }
      }
      out << '\n';
    }
  }
}

std::string emit_table(const RiskTable& table, TableFormat format) {
  std::ostringstream o;
  emit_table(table, o, format);
  return o.str();
}

RiskTable parse_table(const std::string& csv) {
  RiskTable table;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) return table;
  if (split(line, ',').size() != 2 + kGridSize) throw ParseError("risk table header must have 11 columns");

  std::optional<RiskKey> group;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::map<std::string, std::string> kv;
      for (const auto& part : split(line.substr(1), ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("malformed group line: " + line);
        kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
      }
      group = RiskKey{UwParams(1, 1), 0, parse_scheme_kind(kv.at("scheme")), parse_prior(kv.at("prior"), "prior"),
                      parse_method(kv.at("method"))};
      continue;
    }
    if (!group) throw ParseError("risk row before any group line");
    std::vector<std::string> fields;
    {
      std::istringstream row(line);
      std::string f;
      while (std::getline(row, f, ',')) fields.push_back(trim(f));
    }
    if (fields.size() != 2 + kGridSize) throw ParseError("risk row must have 11 columns: " + line);
    RiskCell cell{*group};
    cell.key.truth = parse_truth(fields[0], "truth");
    cell.key.n = to_count(fields[1], "n");
    for (std::size_t i = 0; i < kGridSize; ++i) {
      if (fields[2 + i] != "NA") cell.risk[i] = to_double(fields[2 + i], "risk");
    }
    table.cells.push_back(std::move(cell));
  }
  return table;
}

}  // namespace uwdgos
