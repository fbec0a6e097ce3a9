#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "uwdgos/errors.hpp"

using namespace uwdgos::cli;

namespace {

void add_scheme_flags(CLI::App* cmd, SchemeArgs& s, bool n_required) {
  cmd->add_option("--model", s.model, "records | order-statistics | general")
      ->check(CLI::IsMember({"records", "order-statistics", "general"}));
  auto* n = cmd->add_option("--n", s.n, "sample size");
  if (n_required) n->required();
  cmd->add_option("--k", s.k, "dgos k (general model)");
  cmd->add_option("--m", s.m, "dgos m_1..m_{n-1}, or one shared value (general model)")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian estimation for unit-Weibull dual generalized order statistics"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "simulate dgos samples, one row per replication");
  add_scheme_flags(g, gen.scheme, true);
  g->add_option("--alpha", gen.alpha, "true alpha");
  g->add_option("--beta", gen.beta, "true beta");
  g->add_option("--reps", gen.reps, "number of samples");
  g->add_option("--seed", gen.seed, "root seed");
  g->add_option("--output,-o", gen.output, "CSV file (default stdout)");

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Bayes estimates of alpha, beta and R(t) from one sample");
  e->add_option("--data", est.data, "one-column CSV, header value or x")->required();
  add_scheme_flags(e, est.scheme, false);
  e->add_flag("--transform", est.transform, "apply x -> exp(-x) first");
  e->add_flag("--extract-records", est.extract_records, "keep only the lower records of the series");
  e->add_option("--prior", est.prior, "a1,b1,a2,b2");
  e->add_option("--losses", est.losses, "self, linex, ge")->delimiter(',');
  e->add_option("--methods", est.methods, "lindley, tk, mcmc")->delimiter(',');
  e->add_option("--t", est.t, "time for R(t)");
  e->add_option("--c", est.c, "LINEX / GE constant");
  e->add_option("--seed", est.seed, "MCMC seed");
  e->add_option("--iterations", est.iterations, "MCMC iterations per chain");
  e->add_option("--burn-in", est.burn_in, "MCMC burn-in");
  e->add_option("--chains", est.chains, "MCMC chains");
  e->add_option("--tk-alpha-prior", est.tk_alpha_prior, "full | flat");
  e->add_option("--output,-o", est.output, "CSV file (default stdout)");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte-Carlo risk study from a plan file");
  s->add_option("--config", sim.config, "flat key = value plan (default: built-in grid)");
  s->add_option("--replications", sim.replications, "override the plan's replications");
  s->add_option("--seed", sim.seed, "override the plan's seed");
  s->add_option("--jobs,-j", sim.jobs, "worker threads");
  s->add_option("--output,-o", sim.output, "risk CSV (default stdout)");
  s->add_option("--failures", sim.failures, "per-cell failure counts CSV");
  s->add_flag("--print-plan", sim.print_plan, "print the resolved plan and exit");

  DiagnoseArgs dia;
  auto* d = app.add_subcommand("diagnose", "Gelman-Rubin diagnostic at checkpoints");
  d->add_option("--data", dia.data, "one-column CSV (default: cotton lower records)");
  add_scheme_flags(d, dia.scheme, false);
  d->add_flag("--transform", dia.transform, "apply x -> exp(-x) first");
  d->add_option("--prior", dia.prior, "a1,b1,a2,b2");
  d->add_option("--chains", dia.chains, "number of chains");
  d->add_option("--iterations", dia.iterations, "iterations per chain");
  d->add_option("--seed", dia.seed, "root seed");
  d->add_option("--output,-o", dia.output, "GR CSV (default stdout)");
  d->add_option("--draws", dia.draws, "write all draws to this CSV");

  CottonArgs cot;
  auto* c = app.add_subcommand("analyze-cotton", "classical fits, KS tests and Bayes tables for the cotton series");
  c->add_flag("--sorted-records", cot.sorted_records, "use sorted distinct values as the record sample");
  c->add_option("--data", cot.data, "one-column CSV with header value (default: bundled series)");
  c->add_option("--prior", cot.prior, "a1,b1,a2,b2");
  c->add_option("--t", cot.t, "time for R(t)");
  c->add_option("--c", cot.c, "LINEX / GE constant");
  c->add_option("--seed", cot.seed, "MCMC seed");
  c->add_option("--iterations", cot.iterations, "MCMC iterations per chain");
  c->add_option("--burn-in", cot.burn_in, "MCMC burn-in");
  c->add_option("--output,-o", cot.output, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*g) return run_generate(gen, std::cout);
    if (*e) return run_estimate(est, std::cout);
    if (*s) return run_simulate(sim, std::cout);
    if (*d) return run_diagnose(dia, std::cout);
    if (*c) return run_analyze_cotton(cot, std::cout);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return usage;
  } catch (const uwdgos::PlanInfeasible& err) {
    std::cerr << "error: " << err.what() << '\n';
    return numerical;
  } catch (const uwdgos::DomainError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return usage;
  } catch (const uwdgos::InvalidScheme& err) {
    std::cerr << "error: " << err.what() << '\n';
    return usage;
  } catch (const uwdgos::ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return usage;
  } catch (const uwdgos::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return numerical;
  }
  return usage;
}
