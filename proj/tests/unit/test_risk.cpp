#include <doctest.h>

#include <cmath>

#include "uwdgos/errors.hpp"
#include "uwdgos/risk.hpp"

using namespace uwdgos;

namespace {

SimulationPlan small_plan() {
  SimulationPlan p = SimulationPlan::defaults();
  p.truths = {UwParams(1, 1)};
  p.sizes = {5};
  p.schemes = {SchemeKind::lower_records};
  p.priors = {GammaPriors(2, 2, 2, 2)};
  p.methods = {Method::lindley};
  p.replications = 20;
  return p;
}

}  // namespace

TEST_CASE("loss values") {
  for (LossSpec l : {LossSpec::self(), LossSpec::linex(0.5), LossSpec::ge(0.5)}) CHECK(loss_value(l, 1.3, 1.3) == 0);
  CHECK(loss_value(LossSpec::self(), 1.2, 1.0) == doctest::Approx(0.04));
  CHECK(loss_value(LossSpec::linex(0.5), 2.0, 1.0) == doctest::Approx(std::exp(0.5) - 0.5 - 1));
  CHECK(loss_value(LossSpec::ge(0.5), 2.0, 1.0) == doctest::Approx(std::sqrt(2.0) - 0.5 * std::log(2.0) - 1));
  CHECK_THROWS_AS(loss_value(LossSpec::ge(0.5), -1.0, 1.0), InvalidEstimate);
  CHECK(loss_value(LossSpec::linex(1e-8), 1.5, 1.0) >= 0.0);
}

TEST_CASE("oracle estimator has zero risk everywhere") {
  SimulationPlan p = small_plan();
  p.sizes = {5, 10};
  p.schemes = {SchemeKind::lower_records, SchemeKind::order_statistics};
  const CellEstimator truth = [](const ReplicationContext& ctx) {
    EstimateGrid g;
    const auto targets = ctx.settings.targets();
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t t = 0; t < 3; ++t) g.value[grid_index(l, t)] = targets[t].value(ctx.key.truth);
    return g;
  };
  const auto table = run_plan(p, truth, 2);
  CHECK(table.cells.size() == 4);
  for (const auto& c : table.cells)
    for (const auto& r : c.risk) CHECK(*r == 0.0);
}

TEST_CASE("a single replication equals the loss of that run") {
  SimulationPlan p = small_plan();
  p.replications = 1;
  p.seed = 1;
  EstimateGrid seen;
  const CellEstimator spy = [&](const ReplicationContext& ctx) {
    seen = compute_estimates(Method::lindley, ctx.sample, ctx.scheme, ctx.key.prior, ctx.settings);
    return seen;
  };
  const auto table = run_plan(p, spy, 1);
  REQUIRE(table.cells.size() == 1);
  const auto& cell = table.cells[0];
  const auto s = p.settings();
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t t = 0; t < 3; ++t) {
      const auto i = grid_index(l, t);
      if (!seen.value[i]) continue;
      const double want = loss_value(s.loss(kLossOrder[l]), *seen.value[i], s.targets()[t].value(UwParams(1, 1)));
      CHECK(*cell.risk[i] == want);
    }
  }
}

TEST_CASE("results do not depend on the job count") {
  const SimulationPlan p = small_plan();
  CHECK(emit_table(run_plan(p, 1)) == emit_table(run_plan(p, 3)));
}

TEST_CASE("infeasible cells") {
  const CellEstimator broken = [](const ReplicationContext&) {
    EstimateGrid g;
    g.error.fill("nope");
    return g;
  };
  CHECK_THROWS_AS(run_plan(small_plan(), broken, 1), PlanInfeasible);
}

TEST_CASE("table layout and round trip") {
  CHECK(emit_table(RiskTable{}) ==
        "truth,n,SELF_alpha,SELF_beta,SELF_R,LINEX_alpha,LINEX_beta,LINEX_R,GE_alpha,GE_beta,GE_R\n");
  const auto table = run_plan(small_plan(), 1);
  const std::string csv = emit_table(table);
  std::size_t rows = 0;
  std::size_t pos = 0;
  while ((pos = csv.find('\n', pos)) != std::string::npos) ++pos, ++rows;
  CHECK(rows == 3);  // header, group line, one row
  const std::string data_line = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
  CHECK(std::count(data_line.begin(), data_line.end(), ',') == 10);
  const auto back = parse_table(csv);
  REQUIRE(back.cells.size() == 1);
  CHECK(emit_table(back) == csv);
  CHECK(back.cells[0].key.method == Method::lindley);
}

TEST_CASE("plan parsing") {
  const auto p = parse_plan(
      "# comment\n"
      "truths = 1:1, 1.5:1\n"
      "sizes = 5,10\n"
      "schemes = records\n"
      "priors = 2:2:2:2\n"
      "methods = tk\n"
      "replications = 7\n"
      "tk_alpha_prior = flat\n");
  CHECK(p.truths.size() == 2);
  CHECK(p.sizes == std::vector<std::size_t>{5, 10});
  CHECK(p.replications == 7);
  CHECK(p.tk.convention == TkPriorConvention::flat_alpha_prior);
  CHECK(parse_plan(format_plan(p)).replications == 7);
  CHECK_THROWS_AS(parse_plan("methods =\n").validate(), DomainError);
  CHECK_THROWS_AS(parse_plan("bogus = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_plan("sizes = five\n"), ParseError);
}

TEST_CASE("default plan mirrors the study grid") {
  const auto p = SimulationPlan::defaults();
  CHECK(p.truths.size() == 4);
  CHECK(p.sizes == std::vector<std::size_t>{5, 10, 15});
  CHECK(p.schemes.size() == 2);
  CHECK(p.priors.size() == 2);
  CHECK(p.replications == 1000);
  CHECK(p.t == 0.5);
}
