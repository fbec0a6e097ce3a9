#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "uwdgos/errors.hpp"
#include "uwdgos/mle.hpp"

using namespace uwdgos;

namespace {

const std::vector<double> kFive{0.93, 0.71, 0.55, 0.38, 0.12};

}  // namespace

TEST_CASE("score vanishes in alpha at n / S(beta)") {
  const DgosSample s(kFive);
  const auto scheme = DgosScheme::order_statistics(5);
  const double beta = 1.3;
  const PowerSums ps(s, scheme, beta);
  CHECK(score(s, scheme, {5.0 / ps.s(0), beta})[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("score matches finite differences") {
  const DgosSample s(kFive);
  for (auto [scheme, ref] : {std::pair{DgosScheme::order_statistics(5), oracle::Scheme::order_statistics(5)},
                             std::pair{DgosScheme::lower_records(5), oracle::Scheme::records(5)}}) {
    const oracle::Field f = [&](oracle::Real a, oracle::Real b) { return oracle::log_likelihood(kFive, ref, a, b); };
    for (UwParams p : {UwParams{0.8, 1.1}, UwParams{2.5, 0.6}}) {
      const auto g = score(s, scheme, p);
      const double da = static_cast<double>(oracle::partial(f, p.alpha(), p.beta(), 1, 0, 1e-5L));
      const double db = static_cast<double>(oracle::partial(f, p.alpha(), p.beta(), 0, 1, 1e-5L));
      CHECK(g[0] == doctest::Approx(da).epsilon(1e-6));
      CHECK(g[1] == doctest::Approx(db).epsilon(1e-6));
    }
  }
}

TEST_CASE("records alpha-score collapses to the last value") {
  const DgosSample s(kFive);
  const UwParams p{1.7, 0.9};
  const double want = 5 / 1.7 - std::pow(-std::log(kFive.back()), 0.9);
  CHECK(score(s, DgosScheme::lower_records(5), p)[0] == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("fit agrees with a grid search") {
  const DgosSample s(kFive);
  const auto scheme = DgosScheme::order_statistics(5);
  const auto fit = fit_mle(s, scheme);
  REQUIRE(fit.converged);
  double best = -std::numeric_limits<double>::infinity(), ba = 0, bb = 0;
  const int g = 400;
  const double step = (10.0 - 0.05) / (g - 1);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double a = 0.05 + i * step, b = 0.05 + j * step;
      const double v = static_cast<double>(oracle::log_likelihood(kFive, oracle::Scheme::order_statistics(5), a, b));
      if (v > best) best = v, ba = a, bb = b;
    }
  }
  CHECK(std::abs(fit.params.alpha() - ba) <= step);
  CHECK(std::abs(fit.params.beta() - bb) <= step);
  CHECK(log_likelihood(s, scheme, fit.params) >= best - 1e-12);
}

TEST_CASE("fit invariants") {
  Rng rng = make_rng(21);
  for (const auto& scheme : {DgosScheme::order_statistics(12), DgosScheme::lower_records(6)}) {
    for (int r = 0; r < 20; ++r) {
      const auto s = sample_dgos(rng, scheme, {1.0, 1.0});
      const auto fit = fit_mle(s, scheme);
      REQUIRE(fit.converged);
      const auto g = score(s, scheme, fit.params);
      CHECK(std::abs(g[0]) < 1e-8);
      CHECK(std::abs(g[1]) < 1e-8);
      CHECK(fit.params.alpha() * PowerSums(s, scheme, fit.params.beta()).s(0) ==
            doctest::Approx(double(scheme.n())).epsilon(1e-8));
      const double ll = log_likelihood(s, scheme, fit.params);
      for (double da : {-1e-3, 1e-3}) {
        for (double db : {-1e-3, 0.0, 1e-3}) {
          CHECK(ll >= log_likelihood(s, scheme, {fit.params.alpha() + da, fit.params.beta() + db}));
        }
      }
    }
  }
}

TEST_CASE("same scheme description gives identical fits") {
  const DgosSample s(kFive);
  const auto a = fit_mle(s, DgosScheme::order_statistics(5));
  const auto b = fit_mle(s, DgosScheme::general(5, 1.0, {0, 0, 0, 0}));
  CHECK(a.params == b.params);
}

TEST_CASE("consistency at n = 200") {
  Rng rng = make_rng(33);
  const auto scheme = DgosScheme::order_statistics(200);
  int inside = 0;
  for (int r = 0; r < 200; ++r) {
    const auto fit = fit_mle(sample_dgos(rng, scheme, {1, 1}), scheme);
    if (fit.params.alpha() > 0.8 && fit.params.alpha() < 1.2 && fit.params.beta() > 0.85 &&
        fit.params.beta() < 1.15) {
      ++inside;
    }
  }
  CHECK(inside >= 190);
}

TEST_CASE("degenerate samples") {
  CHECK_THROWS_AS(fit_mle(DgosSample({0.4}), DgosScheme::order_statistics(1)), DegenerateSample);
  CHECK_THROWS_AS(fit_mle(DgosSample({0.4, 0.4, 0.4}), DgosScheme::order_statistics(3)), DegenerateSample);
}
