#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "uwdgos/dgos.hpp"
#include "uwdgos/errors.hpp"

using namespace uwdgos;

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("order-statistics scheme") {
  CHECK(to_vec(DgosScheme::order_statistics(5).gamma()) == std::vector<double>{5, 4, 3, 2, 1});
  CHECK(to_vec(DgosScheme::order_statistics(1).gamma()) == std::vector<double>{1});
  CHECK(to_vec(DgosScheme::order_statistics(3).gamma()) == std::vector<double>{3, 2, 1});
}

TEST_CASE("lower-record scheme") {
  CHECK(to_vec(DgosScheme::lower_records(5).gamma()) == std::vector<double>(5, 1.0));
  CHECK(to_vec(DgosScheme::lower_records(2).gamma()) == std::vector<double>{1, 1});
  CHECK(to_vec(DgosScheme::lower_records(1).gamma()) == std::vector<double>{1});
}

TEST_CASE("general scheme") {
  CHECK(to_vec(DgosScheme::general(3, 2, {1, 1}).gamma()) == std::vector<double>{6, 4, 2});
  CHECK_THROWS_AS(DgosScheme::general(2, 1, {-3}), InvalidScheme);
  const auto one = DgosScheme::general(1, 2.5, {});
  CHECK(to_vec(one.gamma()) == std::vector<double>{2.5});
  CHECK_THROWS_AS(DgosScheme::general(3, 1, {0}), InvalidScheme);
  CHECK_THROWS_AS(DgosScheme::general(0, 1, {}), InvalidScheme);
  CHECK_THROWS_AS(DgosScheme::general(2, 0, {0}), InvalidScheme);
  CHECK(DgosScheme::general(2, 0.5, {0}).k_warning());
  CHECK_FALSE(DgosScheme::general(2, 1, {0}).k_warning());
}

TEST_CASE("constant m gives gamma_r = k + (n-r)(m+1)") {
  const double k = 1.7, m = 0.4;
  const std::size_t n = 6;
  const auto s = DgosScheme::general(n, k, std::vector<double>(n - 1, m));
  for (std::size_t r = 1; r <= n; ++r) {
    CHECK(s.gamma()[r - 1] == doctest::Approx(k + (n - r) * (m + 1)));
  }
  CHECK(s.gamma()[n - 1] == k);
}

TEST_CASE("sample validation") {
  CHECK_THROWS_AS(DgosSample({}), DomainError);
  CHECK_THROWS_AS(DgosSample({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(DgosSample({1.0, 0.6}), DomainError);
  CHECK_THROWS_AS(DgosSample({0.5, 0.0}), DomainError);
  CHECK_NOTHROW(DgosSample({0.5, 0.5, 0.2}));
}

TEST_CASE("sampler output is ordered and inside (0,1)") {
  Rng rng = make_rng(3);
  for (const auto& scheme : {DgosScheme::order_statistics(8), DgosScheme::lower_records(4),
                             DgosScheme::general(5, 2, {0.5, 0.5, 0.5, 0.5})}) {
    for (int r = 0; r < 200; ++r) {
      const auto s = sample_dgos(rng, scheme, {1.2, 0.9});
      REQUIRE(s.size() == scheme.n());
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.values()[i] > 0.0);
        CHECK(s.values()[i] < 1.0);
        if (i > 0 && scheme.m()[0] == -1.0) CHECK(s.values()[i] < s.values()[i - 1]);
      }
    }
  }
}

TEST_CASE("first coordinate follows F^gamma_1") {
  Rng rng = make_rng(5);
  const UwParams p{1.4, 0.8};
  const auto scheme = DgosScheme::general(4, 1.5, {0.5, 1.0, 0.0});
  const double g1 = scheme.gamma()[0];
  std::vector<double> first;
  for (int r = 0; r < 5000; ++r) first.push_back(sample_dgos(rng, scheme, p).values()[0]);
  const double d = oracle::ks_distance(first, [&](double x) {
    return static_cast<double>(std::pow(oracle::uw_cdf(x, 1.4L, 0.8L), static_cast<long double>(g1)));
  });
  CHECK(std::sqrt(5000.0) * d < oracle::kKsCritical01);
}

TEST_CASE("single observation with k = 1 follows the parent") {
  Rng rng = make_rng(9);
  const UwParams p{0.6, 2.0};
  std::vector<double> x;
  for (int r = 0; r < 4000; ++r) x.push_back(sample_dgos(rng, DgosScheme::order_statistics(1), p).values()[0]);
  const double d = oracle::ks_distance(x, [](double v) { return static_cast<double>(oracle::uw_cdf(v, 0.6L, 2.0L)); });
  CHECK(std::sqrt(4000.0) * d < oracle::kKsCritical01);
}

TEST_CASE("log-likelihood against the joint density") {
  const std::vector<double> x{0.91, 0.74, 0.52, 0.33, 0.08};
  const DgosSample s(x);
  for (const auto& [scheme, ref] : {std::pair{DgosScheme::order_statistics(5), oracle::Scheme::order_statistics(5)},
                                    std::pair{DgosScheme::lower_records(5), oracle::Scheme::records(5)},
                                    std::pair{DgosScheme::general(5, 2.0, {0.5, -0.5, 1.0, 0.0}),
                                              oracle::Scheme{5, 2.0L, {0.5L, -0.5L, 1.0L, 0.0L}}}}) {
    for (UwParams p : {UwParams{1, 1}, UwParams{0.3, 2.2}, UwParams{4.0, 0.5}}) {
      const double want = static_cast<double>(oracle::log_likelihood(x, ref, p.alpha(), p.beta()));
      CHECK(log_likelihood(s, scheme, p) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("log-likelihood sub-model identities") {
  const std::vector<double> x{0.91, 0.74, 0.52, 0.33, 0.08};
  const DgosSample s(x);
  const UwParams p{1.5, 1.5};
  double iid = std::log(120.0);
  for (double v : x) iid += log_pdf(v, p);
  CHECK(log_likelihood(s, DgosScheme::order_statistics(5), p) == doctest::Approx(iid).epsilon(1e-13));

  double rec = log_pdf(x.back(), p);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) rec += log_pdf(x[i], p) - std::log(cdf(x[i], p));
  CHECK(log_likelihood(s, DgosScheme::lower_records(5), p) == doctest::Approx(rec).epsilon(1e-13));

  const DgosSample one({0.4});
  CHECK(log_likelihood(one, DgosScheme::order_statistics(1), p) == doctest::Approx(log_pdf(0.4, p)).epsilon(1e-14));
  CHECK_THROWS_AS(log_likelihood(s, DgosScheme::order_statistics(4), p), DomainError);
}

TEST_CASE("power sums are positive and scale-safe") {
  const DgosSample s({0.9, 0.5, 0.5, 1e-200});
  for (const auto& scheme : {DgosScheme::order_statistics(4), DgosScheme::lower_records(4)}) {
    for (double b : {0.01, 1.0, 50.0, 400.0}) {
      const PowerSums ps(s, scheme, b);
      CHECK(std::isfinite(ps.log_s0()));
      CHECK(std::isfinite(ps.ratio(1)));
      CHECK(std::isfinite(ps.ratio(3)));
      if (b < 100) CHECK(ps.s(0) > 0.0);
    }
  }
}

TEST_CASE("order-statistics likelihood integrates to one (Monte Carlo)") {
  // E_U[ L(x) / q(x) ] over x = sorted uniforms with density n! on the simplex equals 1
  // iff L integrates to 1; with alpha = beta = 1, L is exactly n!, so use a non-uniform parent.
  Rng rng = make_rng(17);
  const UwParams p{2.0, 1.5};
  const auto scheme = DgosScheme::order_statistics(3);
  const int reps = 200000;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> u{uniform_open(rng), uniform_open(rng), uniform_open(rng)};
    std::sort(u.begin(), u.end(), std::greater<>());
    sum += std::exp(log_likelihood(DgosSample(u), scheme, p) - std::log(6.0));
  }
  CHECK(sum / reps == doctest::Approx(1.0).epsilon(0.02));
}
