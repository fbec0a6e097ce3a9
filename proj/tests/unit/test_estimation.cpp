#include <doctest.h>

#include "uwdgos/errors.hpp"
#include "uwdgos/estimation.hpp"

using namespace uwdgos;

TEST_CASE("name parsing") {
  CHECK(parse_method("lindley") == Method::lindley);
  CHECK(parse_method("tk") == Method::tk);
  CHECK(parse_method("mcmc") == Method::mcmc);
  CHECK_THROWS_AS(parse_method("gibbs"), ParseError);
  CHECK(parse_loss_kind("self") == LossKind::self);
  CHECK(parse_loss_kind("LINEX") == LossKind::linex);
  CHECK_THROWS_AS(parse_loss_kind("abs"), ParseError);
  CHECK(grid_index(2, 1) == 7);
}

TEST_CASE("grid holds only requested cells") {
  const DgosSample s({0.95, 0.81, 0.66, 0.52, 0.47, 0.30, 0.22, 0.09});
  const auto scheme = DgosScheme::order_statistics(8);
  EstimationSettings settings;
  settings.losses = {LossKind::self};
  for (Method m : {Method::lindley, Method::tk, Method::mcmc}) {
    const auto g = compute_estimates(m, s, scheme, GammaPriors(2, 2, 2, 2), settings);
    CHECK(g.any());
    for (std::size_t i = 0; i < kGridSize; ++i) CHECK(g.value[i].has_value() == (i < 3));
  }
}

TEST_CASE("a degenerate sample fails every requested cell with a reason") {
  const DgosSample s({0.4});
  const auto g = compute_estimates(Method::lindley, s, DgosScheme::lower_records(1), GammaPriors(2, 2, 2, 2), {});
  CHECK_FALSE(g.any());
  for (const auto& e : g.error) CHECK_FALSE(e.empty());
}
