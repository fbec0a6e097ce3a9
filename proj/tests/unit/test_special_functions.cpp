#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "uwdgos/special_functions.hpp"

TEST_CASE("digamma and trigamma against boost") {
  for (double x : {1e-3, 0.1, 0.5, 1.0, 2.5, 5.99, 6.0, 31.96, 1e3, 1e6}) {
    CHECK(uwdgos::digamma(x) == doctest::Approx(boost::math::digamma(x)).epsilon(1e-12));
    CHECK(uwdgos::trigamma(x) == doctest::Approx(boost::math::trigamma(x)).epsilon(1e-12));
  }
  CHECK(uwdgos::digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
}
