#include <cmath>
#include <vector>

#include "cavneg/series.hpp"
#include "doctest.h"

using namespace cavneg;

TEST_CASE("compensated sum keeps small addends next to large ones") {
  NeumaierSum<double> s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);

  NeumaierSum<double> t;
  for (int i = 0; i < 10; ++i) t += 0.1;
  CHECK(t.value() == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("power-law tail bounds the true remainder of m^-6") {
  const std::size_t N = 200;
  std::vector<double> terms(N);
  for (std::size_t m = 1; m <= N; ++m) terms[m - 1] = std::pow(static_cast<double>(m), -6.0);
  double remainder = 0.0;
  for (std::size_t m = 200000; m > N; --m) remainder += std::pow(static_cast<double>(m), -6.0);
  const double bound = power_law_tail<double>(terms, N, 6.0);
  CHECK(bound >= remainder);
  CHECK(bound < 2.0 * remainder);
}

TEST_CASE("rounding bound scales with the absolute mass") {
  CHECK(rounding_bound(1.0) > 0.0);
  CHECK(rounding_bound(10.0) == doctest::Approx(10.0 * rounding_bound(1.0)));
}
