#include <doctest.h>

#include <chrono>
#include <cmath>

#include "ksum/debye.hpp"

using namespace ksum;

namespace {

double seconds_to_generate(int k) {
  const auto t0 = std::chrono::steady_clock::now();
  DebyeRowStream s;
  s.advance_to(k);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("leading coefficient against the empirical asymptotic law, 30 <= k <= 200") {
  const DebyeTable t = DebyeTable::generate(200);
  for (int k = 30; k <= 200; k += 10) {
    const BigReal actual = abs(rational_to_real(t.coeff(k, 3 * k), 60));
    const BigReal predicted = leading_coeff_asymptote(k, 60);
    const double decades = std::abs((log10(actual) - log10(predicted)).to_double());
    CHECK_MESSAGE(decades <= 1.0, "k = " << k << ": " << decades << " decades apart");
  }
}

TEST_CASE("doubling the order roughly quadruples generation time") {
  const double t1 = seconds_to_generate(150);
  const double t2 = seconds_to_generate(300);
  const double factor = t2 / t1;
  CHECK_MESSAGE(factor >= 3.0, "factor " << factor);
  CHECK_MESSAGE(factor <= 6.0, "factor " << factor);
}
