#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "ksum/debye.hpp"
#include "ksum/error.hpp"

using namespace ksum;

namespace {

using Poly = std::vector<BigRational>;

Poly trim(Poly p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  return p;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly derivative(const Poly& p) {
  Poly out(std::max<size_t>(p.size(), 2) - 1);
  for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * BigRational(static_cast<long>(i));
  return out;
}

Poly integral(const Poly& p) {
  Poly out(p.size() + 1);
  for (size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / BigRational(static_cast<long>(i + 1));
  return out;
}

// U_{k+1} = t^2 (1 - t^2) U_k' / 2 + (1/8) int_0^t (1 - 5 s^2) U_k(s) ds
Poly integro_differential_step(const Poly& u) {
  const Poly a = mul({BigRational(0), BigRational(0), BigRational(1, 2), BigRational(0), BigRational(-1, 2)},
                     derivative(u));
  const Poly b = mul({BigRational(1, 8)}, integral(mul({BigRational(1), BigRational(0), BigRational(-5)}, u)));
  return trim(add(a, b));
}

}  // namespace

TEST_CASE("first rows") {
  const DebyeTable t = DebyeTable::generate(2);
  CHECK(t.row(0) == DebyeRow{BigRational(1)});
  CHECK(t.row(1) == DebyeRow{BigRational(0), BigRational(1, 8), BigRational(0), BigRational(-5, 24)});
  CHECK(t.row(2) == DebyeRow{BigRational(0), BigRational(0), BigRational(9, 128), BigRational(0),
                             BigRational(-77, 192), BigRational(0), BigRational(385, 1152)});
}

TEST_CASE("known third polynomial") {
  const DebyeTable t = DebyeTable::generate(3);
  CHECK(t.coeff(3, 3) == BigRational(30375, 414720));
  CHECK(t.coeff(3, 5) == BigRational(-369603, 414720));
  CHECK(t.coeff(3, 7) == BigRational(765765, 414720));
  CHECK(t.coeff(3, 9) == BigRational(-425425, 414720));
}

TEST_CASE("recurrence agrees with the integro-differential rule") {
  const DebyeTable t = DebyeTable::generate(8);
  Poly u = {BigRational(1)};
  for (int k = 1; k <= 8; ++k) {
    u = integro_differential_step(u);
    CHECK(trim(t.row(k)) == u);
  }
}

TEST_CASE("row shape and vanishing constant term") {
  const DebyeTable t = DebyeTable::generate(40);
  for (int k = 0; k <= 40; ++k) {
    CHECK(t.row(k).size() == static_cast<size_t>(3 * k + 1));
    if (k >= 1) CHECK(t.coeff(k, 0).is_zero());
  }
}

TEST_CASE("exact ratio law for the leading coefficient") {
  const DebyeTable t = DebyeTable::generate(120);
  CHECK_FALSE(first_ratio_law_violation(t).has_value());
  for (int k = 0; k < 120; ++k) {
    CHECK(t.coeff(k + 1, 3 * k + 3) / t.coeff(k, 3 * k) == ratio_law_factor(k));
  }
}

TEST_CASE("ratio law divided by -(3/2)k tends to one") {
  const int k = 200;
  const BigRational r = ratio_law_factor(k) / BigRational(-3 * k, 2);
  const double v = rational_to_real(r, 60).to_double();
  CHECK(std::abs(v - 1.0) < 0.01);
}

TEST_CASE("parity sparsity up to order 50") {
  const DebyeTable t = DebyeTable::generate(50);
  const auto v = first_parity_violation(t);
  CHECK_FALSE(v.has_value());
}

TEST_CASE("corrupted row is caught by the ratio law") {
  const DebyeTable good = DebyeTable::generate(10);
  std::vector<DebyeRow> rows;
  for (int k = 0; k <= 10; ++k) rows.push_back(good.row(k));
  rows[6][18] += BigRational(1, 7);
  const DebyeTable bad = DebyeTable::from_rows(std::move(rows));
  REQUIRE(first_ratio_law_violation(bad).has_value());
  CHECK(*first_ratio_law_violation(bad) == 5);
  CHECK_THROWS_AS(DebyeTable::from_rows({{BigRational(1)}, {BigRational(0)}}), Error);
}

TEST_CASE("polynomial evaluation") {
  const DebyeTable t = DebyeTable::generate(5);
  const Precision p(80);
  CHECK(eval_poly(t, 0, p.real(7)) == p.real(1));
  CHECK(abs(eval_poly(t, 1, p.real(1)) + p.ratio(1, 12)) < p.epsilon(2));
  const BigReal x = p.ratio(3, 7);
  const BigReal u2 = p.ratio(9, 128) * pow(x, 2) - p.ratio(77, 192) * pow(x, 4) + p.ratio(385, 1152) * pow(x, 6);
  CHECK(abs(eval_poly(t, 2, x) - u2) < p.epsilon(2));
  CHECK(eval_all(t, x).size() == 6);
  CHECK_THROWS_AS(eval_poly(t, 6, x), Error);
}

TEST_CASE("streaming matches the stored table") {
  const DebyeTable t = DebyeTable::generate(30);
  DebyeRowStream s;
  s.advance_to(30);
  CHECK(s.row() == t.row(30));
  CHECK_THROWS_AS(s.advance_to(10), Error);
}

TEST_CASE("json export uses p/q strings") {
  const std::string js = DebyeTable::generate(1).to_json();
  CHECK(js.find("\"-5/24\"") != std::string::npos);
  CHECK(js.find("\"1/1\"") != std::string::npos);
}
