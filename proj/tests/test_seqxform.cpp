#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "ksum/error.hpp"
#include "ksum/seqxform.hpp"

using namespace ksum;

namespace {

TermSequence geometric(const Precision& p, long num, long den, int n) {
  std::vector<BigComplex> terms;
  BigReal q = p.ratio(num, den);
  BigReal a = p.real(1);
  for (int i = 0; i < n; ++i) {
    terms.emplace_back(a);
    a *= q;
  }
  return TermSequence(std::move(terms), "geometric");
}

// sum (-1)^n / (n+1) = log 2
TermSequence alternating_harmonic(const Precision& p, int n) {
  std::vector<BigComplex> terms;
  for (int i = 0; i < n; ++i) terms.emplace_back(p.ratio(i % 2 == 0 ? 1 : -1, i + 1));
  return TermSequence(std::move(terms), "log 2");
}

}  // namespace

TEST_CASE("geometric series is summed exactly at every order") {
  const Precision p(100);
  for (long num : {-9, -3, 1, 3, 7}) {
    for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
      // 1 / (1 - q) with q = num/4
      const BigReal exact = p.real(4) / (p.real(4) - p.real(num));
      const TransformTable t = transform(geometric(p, num, 4, 20), kind, 15);
      REQUIRE(t.max_order() == 15);
      for (int k = 1; k <= 15; ++k) CHECK(abs(t.estimate(k).re() - exact) < p.epsilon(10));
    }
  }
}

TEST_CASE("alternating harmonic series converges quickly") {
  const Precision p(120);
  const BigReal target = log(p.real(2));
  const TermSequence s = alternating_harmonic(p, 40);
  for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
    const TransformTable t = transform(s, kind, 30);
    CHECK(abs(t.estimate(10).re() - target) < p.real("1e-8"));
    CHECK(abs(t.estimate(30).re() - target) < p.real("1e-20"));
    CHECK(abs(transform_at(s, kind, 30).re() - t.estimate(30).re()) < p.epsilon(10));
  }
}

TEST_CASE("first order agrees for both kinds") {
  const Precision p(60);
  const TermSequence s = alternating_harmonic(p, 10);
  CHECK(levin_d(s, 1).estimate(1) == weniger_delta(s, 1).estimate(1));
}

TEST_CASE("leading zero shifts the indexing only") {
  const Precision p(60);
  const TermSequence s = alternating_harmonic(p, 10);
  const TermSequence z = s.with_leading_zero();
  CHECK(z.size() == 11);
  CHECK(z[0].is_zero());
  CHECK(partial_sums(z).sums.back() == partial_sums(s).sums.back());
}

TEST_CASE("too few terms is a range error") {
  const Precision p(60);
  const TermSequence s = alternating_harmonic(p, 10);
  CHECK_NOTHROW(levin_d(s, 8));
  try {
    levin_d(s, 9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Range);
  }
  CHECK_THROWS_AS(levin_d(s, 0), Error);
}

TEST_CASE("zero remainder estimate names the index") {
  const Precision p(60);
  std::vector<BigComplex> terms = {p.complex(1), p.complex(1), p.complex(0), p.complex(1), p.complex(1)};
  const TermSequence s(terms, "hole");
  try {
    weniger_delta(s, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTerm);
    CHECK(std::string(e.what()).find("j = 1") != std::string::npos);
  }
}

TEST_CASE("non-finite terms are rejected") {
  const Precision p(60);
  std::vector<BigComplex> terms = {p.complex(1), BigComplex(p.real(1) / p.real(0))};
  CHECK_THROWS_AS(TermSequence(terms, "inf"), Error);
}

TEST_CASE("order estimates are contiguous and out-of-range access throws") {
  const Precision p(60);
  const TransformTable t = levin_d(alternating_harmonic(p, 12), 10);
  CHECK(t.max_order() == 10);
  CHECK_FALSE(t.truncated());
  CHECK_THROWS_AS(t.estimate(0), Error);
  CHECK_THROWS_AS(t.estimate(11), Error);
}

TEST_CASE("csv and json exports") {
  const Precision p(60);
  const TransformTable t = weniger_delta(alternating_harmonic(p, 8), 5);
  const std::string csv = t.to_csv(10);
  CHECK(csv.rfind("order,partial_sum_re", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find("\n5,") != std::string::npos);
  const std::string json = t.to_json();
  CHECK(json.find("\"weniger_delta\"") != std::string::npos);
  CHECK(json.find("\"rows\"") != std::string::npos);
}

TEST_CASE("transformation kinds parse") {
  CHECK(parse_transform_kind("levin") == TransformKind::LevinD);
  CHECK(parse_transform_kind("weniger") == TransformKind::WenigerDelta);
  CHECK_THROWS_AS(parse_transform_kind("aitken"), Error);
}

namespace {

TermSequence factorial_series(const Precision& p, int n) {
  // Euler's series sum (-1)^k k! x^k at x = 1/5, divergent
  std::vector<BigComplex> terms;
  BigReal a = p.real(1);
  for (int k = 0; k < n; ++k) {
    terms.emplace_back(a);
    a *= -(k + 1);
    a /= 5;
  }
  return TermSequence(std::move(terms), "Euler series");
}

}  // namespace

TEST_CASE("translation covariance") {
  const Precision p(120);
  const TermSequence s = factorial_series(p, 30);
  const BigComplex c(p.ratio(7, 3), p.ratio(-2, 9));
  std::vector<BigComplex> shifted = s.terms();
  shifted[0] += c;
  const TermSequence t(std::move(shifted), "shifted");
  for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
    const TransformTable a = transform(s, kind, 25);
    const TransformTable b = transform(t, kind, 25);
    for (int k = 1; k <= 25; ++k) {
      const BigComplex diff = b.estimate(k) - a.estimate(k) - c;
      CHECK(abs(diff) < p.epsilon(15));
    }
  }
}

TEST_CASE("scale invariance") {
  const Precision p(120);
  const TermSequence s = factorial_series(p, 30);
  const BigComplex lambda(p.ratio(-3, 7), p.ratio(5, 2));
  std::vector<BigComplex> scaled;
  for (const auto& a : s.terms()) scaled.push_back(a * lambda);
  const TermSequence t(std::move(scaled), "scaled");
  for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
    const TransformTable a = transform(s, kind, 25);
    const TransformTable b = transform(t, kind, 25);
    for (int k = 1; k <= 25; ++k) CHECK(abs(b.estimate(k) - a.estimate(k) * lambda) < p.epsilon(15));
  }
}

TEST_CASE("precision P and 2P agree to P - 20 digits") {
  const Precision p(60);
  const Precision q(120);
  const TermSequence a = factorial_series(p, 42);
  const TermSequence b = factorial_series(q, 42);
  for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
    const TransformTable ta = transform(a, kind, 40);
    const TransformTable tb = transform(b, kind, 40);
    for (int k = 1; k <= 40; ++k) {
      const BigReal rel = abs(ta.estimate(k) - tb.estimate(k)) / abs(tb.estimate(k));
      CHECK_MESSAGE(rel < ten_to_minus(40, 120), "order " << k);
    }
  }
}

TEST_CASE("geometric ratio one half reaches 2 within 1e-30 by order 15") {
  const Precision p(100);
  const TransformTable t = levin_d(geometric(p, 1, 2, 20), 15);
  CHECK(abs(t.estimate(15).re() - p.real(2)) < p.real("1e-30"));
}

TEST_CASE("vanishing denominator truncates the table") {
  const Precision p(60);
  // constant remainder estimates make every Levin d denominator vanish
  std::vector<BigComplex> terms = {p.complex(0), p.complex(1), p.complex(1), p.complex(1), p.complex(1)};
  const TransformTable t = levin_d(TermSequence(terms, "flat"), 3);
  CHECK(t.truncated());
  CHECK(t.stop == StopReason::ZeroDenominator);
  CHECK(t.max_order() == 0);
  CHECK_THROWS_AS(transform_at(TermSequence(terms, "flat"), TransformKind::LevinD, 1), Error);
}

TEST_CASE("indeterminate order truncates the table") {
  const Precision p(60);
  // chosen so that numerator and denominator of Levin d both vanish at order 2
  std::vector<BigComplex> terms = {p.complex(1), BigComplex(p.ratio(1, 3)), p.complex(1), p.complex(3)};
  const TermSequence s(terms, "0/0 at order 2");
  const TransformTable t = levin_d(s, 2);
  CHECK(t.truncated());
  CHECK(t.stop == StopReason::Indeterminate);
  CHECK(t.max_order() == 1);
  CHECK_THROWS_AS(transform_at(s, TransformKind::LevinD, 2), Error);
}
