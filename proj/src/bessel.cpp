#include "ksum/bessel.hpp"

#include <cmath>
#include <string>

#include "ksum/error.hpp"

namespace ksum {

BigReal rho(const BigReal& eps) {
  if (!(eps.sign() > 0) || eps > BigReal(1, eps.digits())) {
    fail(ErrorCode::Domain, "rho needs 0 < eps <= 1, got " + eps.format(12));
  }
  const BigReal one(1, eps.digits());
  const BigReal w = sqrt(one - eps * eps);
  return exp(w) * (one - w) / eps;
}

namespace {

// log10 of the largest term of sum (x/2)^(n+2m) / (m! (n+m)!), in double precision.
double log10_peak_term(int n, double x) {
  if (x <= 0) return 0.0;
  const double half = x / 2;
  double best = -1e300;
  const int m_peak = static_cast<int>(std::ceil(half)) + 1;
  for (int m = std::max(0, m_peak - 3); m <= m_peak + 3; ++m) {
    const double v = (n + 2.0 * m) * std::log(half) - std::lgamma(m + 1.0) - std::lgamma(n + m + 1.0);
    best = std::max(best, v);
  }
  return best / std::log(10.0);
}

BigReal ascending_series(int n, const BigReal& x, int digits) {
  const BigReal half = x.with_digits(digits) / 2;
  const BigReal q = -(half * half);
  BigReal term = pow(half, static_cast<long>(n));
  for (int j = 2; j <= n; ++j) term /= j;
  BigReal sum = term;
  const BigReal tiny = ten_to_minus(digits + 5, digits);
  const double half_d = half.to_double();
  for (long m = 1;; ++m) {
    term *= q;
    term /= m * (n + m);
    sum += term;
    if (m > half_d && abs(term) <= abs(sum) * tiny) break;
    if (term.is_zero()) break;
  }
  return sum;
}

}  // namespace

BigReal jn_reference(int n, const BigReal& x) {
  if (n < 0) fail(ErrorCode::Domain, "jn_reference needs n >= 0");
  if (x.sign() < 0) fail(ErrorCode::Domain, "jn_reference needs x >= 0");
  const int digits = x.digits();
  if (x.is_zero()) return BigReal(n == 0 ? 1 : 0, digits);
  const double peak = log10_peak_term(n, x.to_double());
  int guard = std::max(0, static_cast<int>(std::ceil(peak))) + 10;
  for (;;) {
    BigReal v = ascending_series(n, x, digits + guard);
    if (v.is_zero()) return BigReal(0, digits);
    const double lost = peak - static_cast<double>(v.exponent10());
    if (lost + 10 <= guard) return v.with_digits(digits);
    guard = static_cast<int>(std::ceil(lost)) + 20;
  }
}

void validate(const DebyeSeriesSpec& spec) {
  if (spec.n < 1) fail(ErrorCode::Domain, "Debye series needs n >= 1");
  if (!(spec.eps.sign() > 0) || !(spec.eps < BigReal(1, spec.eps.digits()))) {
    fail(ErrorCode::Domain, "Debye series needs 0 < eps < 1, got " + spec.eps.format(12));
  }
  if (spec.k_terms < 1) fail(ErrorCode::Range, "Debye series needs at least one term");
}

TermSequence jn_debye_terms(const DebyeSeriesSpec& spec, const DebyeTable& table) {
  validate(spec);
  if (table.k_max() < spec.k_terms - 1) {
    fail(ErrorCode::Range, "Debye table reaches k = " + std::to_string(table.k_max()) + ", need " +
                               std::to_string(spec.k_terms - 1));
  }
  const int digits = spec.eps.digits();
  const BigReal one(1, digits);
  const BigReal w = sqrt(one - spec.eps * spec.eps);
  const BigReal y = one / w;
  const BigReal nn(spec.n, digits);
  BigReal scale = pow(rho(spec.eps), static_cast<long>(spec.n)) / sqrt(BigReal::pi(digits) * 2 * w) / sqrt(nn);
  std::vector<BigComplex> terms;
  terms.reserve(static_cast<size_t>(spec.k_terms));
  for (int k = 0; k < spec.k_terms; ++k) {
    terms.emplace_back(scale * eval_poly(table, k, y));
    scale /= nn;
  }
  return TermSequence(std::move(terms), "Debye series of J_" + std::to_string(spec.n) + "(" +
                                            std::to_string(spec.n) + " * " + spec.eps.format(10) + ")");
}

BigReal jn_asymptotic(int n, const BigReal& eps) {
  if (n < 1) fail(ErrorCode::Domain, "jn_asymptotic needs n >= 1");
  if (!(eps < BigReal(1, eps.digits()))) fail(ErrorCode::Domain, "jn_asymptotic needs eps < 1");
  const int digits = eps.digits();
  const BigReal w = sqrt(BigReal(1, digits) - eps * eps);
  return pow(rho(eps), static_cast<long>(n)) / sqrt(BigReal::pi(digits) * 2 * w) / sqrt(BigReal(n, digits));
}

TransformTable jn_resummed(const DebyeSeriesSpec& spec, const DebyeTable& table, TransformKind kind, int k_max,
                           Indexing indexing) {
  return transform(jn_debye_terms(spec, table), kind, k_max, indexing);
}

}  // namespace ksum
