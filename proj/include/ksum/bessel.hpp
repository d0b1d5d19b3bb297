#pragma once

// J_n(n eps) three ways: ascending series (reference), leading asymptotics, and the
// resummed Debye expansion
//   J_n(n eps) ~ rho^n / sqrt(2 pi sqrt(1 - eps^2)) * sum_k U_k(1/sqrt(1 - eps^2)) / n^(k + 1/2).

#include "ksum/arith.hpp"
#include "ksum/debye.hpp"
#include "ksum/seqxform.hpp"

namespace ksum {

/// exp(sqrt(1 - eps^2)) (1 - sqrt(1 - eps^2)) / eps, for 0 < eps <= 1.
BigReal rho(const BigReal& eps);

/// Ascending power series, summed with enough guard digits that the result is
/// accurate to the precision of x relative to |J_n(x)|.
BigReal jn_reference(int n, const BigReal& x);

struct DebyeSeriesSpec {
  int n = 1;        // Bessel order, >= 1
  BigReal eps;      // in (0, 1)
  int k_terms = 1;  // Debye terms k = 0 .. k_terms - 1
};

/// Throws Error(Domain) / Error(Range) on invalid fields.
void validate(const DebyeSeriesSpec& spec);

/// Term k of the Debye expansion for k = 0 .. k_terms-1. The table must reach k_terms-1.
TermSequence jn_debye_terms(const DebyeSeriesSpec& spec, const DebyeTable& table);

/// rho^n / (sqrt(2 pi sqrt(1 - eps^2)) sqrt(n)).
BigReal jn_asymptotic(int n, const BigReal& eps);

/// Transformation of the Debye partial sums; needs k_terms >= k_max + 2.
TransformTable jn_resummed(const DebyeSeriesSpec& spec, const DebyeTable& table, TransformKind kind, int k_max,
                           Indexing indexing = Indexing::ZeroBased);

}  // namespace ksum
