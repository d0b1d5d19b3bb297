#pragma once

// Levin-type sequence transformations (Levin d and Weniger delta) acting on the
// partial sums s_n = a_0 + ... + a_n of a series, with the remainder estimate
// taken as the first neglected term a_{n+1}.

#include <string>
#include <string_view>
#include <vector>

#include "ksum/arith.hpp"

namespace ksum {

enum class TransformKind { LevinD, WenigerDelta };

std::string_view to_string(TransformKind kind);
/// Accepts "levin", "d", "levin_d", "weniger", "delta", "weniger_delta".
TransformKind parse_transform_kind(std::string_view text);

/// Ordered series terms a_0, a_1, ..., a_N (N >= 1), all finite.
class TermSequence {
 public:
  TermSequence(std::vector<BigComplex> terms, std::string descriptor);

  const std::vector<BigComplex>& terms() const noexcept { return terms_; }
  const BigComplex& operator[](size_t i) const { return terms_[i]; }
  size_t size() const noexcept { return terms_.size(); }
  const std::string& descriptor() const noexcept { return descriptor_; }
  /// Largest precision among the terms.
  int digits() const noexcept { return digits_; }

  /// The same series written with an explicit zero in front (s_0 = 0), i.e. indexed
  /// from 1. Used to reproduce tables whose d column was computed that way.
  TermSequence with_leading_zero() const;

 private:
  std::vector<BigComplex> terms_;
  std::string descriptor_;
  int digits_ = kMinDigits;
};

struct PartialSums {
  std::vector<BigComplex> sums;
};

PartialSums partial_sums(const TermSequence& t);

enum class StopReason {
  None,
  ZeroDenominator,  // denominator vanished exactly at order max_order()+1
  Indeterminate,    // numerator and denominator both vanished to working precision
};

/// Estimates indexed by transformation order k = 1..max_order(), contiguous.
struct TransformTable {
  TransformKind kind = TransformKind::LevinD;
  std::vector<BigComplex> estimates;     // estimates[k-1] is order k
  std::vector<BigComplex> denominators;  // diagnostic, same indexing
  std::vector<BigComplex> partial_sums;  // s_0 ... s_N of the source series
  int requested_order = 0;
  StopReason stop = StopReason::None;

  int max_order() const noexcept { return static_cast<int>(estimates.size()); }
  bool truncated() const noexcept { return stop != StopReason::None; }
  /// Throws Error(Range) if k is not in 1..max_order().
  const BigComplex& estimate(int k) const;

  /// Columns: order, partial_sum_re, partial_sum_im, estimate_re, estimate_im. The
  /// partial sum on the row of order k is s_k, the last one the estimate consumes.
  /// `significant` == 0 writes round-trip decimal strings.
  std::string to_csv(int significant = 0) const;
  std::string to_json(int significant = 0) const;
};

/// d_k = sum_j (-1)^j C(k,j) (1+j)^(k-1) s_j / a_{j+1}  /  sum_j (-1)^j C(k,j) (1+j)^(k-1) / a_{j+1}
/// for k = 1..k_max. Needs k_max + 2 terms; a_1 .. a_{k_max+1} must be nonzero.
TransformTable levin_d(const TermSequence& t, int k_max);

/// As levin_d with the power (1+j)^(k-1) replaced by the Pochhammer symbol (1+j)_(k-1).
TransformTable weniger_delta(const TermSequence& t, int k_max);

TransformTable transform(const TermSequence& t, TransformKind kind, int k_max);

/// ZeroBased applies the formulas to s_0 = a_0 as given; OneBased treats the series
/// as starting at index 1 (an explicit zero term in front), which is how some
/// published d columns were produced.
enum class Indexing { ZeroBased, OneBased };

TransformTable transform(const TermSequence& t, TransformKind kind, int k_max, Indexing indexing);

/// The convention behind the published tables: d one-based, delta zero-based.
constexpr Indexing tabulated_indexing(TransformKind kind) {
  return kind == TransformKind::LevinD ? Indexing::OneBased : Indexing::ZeroBased;
}

/// Single estimate at order k (same conventions), without building the whole table.
BigComplex transform_at(const TermSequence& t, TransformKind kind, int k);

}  // namespace ksum
