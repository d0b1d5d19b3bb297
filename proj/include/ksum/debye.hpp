#pragma once

// Debye polynomials U_k(t) = sum_m a^k_m t^m, generated exactly by the coefficient
// recurrence derived from the integro-differential rule
//   U_{k+1}(t) = t^2 (1 - t^2) U_k'(t) / 2 + (1/8) int_0^t (1 - 5 s^2) U_k(s) ds.

#include <optional>
#include <string>
#include <vector>

#include "ksum/arith.hpp"

namespace ksum {

using DebyeRow = std::vector<BigRational>;

/// Row k+1 from row k (row k has 3k+1 entries).
DebyeRow next_debye_row(const DebyeRow& row);

/// The exact factor in a^{k+1}_{3k+3} = factor * a^k_{3k}: -(36k(k+1)+5)/(24(k+1)).
BigRational ratio_law_factor(int k);

/// Streams rows 0, 1, 2, ... keeping only the current one.
class DebyeRowStream {
 public:
  DebyeRowStream();
  int order() const noexcept { return k_; }
  const DebyeRow& row() const noexcept { return row_; }
  void advance();
  /// Advances until order() == k (k >= order()).
  void advance_to(int k);

 private:
  int k_ = 0;
  DebyeRow row_;
};

class DebyeTable {
 public:
  /// Rows 0..k_max via the recurrence.
  static DebyeTable generate(int k_max);
  /// Arbitrary rows; only the shape (3k+1 entries) is validated. Used to inject faults.
  static DebyeTable from_rows(std::vector<DebyeRow> rows);

  int k_max() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  const DebyeRow& row(int k) const;
  const BigRational& coeff(int k, int m) const;

  /// {"k_max": K, "rows": [["1/1"], ["0/1", "1/8", "0/1", "-5/24"], ...]}
  std::string to_json() const;

 private:
  std::vector<DebyeRow> rows_;
};

/// U_k(t) by Horner at the precision of t. Throws Error(Range) for k > k_max.
BigReal eval_poly(const DebyeTable& table, int k, const BigReal& t);
BigReal eval_row(const DebyeRow& row, const BigReal& t);

/// U_0(t) .. U_{k_max}(t) in one pass.
std::vector<BigReal> eval_all(const DebyeTable& table, const BigReal& t);

/// C (3/2)^(k-1) (k-1)! with the empirical constant C = 10^4.
BigReal leading_coeff_asymptote(int k, int digits);

/// First k whose leading coefficient violates the exact ratio law, if any.
std::optional<int> first_ratio_law_violation(const DebyeTable& table);

/// First (k, m) with a nonzero coefficient of parity opposite to k, if any.
std::optional<std::pair<int, int>> first_parity_violation(const DebyeTable& table);

}  // namespace ksum
