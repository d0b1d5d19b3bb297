#pragma once

// Values exactly as printed in the published tables, with the matcher that compares a
// computed value on the printed digits only.

#include <string>
#include <string_view>
#include <vector>

#include "ksum/arith.hpp"

namespace ksum {

struct GoldenEntry {
  int row = 0;            // row label as printed
  std::string column;     // "psi", "partial", "d" or "delta"
  std::string re;         // printed real part, e.g. "0.001467802647", "4.392572423e25"
  std::string im;         // printed imaginary part, empty for real columns
  bool known_erratum = false;
};

struct GoldenTable {
  std::string target;  // "table1" ... "table5"
  std::vector<GoldenEntry> entries;
};

/// Throws Error(Config) for an unknown target.
const GoldenTable& golden_table(std::string_view target);

/// Number of significant digits in a printed decimal ("0.00315" -> 3, "10." -> 2, "32." -> 2).
int significant_digits(std::string_view printed);

/// True when `printed` equals `value` rounded to nearest, or truncated toward zero, at the
/// printed number of significant digits.
bool golden_match(std::string_view printed, const BigReal& value);

}  // namespace ksum
