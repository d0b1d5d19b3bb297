#pragma once

// Reproduction harness: regenerates every published table and figure data set, writes
// it as CSV or JSON, and compares printed digits against the embedded goldens. The
// selfcheck runs the invariant suite of all modules at reduced scale.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ksum/arith.hpp"

namespace ksum {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(std::string_view text);
std::string_view to_string(OutputFormat format);

inline constexpr const char* kPrecisionEnv = "KEPLER_PRECISION";

struct RunConfig {
  int precision_digits = kDefaultDigits;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: ./<target>.<csv|json>
  int print_digits = 0;     // significant digits in table artifacts; 0: the published table precision
};

/// Flag value if given, else the KEPLER_PRECISION value if set, else 250. Throws
/// Error(Config) for a malformed value or one below 50.
int resolve_precision(std::optional<int> flag, const char* env_value);

/// Throws Error(Config) when the config is unusable.
void validate(const RunConfig& cfg);

const std::vector<std::string>& reproduce_targets();

struct MatchRecord {
  std::string label;     // e.g. "order 8 levin_d"
  std::string expected;  // printed digits, or the claim being checked
  std::string observed;
  bool matched = false;
  bool known_erratum = false;  // a misprint in the published table; reported, never fatal
};

struct ReproduceReport {
  std::string target;
  std::string artifact_path;
  std::vector<MatchRecord> records;

  bool passed() const;
  int mismatches() const;
  /// One line per record plus a verdict line.
  std::string summary() const;
};

/// The artifact text alone, without touching the file system.
std::string render_artifact(std::string_view target, const RunConfig& cfg, ReproduceReport* report = nullptr);

/// Writes the artifact and returns the comparison report. Throws Error(Config) for an
/// unknown target and Error(Io) when the output cannot be written.
ReproduceReport reproduce(std::string_view target, const RunConfig& cfg);

/// Debye series of J_n(n eps) in the published layout: order, partial_sum, levin_d,
/// weniger_delta for orders 1..k_max, row r holding the partial sum through term r-1.
std::string bessel_table_csv(int n, const BigReal& eps, int k_max, int significant);

struct SelfcheckOptions {
  bool corrupt_debye_row = false;  // fault injection: perturb one leading Debye coefficient
};

struct CheckResult {
  std::string module;
  std::string invariant;
  bool passed = false;
  std::string observed;
  std::string expected;
  std::string warning;  // set when the check passed with reduced margin
};

struct SelfcheckReport {
  int precision_digits = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  int warnings() const;
  std::string summary() const;
};

SelfcheckReport selfcheck(const RunConfig& cfg, const SelfcheckOptions& options = {});

}  // namespace ksum
