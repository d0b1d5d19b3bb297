#define KSUM_BUILDING
#include "ksum/ksum.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "ksum/debye.hpp"
#include "ksum/error.hpp"
#include "ksum/harness.hpp"
#include "ksum/kapteyn.hpp"
#include "ksum/kepler.hpp"
#include "ksum/numparse.hpp"
#include "ksum/seqxform.hpp"

struct ksum_context {
  int digits;
};

struct ksum_debye {
  ksum::DebyeTable table;
};

struct ksum_report {
  bool passed = false;
  int warnings = 0;
  std::string summary;
  std::string artifact_path;
};

namespace {

thread_local std::string last_error;

ksum_status to_status(ksum::ErrorCode code) {
  switch (code) {
    case ksum::ErrorCode::Config: return KSUM_ERR_CONFIG;
    case ksum::ErrorCode::Domain: return KSUM_ERR_DOMAIN;
    case ksum::ErrorCode::Range: return KSUM_ERR_RANGE;
    case ksum::ErrorCode::Numerical: return KSUM_ERR_NUMERICAL;
    case ksum::ErrorCode::DegenerateTerm: return KSUM_ERR_DEGENERATE_TERM;
    case ksum::ErrorCode::Fit: return KSUM_ERR_FIT;
    case ksum::ErrorCode::Parse: return KSUM_ERR_PARSE;
    case ksum::ErrorCode::Io: return KSUM_ERR_IO;
  }
  return KSUM_ERR_INTERNAL;
}

ksum_status fail_with(ksum_status status, std::string text) {
  last_error = std::move(text);
  return status;
}

template <typename F>
ksum_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return KSUM_OK;
  } catch (const ksum::Error& e) {
    return fail_with(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(KSUM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(KSUM_ERR_INTERNAL, e.what());
  }
}

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

ksum::TransformKind to_kind(ksum_transform kind) {
  if (kind == KSUM_LEVIN_D) return ksum::TransformKind::LevinD;
  if (kind == KSUM_WENIGER_DELTA) return ksum::TransformKind::WenigerDelta;
  ksum::fail(ksum::ErrorCode::Config, "unknown transformation code " + std::to_string(static_cast<int>(kind)));
}

ksum::Indexing to_indexing(ksum_indexing indexing, ksum::TransformKind kind) {
  switch (indexing) {
    case KSUM_INDEXING_TABULATED: return ksum::tabulated_indexing(kind);
    case KSUM_INDEXING_ZERO_BASED: return ksum::Indexing::ZeroBased;
    case KSUM_INDEXING_ONE_BASED: return ksum::Indexing::OneBased;
  }
  ksum::fail(ksum::ErrorCode::Config, "unknown indexing code " + std::to_string(static_cast<int>(indexing)));
}

ksum::RunConfig to_config(const ksum_run_config& c) {
  ksum::RunConfig cfg;
  cfg.precision_digits = c.precision_digits;
  if (c.format != KSUM_FORMAT_CSV && c.format != KSUM_FORMAT_JSON) {
    ksum::fail(ksum::ErrorCode::Config, "unknown output format code " + std::to_string(static_cast<int>(c.format)));
  }
  cfg.format = c.format == KSUM_FORMAT_CSV ? ksum::OutputFormat::Csv : ksum::OutputFormat::Json;
  cfg.output_path = c.output_path != nullptr ? c.output_path : "";
  cfg.print_digits = c.print_digits;
  return cfg;
}

ksum::BigReal value(const ksum_context* ctx, const char* text) { return ksum::parse_value(text, ctx->digits); }

}  // namespace

extern "C" {

const char* ksum_version(void) { return "1.0.0"; }

const char* ksum_last_error(void) { return last_error.c_str(); }

const char* ksum_status_name(ksum_status status) {
  switch (status) {
    case KSUM_OK: return "ok";
    case KSUM_ERR_CONFIG: return "config";
    case KSUM_ERR_DOMAIN: return "domain";
    case KSUM_ERR_RANGE: return "range";
    case KSUM_ERR_NUMERICAL: return "numerical";
    case KSUM_ERR_DEGENERATE_TERM: return "degenerate term";
    case KSUM_ERR_FIT: return "fit";
    case KSUM_ERR_PARSE: return "parse";
    case KSUM_ERR_IO: return "io";
    case KSUM_ERR_ARGUMENT: return "argument";
    case KSUM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void ksum_string_free(char* text) { std::free(text); }

ksum_status ksum_resolve_precision(int flag_digits, int* out_digits) {
  if (out_digits == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "out_digits is NULL");
  return guarded([&] {
    const std::optional<int> flag = flag_digits > 0 ? std::optional<int>(flag_digits) : std::nullopt;
    *out_digits = ksum::resolve_precision(flag, std::getenv(ksum::kPrecisionEnv));
  });
}

ksum_status ksum_parse_transform(const char* name, ksum_transform* out) {
  if (name == nullptr || out == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = ksum::parse_transform_kind(name) == ksum::TransformKind::LevinD ? KSUM_LEVIN_D : KSUM_WENIGER_DELTA;
  });
}

ksum_status ksum_context_create(int precision_digits, ksum_context** out) {
  if (out == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "out is NULL");
  *out = nullptr;
  return guarded([&] {
    ksum::with_precision(precision_digits);
    *out = new ksum_context{precision_digits};
  });
}

void ksum_context_destroy(ksum_context* ctx) { delete ctx; }

int ksum_context_digits(const ksum_context* ctx) { return ctx != nullptr ? ctx->digits : 0; }

ksum_status ksum_solve_newton(const ksum_context* ctx, const char* eps, const char* mean_anomaly, int significant,
                              char** out_psi) {
  if (ctx == nullptr || eps == nullptr || mean_anomaly == nullptr || out_psi == nullptr) {
    return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const ksum::Precision p(ctx->digits);
    const ksum::BigReal psi = ksum::solve_newton({value(ctx, eps), value(ctx, mean_anomaly)}, p.epsilon(10));
    *out_psi = copy_out(psi.format(significant));
  });
}

ksum_status ksum_solve_series(const ksum_context* ctx, const char* eps, const char* mean_anomaly, ksum_transform kind,
                              int order, ksum_indexing indexing, int significant, char** out_psi) {
  if (ctx == nullptr || eps == nullptr || mean_anomaly == nullptr || out_psi == nullptr) {
    return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const ksum::TransformKind k = to_kind(kind);
    const ksum::SeriesSolution s =
        ksum::solve_series({value(ctx, eps), value(ctx, mean_anomaly)}, k, order, to_indexing(indexing, k));
    *out_psi = copy_out(s.at(order).format(significant));
  });
}

ksum_status ksum_rates_csv(const ksum_context* ctx, const char* const* mean_anomalies, size_t m_count,
                           const char* const* eccentricities, size_t eps_count, const ksum_transform* kinds,
                           size_t kind_count, int order, char** out_csv) {
  if (ctx == nullptr || out_csv == nullptr || (m_count > 0 && mean_anomalies == nullptr) ||
      (eps_count > 0 && eccentricities == nullptr) || (kind_count > 0 && kinds == nullptr)) {
    return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    std::vector<ksum::BigReal> Ms;
    std::vector<ksum::BigReal> eps;
    for (size_t i = 0; i < m_count; ++i) Ms.push_back(value(ctx, mean_anomalies[i]));
    for (size_t i = 0; i < eps_count; ++i) eps.push_back(value(ctx, eccentricities[i]));
    std::vector<ksum::RateCell> cells;
    for (size_t i = 0; i < kind_count; ++i) {
      const ksum::TransformKind k = to_kind(kinds[i]);
      auto part = ksum::rate_scan(Ms, eps, {k}, order, ksum::tabulated_indexing(k));
      cells.insert(cells.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    *out_csv = copy_out(ksum::rate_scan_csv(cells));
  });
}

ksum_status ksum_debye_create(int k_max, ksum_debye** out) {
  if (out == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "out is NULL");
  *out = nullptr;
  return guarded([&] {
    if (k_max < 0) ksum::fail(ksum::ErrorCode::Range, "k_max must be nonnegative");
    *out = new ksum_debye{ksum::DebyeTable::generate(k_max)};
  });
}

void ksum_debye_destroy(ksum_debye* table) { delete table; }

int ksum_debye_k_max(const ksum_debye* table) { return table != nullptr ? table->table.k_max() : -1; }

ksum_status ksum_debye_eval(const ksum_context* ctx, const ksum_debye* table, int k, const char* t, int significant,
                            char** out_value) {
  if (ctx == nullptr || table == nullptr || t == nullptr || out_value == nullptr) {
    return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  }
  return guarded([&] { *out_value = copy_out(ksum::eval_poly(table->table, k, value(ctx, t)).format(significant)); });
}

ksum_status ksum_debye_json(const ksum_debye* table, char** out_json) {
  if (table == nullptr || out_json == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  return guarded([&] { *out_json = copy_out(table->table.to_json()); });
}

ksum_status ksum_debye_ratio_law(const ksum_debye* table, int* out_k) {
  if (table == nullptr || out_k == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::optional<int> bad = ksum::first_ratio_law_violation(table->table);
    *out_k = bad ? *bad : -1;
  });
}

ksum_status ksum_bessel_table_csv(const ksum_context* ctx, int n, const char* eps, int order, int significant,
                                  char** out_csv) {
  if (ctx == nullptr || eps == nullptr || out_csv == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  return guarded([&] { *out_csv = copy_out(ksum::bessel_table_csv(n, value(ctx, eps), order, significant)); });
}

ksum_status ksum_u_scan_csv(const ksum_context* ctx, const char* eps, int order, ksum_transform kind, int grid,
                            ksum_indexing indexing, char** out_csv) {
  if (ctx == nullptr || eps == nullptr || out_csv == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  return guarded([&] {
    if (order < 1) ksum::fail(ksum::ErrorCode::Range, "order must be at least 1");
    if (grid < 1) ksum::fail(ksum::ErrorCode::Range, "grid must have at least one point");
    const ksum::TransformKind k = to_kind(kind);
    const ksum::BigReal e = value(ctx, eps);
    const ksum::DebyeTable table = ksum::DebyeTable::generate(order + 2);
    const auto points =
        ksum::stieltjes_scan(e, ksum::uniform_t_grid(grid, ctx->digits), order, k, table, to_indexing(indexing, k));
    *out_csv = copy_out(ksum::scan_to_csv(points, order, e, 17));
  });
}

const char* ksum_target_name(size_t index) {
  const auto& targets = ksum::reproduce_targets();
  return index < targets.size() ? targets[index].c_str() : nullptr;
}

ksum_run_config ksum_run_config_default(void) {
  return ksum_run_config{ksum::kDefaultDigits, KSUM_FORMAT_CSV, nullptr, 0};
}

ksum_status ksum_reproduce(const ksum_run_config* cfg, const char* target, ksum_report** out) {
  if (cfg == nullptr || target == nullptr || out == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    const ksum::ReproduceReport r = ksum::reproduce(target, to_config(*cfg));
    *out = new ksum_report{r.passed(), 0, r.summary(), r.artifact_path};
  });
}

ksum_status ksum_selfcheck(const ksum_run_config* cfg, unsigned flags, ksum_report** out) {
  if (cfg == nullptr || out == nullptr) return fail_with(KSUM_ERR_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    ksum::SelfcheckOptions options;
    options.corrupt_debye_row = (flags & KSUM_SELFCHECK_CORRUPT_DEBYE_ROW) != 0;
    const ksum::SelfcheckReport r = ksum::selfcheck(to_config(*cfg), options);
    *out = new ksum_report{r.passed(), r.warnings(), r.summary(), ""};
  });
}

int ksum_report_passed(const ksum_report* report) { return report != nullptr && report->passed ? 1 : 0; }

int ksum_report_warnings(const ksum_report* report) { return report != nullptr ? report->warnings : 0; }

const char* ksum_report_summary(const ksum_report* report) { return report != nullptr ? report->summary.c_str() : ""; }

const char* ksum_report_artifact_path(const ksum_report* report) {
  return report != nullptr ? report->artifact_path.c_str() : "";
}

void ksum_report_destroy(ksum_report* report) { delete report; }

}  // extern "C"
