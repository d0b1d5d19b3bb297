#include "ksum/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ksum/bessel.hpp"
#include "ksum/debye.hpp"
#include "ksum/error.hpp"
#include "ksum/goldens.hpp"
#include "ksum/kapteyn.hpp"
#include "ksum/kepler.hpp"
#include "ksum/numparse.hpp"
#include "ksum/quadrature.hpp"
#include "ksum/seqxform.hpp"

namespace ksum {

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  fail(ErrorCode::Config, "unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

int resolve_precision(std::optional<int> flag, const char* env_value) {
  int digits = kDefaultDigits;
  if (flag) {
    digits = *flag;
  } else if (env_value != nullptr && *env_value != '\0') {
    const std::string_view text(env_value);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), digits);
    if (ec != std::errc() || end != text.data() + text.size()) {
      fail(ErrorCode::Config, std::string(kPrecisionEnv) + "='" + std::string(text) + "' is not an integer");
    }
  }
  if (digits < kMinDigits) {
    fail(ErrorCode::Config,
         "precision " + std::to_string(digits) + " is below the minimum of " + std::to_string(kMinDigits) + " digits");
  }
  return digits;
}

void validate(const RunConfig& cfg) {
  if (cfg.precision_digits < kMinDigits) {
    fail(ErrorCode::Config, "precision " + std::to_string(cfg.precision_digits) + " is below the minimum of " +
                                std::to_string(kMinDigits) + " digits");
  }
  if (cfg.print_digits < 0 || cfg.print_digits > cfg.precision_digits) {
    fail(ErrorCode::Config, "printed digits must be between 1 and the working precision");
  }
}

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> targets = {"table1", "table2", "table3", "table4", "table5",
                                                   "fig2",   "fig3",   "fig4",   "fig5",   "fig6",
                                                   "fig7",   "fig8",   "fig9",   "fig10"};
  return targets;
}

bool ReproduceReport::passed() const { return mismatches() == 0; }

int ReproduceReport::mismatches() const {
  return static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const MatchRecord& r) { return !r.matched && !r.known_erratum; }));
}

std::string ReproduceReport::summary() const {
  std::ostringstream os;
  for (const auto& r : records) {
    const char* tag = r.matched ? "match" : (r.known_erratum ? "erratum" : "MISMATCH");
    os << target << "  " << tag << "  " << r.label << "  expected " << r.expected << "  got " << r.observed << '\n';
  }
  const int errata = static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const MatchRecord& r) { return !r.matched && r.known_erratum; }));
  os << target << ": " << records.size() - static_cast<size_t>(mismatches() + errata) << "/" << records.size()
     << " matched";
  if (errata > 0) os << ", " << errata << " known erratum in the printed table";
  if (mismatches() > 0) os << ", " << mismatches() << " mismatched";
  if (!artifact_path.empty()) os << "; wrote " << artifact_path;
  os << '\n';
  return os.str();
}

namespace {

constexpr int kFigureDigits = 17;

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render(const Dataset& data, std::string_view target, const RunConfig& cfg,
                   const std::vector<MatchRecord>& records) {
  if (cfg.format == OutputFormat::Csv) {
    std::ostringstream os;
    for (size_t i = 0; i < data.columns.size(); ++i) os << (i ? "," : "") << data.columns[i];
    os << '\n';
    for (const auto& row : data.rows) {
      for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  nlohmann::ordered_json doc;
  doc["target"] = std::string(target);
  doc["precision_digits"] = cfg.precision_digits;
  doc["columns"] = data.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : data.rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < row.size(); ++i) obj[data.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  auto checks = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    checks.push_back({{"label", r.label},
                      {"expected", r.expected},
                      {"observed", r.observed},
                      {"matched", r.matched},
                      {"known_erratum", r.known_erratum}});
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

class Records {
 public:
  void golden(const GoldenEntry& e, const std::string& label, const BigReal& re, const BigReal* im = nullptr) {
    MatchRecord r;
    r.label = label;
    r.known_erratum = e.known_erratum;
    r.expected = e.im.empty() ? e.re : e.re + " " + e.im + "i";
    r.observed = re.format(significant_digits(e.re));
    r.matched = golden_match(e.re, re);
    if (!e.im.empty()) {
      r.observed += " " + im->format(significant_digits(e.im)) + "i";
      r.matched = r.matched && golden_match(e.im, *im);
    }
    list.push_back(std::move(r));
  }

  void missing(const GoldenEntry& e, const std::string& label, const std::string& why) {
    list.push_back({label, e.im.empty() ? e.re : e.re + " " + e.im + "i", why, false, e.known_erratum});
  }

  void claim(std::string label, std::string expected, std::string observed, bool ok) {
    list.push_back({std::move(label), std::move(expected), std::move(observed), ok, false});
  }

  std::vector<MatchRecord> list;
};

const BigComplex* estimate_or_null(const TransformTable& t, int k) {
  return k >= 1 && k <= t.max_order() ? &t.estimate(k) : nullptr;
}

std::string cell(const BigComplex* z, int digits, bool imag = false) {
  if (z == nullptr) return "";
  return (imag ? z->im() : z->re()).format(digits);
}

std::string sci(const BigReal& x) { return x.format(kFigureDigits); }

std::string column_label(const std::string& column) {
  if (column == "d") return "levin_d";
  if (column == "delta") return "weniger_delta";
  if (column == "partial") return "partial sum";
  return column;
}

struct BesselColumns {
  PartialSums sums;
  TransformTable d;
  TransformTable delta;
};

// Row r of the published layout holds the partial sum s_{r-1} and the order-r transforms.
BesselColumns bessel_columns(int n, const BigReal& eps, int k_max) {
  const DebyeTable debye = DebyeTable::generate(k_max + 2);
  const DebyeSeriesSpec spec{n, eps, k_max + 3};
  return {partial_sums(jn_debye_terms(spec, debye)),
          jn_resummed(spec, debye, TransformKind::LevinD, k_max, tabulated_indexing(TransformKind::LevinD)),
          jn_resummed(spec, debye, TransformKind::WenigerDelta, k_max, tabulated_indexing(TransformKind::WenigerDelta))};
}

Dataset bessel_dataset(const BesselColumns& c, int k_max, int digits) {
  Dataset out{{"order", "partial_sum", "levin_d", "weniger_delta"}, {}};
  for (int r = 1; r <= k_max; ++r) {
    out.rows.push_back({std::to_string(r), c.sums.sums[static_cast<size_t>(r - 1)].re().format(digits),
                        cell(estimate_or_null(c.d, r), digits), cell(estimate_or_null(c.delta, r), digits)});
  }
  return out;
}

Dataset bessel_table(const std::string& target, const BigReal& eps, const RunConfig& cfg, Records& rec) {
  const int digits = cfg.print_digits > 0 ? cfg.print_digits : 10;
  const BesselColumns c = bessel_columns(10, eps, 30);
  for (const auto& e : golden_table(target).entries) {
    const std::string label = "order " + std::to_string(e.row) + " " + column_label(e.column);
    if (e.column == "partial") {
      rec.golden(e, label, c.sums.sums[static_cast<size_t>(e.row - 1)].re());
      continue;
    }
    const BigComplex* v = estimate_or_null(e.column == "d" ? c.d : c.delta, e.row);
    if (v == nullptr) {
      rec.missing(e, label, "transformation stopped early");
    } else {
      rec.golden(e, label, v->re());
    }
  }
  return bessel_dataset(c, 30, digits);
}

Dataset table1(const RunConfig& cfg, Records& rec) {
  const Precision p(cfg.precision_digits);
  const int digits = cfg.print_digits > 0 ? cfg.print_digits : 6;
  const BigReal eps = p.ratio(9, 10);
  const BigReal M = p.pi() / 4;
  const PartialSums s = partial_sums(kapteyn_terms({eps, cis(M), 71, KapteynConvention::Kepler}));
  Dataset out{{"order", "psi"}, {}};
  for (const auto& e : golden_table("table1").entries) {
    const BigReal psi = M + s.sums[static_cast<size_t>(e.row)].im();
    out.rows.push_back({std::to_string(e.row), psi.format(digits)});
    rec.golden(e, "order " + std::to_string(e.row) + " psi", psi);
  }
  const BigReal newton = solve_newton({eps, M}, p.epsilon(10));
  out.rows.push_back({"newton", newton.format(std::max(digits, 20))});
  const std::string printed = "1.6800337357880455291";
  rec.claim("newton psi", printed, newton.format(significant_digits(printed)), golden_match(printed, newton));
  const BigReal residual = abs(newton - eps * sin(newton) - M);
  const BigReal bound = p.epsilon(20);
  rec.claim("newton residual", "< " + bound.format_sci(2), residual.format_sci(3), residual < bound);
  return out;
}

Dataset table4(const RunConfig& cfg, Records& rec) {
  const int P = cfg.precision_digits;
  const int digits = cfg.print_digits > 0 ? cfg.print_digits : 10;
  const DebyeTable debye = DebyeTable::generate(106);
  const UQuery q{parse_value("log(2)", P), parse_value("100/sqrt(199)", P), 107};
  const PartialSums s = partial_sums(u_terms(q, debye));
  const TransformTable d = u_resummed(q, debye, TransformKind::LevinD, 105, tabulated_indexing(TransformKind::LevinD));
  const TransformTable delta =
      u_resummed(q, debye, TransformKind::WenigerDelta, 105, tabulated_indexing(TransformKind::WenigerDelta));
  Dataset out{{"order", "partial_sum", "levin_d", "weniger_delta"}, {}};
  for (int r = 1; r <= 105; ++r) {
    out.rows.push_back({std::to_string(r), s.sums[static_cast<size_t>(r - 1)].re().format(digits),
                        cell(estimate_or_null(d, r), digits), cell(estimate_or_null(delta, r), digits)});
  }
  for (const auto& e : golden_table("table4").entries) {
    const std::string label = "order " + std::to_string(e.row) + " " + column_label(e.column);
    if (e.column == "partial") {
      rec.golden(e, label, s.sums[static_cast<size_t>(e.row - 1)].re());
      continue;
    }
    const BigComplex* v = estimate_or_null(e.column == "d" ? d : delta, e.row);
    if (v == nullptr) {
      rec.missing(e, label, "transformation stopped early");
    } else {
      rec.golden(e, label, v->re());
    }
  }
  return out;
}

// Generalized Kapteyn series at z = 10 e^{i pi/3}, eps = 9/10. Printed row 1 is s_0 with
// the order-1 transforms; rows r >= 10 are s_r with the order-(r+1) transforms.
Dataset table5(const RunConfig& cfg, Records& rec) {
  const Precision p(cfg.precision_digits);
  const int digits = cfg.print_digits > 0 ? cfg.print_digits : 7;
  const ComplexKeplerProblem prob{p.ratio(9, 10), polar(p.real(10), p.pi() / 3)};
  const PartialSums s = partial_sums(kapteyn_terms({prob.eps, prob.z, 53, KapteynConvention::Generalized}));
  const IdentityCheck d =
      complex_identity_check(prob, TransformKind::LevinD, 51, tabulated_indexing(TransformKind::LevinD));
  const IdentityCheck delta =
      complex_identity_check(prob, TransformKind::WenigerDelta, 51, tabulated_indexing(TransformKind::WenigerDelta));
  auto order_of = [](int row) { return row == 1 ? 1 : row + 1; };
  auto sum_of = [](int row) { return row == 1 ? 0 : row; };
  auto at = [](const IdentityCheck& c, int k) -> const BigComplex* {
    return k >= 1 && static_cast<size_t>(k) <= c.first.size() ? &c.first[static_cast<size_t>(k - 1)] : nullptr;
  };
  Dataset out{{"order", "partial_sum_re", "partial_sum_im", "levin_d_re", "levin_d_im", "weniger_delta_re",
               "weniger_delta_im"},
              {}};
  for (int r : {1, 10, 20, 30, 40, 50}) {
    const BigComplex& ps = s.sums[static_cast<size_t>(sum_of(r))];
    const BigComplex* dv = at(d, order_of(r));
    const BigComplex* tv = at(delta, order_of(r));
    out.rows.push_back({std::to_string(r), ps.re().format(digits), ps.im().format(digits), cell(dv, digits),
                        cell(dv, digits, true), cell(tv, digits), cell(tv, digits, true)});
  }
  for (const auto& e : golden_table("table5").entries) {
    const std::string label = "order " + std::to_string(e.row) + " " + column_label(e.column);
    if (e.column == "partial") {
      const BigComplex& v = s.sums[static_cast<size_t>(sum_of(e.row))];
      rec.golden(e, label, v.re(), &v.im());
      continue;
    }
    const BigComplex* v = at(e.column == "d" ? d : delta, order_of(e.row));
    if (v == nullptr) {
      rec.missing(e, label, "transformation stopped early");
    } else {
      rec.golden(e, label, v->re(), &v->im());
    }
  }
  return out;
}

Dataset fig2(const RunConfig& cfg, Records& rec) {
  const Precision p(cfg.precision_digits);
  const int k_terms = 61;
  const DebyeTable debye = DebyeTable::generate(k_terms - 1);
  Dataset out{{"eps", "k", "term_modulus"}, {}};
  for (const char* e : {"1/2", "9/10"}) {
    const TermSequence t = jn_debye_terms({10, parse_value(e, p.digits()), k_terms}, debye);
    size_t smallest = 0;
    for (size_t k = 0; k < t.size(); ++k) {
      const BigReal m = abs(t[k]);
      if (m < abs(t[smallest])) smallest = k;
      out.rows.push_back({e, std::to_string(k), sci(m)});
    }
    const BigReal growth = abs(t[t.size() - 1]) / abs(t[smallest]);
    rec.claim(std::string("eps=") + e + " terms diverge past their minimum", "last / smallest > 1",
              "smallest at k=" + std::to_string(smallest) + ", ratio " + growth.format_sci(3),
              smallest + 1 < t.size() && growth > p.real(1));
  }
  return out;
}

Dataset fig3(const RunConfig& cfg, Records& rec) {
  const int P = cfg.precision_digits;
  const DebyeTable debye = DebyeTable::generate(200);
  Dataset out{{"k", "abs_leading_coeff", "asymptote"}, {}};
  double worst = 0;
  int worst_k = 0;
  for (int k = 1; k <= 200; ++k) {
    const BigReal a = abs(rational_to_real(debye.coeff(k, 3 * k), P));
    const BigReal law = leading_coeff_asymptote(k, P);
    out.rows.push_back({std::to_string(k), sci(a), sci(law)});
    if (k >= 30) {
      const double gap = std::abs(log10(law / a).to_double());
      if (gap > worst) {
        worst = gap;
        worst_k = k;
      }
    }
  }
  std::ostringstream observed;
  observed.precision(3);
  observed << worst << " decades at k=" << worst_k;
  rec.claim("asymptote within one decade, 30 <= k <= 200", "<= 1 decade", observed.str(), worst <= 1.0);
  const std::optional<int> bad = first_ratio_law_violation(debye);
  rec.claim("exact ratio law of leading coefficients", "no violation",
            bad ? "violated at k=" + std::to_string(*bad) : "no violation", !bad);
  return out;
}

Dataset fig4(const RunConfig& cfg, Records& rec) {
  const Precision p(cfg.precision_digits);
  const int n = 10;
  const BigReal eps = p.ratio(99, 100);
  const DebyeTable debye = DebyeTable::generate(40);
  const TermSequence t = jn_debye_terms({n, eps, 41}, debye);
  const BigReal c2 = p.real(1) - eps * eps;
  const BigReal prefactor =
      pow(rho(eps), n) * p.real(10000) / sqrt(p.real(2) * p.pi() * n * sqrt(c2));
  const BigReal step = p.real(3) / (p.real(2 * n) * pow(c2, p.ratio(3, 2)));
  Dataset out{{"k", "term_modulus", "factorial_law"}, {}};
  BigReal law = prefactor;
  double worst = 0;
  int worst_k = 0;
  for (int k = 0; k <= 40; ++k) {
    if (k > 0) law *= step * k;
    const BigReal m = abs(t[static_cast<size_t>(k)]);
    out.rows.push_back({std::to_string(k), sci(m), sci(law)});
    if (k >= 10) {
      const double gap = std::abs(log10(law / m).to_double());
      if (gap > worst) {
        worst = gap;
        worst_k = k;
      }
    }
  }
  std::ostringstream observed;
  observed.precision(3);
  observed << worst << " decades at k=" << worst_k;
  rec.claim("factorial law within one decade, 10 <= k <= 40", "<= 1 decade", observed.str(), worst <= 1.0);
  return out;
}

struct ScanSummary {
  BigReal min_value;
  BigReal worst_step;  // largest decrease of U when x grows between neighbouring points
  int failures = 0;
};

ScanSummary summarize(const std::vector<ScanPoint>& scan, int digits) {
  ScanSummary s{BigReal(0, digits), BigReal(0, digits), 0};
  bool first = true;
  for (size_t i = 0; i < scan.size(); ++i) {
    if (!scan[i].ok) {
      ++s.failures;
      continue;
    }
    if (first || scan[i].value < s.min_value) s.min_value = scan[i].value;
    first = false;
    // the grid runs in increasing t, i.e. decreasing x
    if (i + 1 < scan.size() && scan[i + 1].ok) s.worst_step = max(s.worst_step, scan[i + 1].value - scan[i].value);
  }
  return s;
}

void scan_rows(Dataset& out, const std::string& eps_text, int order, const std::vector<ScanPoint>& scan) {
  for (const auto& pt : scan) {
    out.rows.push_back({eps_text, std::to_string(order), sci(pt.t), sci(pt.x), pt.ok ? sci(pt.value) : "",
                        pt.ok ? "" : pt.error});
  }
}

void stieltjes_claims(Records& rec, const std::string& eps_text, const std::vector<ScanPoint>& scan, int digits) {
  const ScanSummary s = summarize(scan, digits);
  const BigReal slack = BigReal::parse("1e-8", digits);
  rec.claim("eps=" + eps_text + " all points resummed", "0 failures", std::to_string(s.failures), s.failures == 0);
  rec.claim("eps=" + eps_text + " U >= -1e-8", ">= -1e-8", s.min_value.format_sci(3), s.min_value >= -slack);
  rec.claim("eps=" + eps_text + " U nondecreasing in x", "largest drop <= 1e-8", s.worst_step.format_sci(3),
            s.worst_step <= slack);
}

const std::vector<std::string> kScanColumns = {"eps", "order", "t", "x", "u_value", "error"};

Dataset fig5(const RunConfig& cfg, Records& rec) {
  const int P = cfg.precision_digits;
  const DebyeTable debye = DebyeTable::generate(42);
  const auto grid = uniform_t_grid(101, P);
  const BigReal eps = parse_value("99/100", P);
  const TransformKind kind = TransformKind::LevinD;
  Dataset out{kScanColumns, {}};
  std::vector<ScanPoint> order20;
  std::vector<ScanPoint> order40;
  for (int order : {6, 10, 20, 40}) {
    std::vector<ScanPoint> scan = stieltjes_scan(eps, grid, order, kind, debye, tabulated_indexing(kind));
    scan_rows(out, "99/100", order, scan);
    if (order == 20) order20 = scan;
    if (order == 40) order40 = std::move(scan);
  }
  stieltjes_claims(rec, "99/100", order40, P);
  BigReal gap(0, P);
  for (size_t i = 0; i < grid.size(); ++i) {
    if (order20[i].ok && order40[i].ok) gap = max(gap, abs(order20[i].value - order40[i].value));
  }
  rec.claim("orders 20 and 40 coincide", "<= 1e-6", gap.format_sci(3), gap <= BigReal::parse("1e-6", P));
  return out;
}

Dataset fig6(const RunConfig& cfg, Records& rec) {
  const int P = cfg.precision_digits;
  const DebyeTable debye = DebyeTable::generate(42);
  const auto grid = uniform_t_grid(101, P);
  const TransformKind kind = TransformKind::LevinD;
  Dataset out{kScanColumns, {}};
  for (const char* e : {"1/10", "5/10", "7/10", "9/10"}) {
    const auto scan = stieltjes_scan(parse_value(e, P), grid, 40, kind, debye, tabulated_indexing(kind));
    scan_rows(out, e, 40, scan);
    stieltjes_claims(rec, e, scan, P);
  }
  return out;
}

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Relative error of the resummed Kapteyn series at M = pi/2 for four eccentricities, with
// the fit exp(-alpha k^nu) at eps = 99/100.
Dataset error_figure(TransformKind kind, double nu_min, double nu_max, const RunConfig& cfg, Records& rec) {
  const Precision p(cfg.precision_digits);
  const int k_max = 200;
  const BigReal M = p.pi() / 2;
  Dataset out{{"kind", "eps", "k", "relative_error", "fit"}, {}};
  for (const char* e : {"2/10", "6/10", "9/10", "99/100"}) {
    const auto errors = series_errors({parse_value(e, p.digits()), M}, kind, k_max, tabulated_indexing(kind));
    std::optional<RateFit> fit;
    if (std::string_view(e) == "99/100") {
      try {
        fit = fit_rate(errors, p.digits());
      } catch (const Error& err) {
        rec.claim("rate fit at eps=99/100", "fit", err.what(), false);
      }
    }
    for (const auto& [k, err] : errors) {
      std::string model;
      if (fit) model = fixed(std::exp(-fit->alpha * std::pow(static_cast<double>(k), fit->nu)));
      out.rows.push_back({std::string(to_string(kind)), e, std::to_string(k), err.format_sci(6), model});
    }
    if (fit) {
      std::ostringstream observed;
      observed << "nu=" << fixed(fit->nu) << " alpha=" << fixed(fit->alpha) << " over k=" << fit->window_min << ".."
               << fit->window_max;
      std::ostringstream band;
      band << "nu in [" << nu_min << ", " << nu_max << "]";
      rec.claim("rate fit at eps=99/100", band.str(), observed.str(), fit->nu >= nu_min && fit->nu <= nu_max);
    }
  }
  return out;
}

Dataset fig9(const RunConfig& cfg, Records& rec) {
  const Precision p(cfg.precision_digits);
  const ComplexKeplerProblem prob{p.ratio(9, 10), polar(p.real(10), p.pi() / 3)};
  const int k_max = 50;
  Dataset out{{"kind", "k", "relative_error"}, {}};
  std::vector<BigReal> at12;
  std::vector<BigReal> at30;
  for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
    const IdentityCheck c = complex_identity_check(prob, kind, k_max, tabulated_indexing(kind));
    BigReal best(1, p.digits());
    for (const auto& [k, err] : c.errors) {
      out.rows.push_back({std::string(to_string(kind)), std::to_string(k), err.format_sci(6)});
      if (k <= 12) best = min(best, err);
      if (k == 30) at30.push_back(err);
    }
    at12.push_back(best);
    rec.claim(std::string(to_string(kind)) + " error by order 12", "<= 1e-5", best.format_sci(3),
              best <= BigReal::parse("1e-5", p.digits()));
  }
  if (at30.size() == 2) {
    rec.claim("weniger_delta error <= levin_d error at order 30", "delta <= d",
              at30[1].format_sci(3) + " vs " + at30[0].format_sci(3), at30[1] <= at30[0]);
  }
  return out;
}

Dataset fig10(const RunConfig& cfg, Records& rec) {
  const int P = cfg.precision_digits;
  std::vector<BigReal> Ms;
  for (const char* m : {"pi/4", "pi/3", "pi/2", "2pi/3", "3pi/4"}) Ms.push_back(parse_value(m, P));
  std::vector<BigReal> eps;
  for (const char* e : {"1/10", "2/10", "3/10", "4/10", "5/10", "6/10", "7/10", "8/10", "9/10", "99/100"}) {
    eps.push_back(parse_value(e, P));
  }
  std::vector<RateCell> cells;
  for (TransformKind kind : {TransformKind::WenigerDelta, TransformKind::LevinD}) {
    std::vector<RateCell> part = rate_scan(Ms, eps, {kind}, 200, tabulated_indexing(kind));
    cells.insert(cells.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  const std::string csv = rate_scan_csv(cells);
  Dataset out;
  std::istringstream lines(csv);
  std::string line;
  bool header = true;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::stringstream fs(line);
    std::string f;
    while (std::getline(fs, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (header) {
      out.columns = std::move(fields);
      header = false;
    } else {
      out.rows.push_back(std::move(fields));
    }
  }
  const auto fitted = std::count_if(cells.begin(), cells.end(), [](const RateCell& c) { return c.fit.has_value(); });
  rec.claim("cells fitted", std::to_string(cells.size()), std::to_string(fitted),
            fitted == static_cast<long>(cells.size()));
  return out;
}

Dataset build(std::string_view target, const RunConfig& cfg, Records& rec) {
  const int P = cfg.precision_digits;
  if (target == "table1") return table1(cfg, rec);
  if (target == "table2") return bessel_table("table2", parse_value("1/2", P), cfg, rec);
  if (target == "table3") return bessel_table("table3", parse_value("9/10", P), cfg, rec);
  if (target == "table4") return table4(cfg, rec);
  if (target == "table5") return table5(cfg, rec);
  if (target == "fig2") return fig2(cfg, rec);
  if (target == "fig3") return fig3(cfg, rec);
  if (target == "fig4") return fig4(cfg, rec);
  if (target == "fig5") return fig5(cfg, rec);
  if (target == "fig6") return fig6(cfg, rec);
  if (target == "fig7") return error_figure(TransformKind::WenigerDelta, 0.85, 1.15, cfg, rec);
  if (target == "fig8") return error_figure(TransformKind::LevinD, 0.75, 1.05, cfg, rec);
  if (target == "fig9") return fig9(cfg, rec);
  if (target == "fig10") return fig10(cfg, rec);
  std::string known;
  for (const auto& t : reproduce_targets()) known += (known.empty() ? "" : ", ") + t;
  fail(ErrorCode::Config, "unknown target '" + std::string(target) + "' (expected one of " + known + ")");
}

}  // namespace

std::string bessel_table_csv(int n, const BigReal& eps, int k_max, int significant) {
  if (significant < 1) fail(ErrorCode::Config, "printed digits must be positive");
  RunConfig cfg;
  cfg.precision_digits = eps.digits();
  return render(bessel_dataset(bessel_columns(n, eps, k_max), k_max, significant), "bessel", cfg, {});
}

std::string render_artifact(std::string_view target, const RunConfig& cfg, ReproduceReport* report) {
  validate(cfg);
  Records rec;
  const Dataset data = build(target, cfg, rec);
  if (report != nullptr) {
    report->target = std::string(target);
    report->records = rec.list;
  }
  return render(data, target, cfg, rec.list);
}

ReproduceReport reproduce(std::string_view target, const RunConfig& cfg) {
  ReproduceReport report;
  const std::string text = render_artifact(target, cfg, &report);
  report.artifact_path =
      cfg.output_path.empty() ? "./" + std::string(target) + "." + std::string(to_string(cfg.format)) : cfg.output_path;
  std::ofstream out(report.artifact_path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + report.artifact_path + "' for writing");
  out << text;
  out.close();
  if (!out) fail(ErrorCode::Io, "failed writing '" + report.artifact_path + "'");
  return report;
}

bool SelfcheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

int SelfcheckReport::warnings() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.warning.empty(); }));
}

std::string SelfcheckReport::summary() const {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : checks) {
    os << (c.passed ? "pass" : "FAIL") << "  " << c.module << "  " << c.invariant;
    if (!c.passed) os << "  observed " << c.observed << "  expected " << c.expected;
    os << '\n';
    if (!c.warning.empty()) os << "warn  " << c.module << "  " << c.invariant << "  " << c.warning << '\n';
    failed += c.passed ? 0 : 1;
  }
  os << "selfcheck at " << precision_digits << " digits: " << checks.size() - static_cast<size_t>(failed) << "/"
     << checks.size() << " passed";
  if (warnings() > 0) os << ", " << warnings() << " warning(s)";
  os << '\n';
  return os.str();
}

namespace {

class Suite {
 public:
  explicit Suite(int digits) : p(digits) {}

  // `body` fills observed/expected and returns whether the invariant holds.
  void run(const std::string& module, const std::string& invariant,
           const std::function<bool(CheckResult&)>& body) {
    CheckResult r{module, invariant, false, "", "", ""};
    try {
      r.passed = body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.observed = std::string("error: ") + e.what();
    }
    results.push_back(std::move(r));
  }

  Precision p;
  std::vector<CheckResult> results;
};

TermSequence real_terms(const std::vector<BigReal>& values, const std::string& name) {
  std::vector<BigComplex> terms;
  for (const auto& v : values) terms.emplace_back(v, BigReal(0, v.digits()));
  return TermSequence(std::move(terms), name);
}

BigReal largest_gap(const TransformTable& a, const TransformTable& b, const std::function<BigComplex(const BigComplex&)>& map) {
  BigReal worst(0, a.estimates.empty() ? kMinDigits : a.estimates.front().digits());
  const int k_max = std::min(a.max_order(), b.max_order());
  for (int k = 1; k <= k_max; ++k) worst = max(worst, abs(b.estimate(k) - map(a.estimate(k))));
  return worst;
}

// Digits on which two values agree.
double agreement(const BigReal& a, const BigReal& b) {
  const BigReal diff = abs(a - b);
  if (diff.is_zero()) return a.digits();
  return -log10(diff / abs(b)).to_double();
}

}  // namespace

SelfcheckReport selfcheck(const RunConfig& cfg, const SelfcheckOptions& options) {
  validate(cfg);
  const int P = cfg.precision_digits;
  Suite s(P);
  const Precision& p = s.p;
  const BigReal tight = p.epsilon(20);

  s.run("arith", "decimal round trip", [&](CheckResult& r) {
    const BigReal x = p.pi() / 7;
    const BigReal back = BigReal::parse(x.serialize(), P);
    r.expected = "identical value";
    r.observed = back == x ? "identical value" : "differs by " + abs(back - x).format_sci(3);
    return back == x;
  });

  s.run("arith", "rational arithmetic is exact", [&](CheckResult& r) {
    const BigRational q = BigRational(1, 3) + BigRational(1, 6) - BigRational(1, 2);
    r.expected = "0";
    r.observed = q.to_string();
    return q.is_zero();
  });

  s.run("seqxform", "geometric series exactness", [&](CheckResult& r) {
    std::vector<BigReal> terms;
    const BigReal ratio = p.ratio(-2, 3);
    BigReal a = p.real(3);
    for (int n = 0; n < 8; ++n, a *= ratio) terms.push_back(a);
    const TermSequence t = real_terms(terms, "3 (-2/3)^n");
    const BigReal limit = p.real(3) / (p.real(1) - ratio);
    BigReal worst(0, P);
    for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
      const TransformTable table = transform(t, kind, 3);
      for (int k = 1; k <= 3; ++k) worst = max(worst, abs(table.estimate(k).re() - limit));
    }
    r.expected = "< " + tight.format_sci(2);
    r.observed = worst.format_sci(3);
    return worst < tight;
  });

  const DebyeTable debye = DebyeTable::generate(32);
  const TermSequence bessel_terms = jn_debye_terms({10, p.ratio(1, 2), 32}, debye);

  s.run("seqxform", "translation covariance", [&](CheckResult& r) {
    std::vector<BigComplex> shifted = bessel_terms.terms();
    const BigComplex c(p.ratio(7, 3), p.ratio(-1, 5));
    shifted[0] += c;
    const TermSequence moved(std::move(shifted), "translated");
    BigReal worst(0, P);
    for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
      worst = max(worst, largest_gap(transform(bessel_terms, kind, 20), transform(moved, kind, 20),
                                     [&](const BigComplex& z) { return z + c; }));
    }
    r.expected = "< " + p.epsilon(30).format_sci(2);
    r.observed = worst.format_sci(3);
    return worst < p.epsilon(30);
  });

  s.run("seqxform", "scale invariance", [&](CheckResult& r) {
    const BigComplex lambda(p.ratio(-5, 2), p.ratio(3, 4));
    std::vector<BigComplex> scaled;
    for (const auto& a : bessel_terms.terms()) scaled.push_back(a * lambda);
    const TermSequence big(std::move(scaled), "scaled");
    BigReal worst(0, P);
    for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
      worst = max(worst, largest_gap(transform(bessel_terms, kind, 20), transform(big, kind, 20),
                                     [&](const BigComplex& z) { return z * lambda; }));
    }
    r.expected = "< " + p.epsilon(30).format_sci(2);
    r.observed = worst.format_sci(3);
    return worst < p.epsilon(30);
  });

  s.run("debye", "ratio law of leading coefficients", [&](CheckResult& r) {
    DebyeTable table = debye;
    if (options.corrupt_debye_row) {
      std::vector<DebyeRow> rows;
      for (int k = 0; k <= debye.k_max(); ++k) rows.push_back(debye.row(k));
      rows[12].back() += BigRational(1, 1000);
      table = DebyeTable::from_rows(std::move(rows));
    }
    const std::optional<int> bad = first_ratio_law_violation(table);
    r.expected = "a^{k+1}_{3k+3} / a^k_{3k} = -(36k(k+1)+5)/(24(k+1)) for k < " + std::to_string(table.k_max());
    r.observed = bad ? "violated at k=" + std::to_string(*bad) : "holds";
    return !bad;
  });

  s.run("debye", "parity of coefficients", [&](CheckResult& r) {
    const auto bad = first_parity_violation(debye);
    r.expected = "a^k_m = 0 unless m = k mod 2";
    r.observed = bad ? "nonzero a^" + std::to_string(bad->first) + "_" + std::to_string(bad->second) : "holds";
    return !bad;
  });

  s.run("bessel", "resummed Debye series matches the ascending series", [&](CheckResult& r) {
    const BigReal eps = p.ratio(1, 2);
    const BigReal ref = jn_reference(10, eps * 10);
    const TransformTable t = jn_resummed({10, eps, 32}, debye, TransformKind::WenigerDelta, 25);
    const BigReal rel = abs((t.estimate(25).re() - ref) / ref);
    r.expected = "< 1e-9";
    r.observed = rel.format_sci(3);
    return rel < p.real("1e-9");
  });

  s.run("kapteyn", "conjugate symmetry of the Kapteyn series", [&](CheckResult& r) {
    const BigReal eps = p.ratio(7, 10);
    const BigReal M = p.ratio(7, 5);
    BigReal worst(0, P);
    for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
      const TransformTable a = transform(kapteyn_terms({eps, cis(M), 22, KapteynConvention::Kepler}), kind, 20);
      const TransformTable b = transform(kapteyn_terms({eps, cis(-M), 22, KapteynConvention::Kepler}), kind, 20);
      worst = max(worst, largest_gap(a, b, [](const BigComplex& z) { return conj(z); }));
    }
    r.expected = "< " + tight.format_sci(2);
    r.observed = worst.format_sci(3);
    return worst < tight;
  });

  s.run("kapteyn", "measure monotonicity", [&](CheckResult& r) {
    const BigReal nu = p.ratio(3, 2);
    BigReal prev(0, P);
    for (const auto& t : uniform_t_grid(50, P)) {
      const BigReal m = stieltjes_measure(nu, t);
      if (m < prev || m > p.real(1)) {
        r.observed = "not monotone at t=" + t.format(6);
        return false;
      }
      prev = m;
    }
    r.expected = "nondecreasing in t, within [0, 1]";
    r.observed = "holds on 50 points";
    return true;
  });

  s.run("kapteyn", "polylogarithm against its integral representation", [&](CheckResult& r) {
    const BigReal nu = p.ratio(3, 2);
    const BigReal x = p.ratio(1, 2);
    // L_nu(x) = x / Gamma(nu) int_0^inf s^(nu-1) / (e^s - x) ds
    const BigReal integral =
        integrate_to_infinity([&](const BigReal& u) { return sqrt(u) / (exp(u) - x); }, p.real(0), P);
    const BigReal oracle = x * integral / gamma(nu);
    const BigReal diff = abs(polylog(nu, BigComplex(x)).re() - oracle);
    r.expected = "<= 1e-20";
    r.observed = diff.format_sci(3);
    return diff <= p.real("1e-20");
  });

  s.run("kepler", "psi reflection symmetry", [&](CheckResult& r) {
    const BigReal eps = p.ratio(1, 2);
    const BigReal M = p.ratio(4, 5);
    const BigReal two_pi = p.pi() * 2;
    const SeriesSolution a = solve_series({eps, M}, TransformKind::WenigerDelta, 20);
    const SeriesSolution b = solve_series({eps, two_pi - M}, TransformKind::WenigerDelta, 20);
    const BigReal gap = abs(b.at(20) - (two_pi - a.at(20)));
    const BigReal newton_gap = abs(solve_newton({eps, two_pi - M}, p.epsilon(10)) -
                                   (two_pi - solve_newton({eps, M}, p.epsilon(10))));
    const BigReal worst = max(gap, newton_gap);
    r.expected = "< " + tight.format_sci(2);
    r.observed = worst.format_sci(3);
    return worst < tight;
  });

  s.run("kepler", "series solution agrees with Newton", [&](CheckResult& r) {
    const BigReal eps = p.ratio(6, 10);
    const BigReal M = p.pi() / 3;
    const BigReal newton = solve_newton({eps, M}, p.epsilon(10));
    const BigReal series = solve_series({eps, M}, TransformKind::WenigerDelta, 30).at(30);
    const BigReal rel = abs((series - newton) / newton);
    r.expected = "< 1e-10";
    r.observed = rel.format_sci(3);
    return rel < p.real("1e-10");
  });

  s.run("seqxform", "run at twice the precision agrees", [&](CheckResult& r) {
    const int P2 = 2 * P;
    const DebyeSeriesSpec lo{10, p.ratio(9, 10), 42};
    const DebyeSeriesSpec hi{10, BigReal(9, P2) / 10, 42};
    const DebyeTable table = DebyeTable::generate(41);
    const DebyeTable table_high = DebyeTable::generate(61);
    double weakest = P;
    int weakest_order = 0;
    for (int k : {10, 20, 30, 40}) {
      const BigReal a = jn_resummed(lo, table, TransformKind::WenigerDelta, k).estimate(k).re();
      const BigReal b = jn_resummed(hi, table, TransformKind::WenigerDelta, k).estimate(k).re();
      const double agree = agreement(a, b);
      if (agree < weakest) {
        weakest = agree;
        weakest_order = k;
      }
    }
    std::ostringstream observed;
    observed.precision(3);
    observed << weakest << " digits (order " << weakest_order << ")";
    r.observed = observed.str();
    r.expected = ">= " + std::to_string(P / 2) + " digits";
    // the divergent U(log 2, 100/sqrt(199)) series: partial sums near 1e147 by order 60
    auto high_order = [&](int digits) {
      const UQuery q{parse_value("log(2)", digits), parse_value("100/sqrt(199)", digits), 62};
      return u_resummed(q, table_high, TransformKind::WenigerDelta, 60).estimate(60).re();
    };
    const double kept = agreement(high_order(P), high_order(P2));
    if (kept < P / 2.0) {
      std::ostringstream note;
      note.precision(3);
      note << "order-60 transform of a divergent series keeps " << kept << " of " << P
           << " digits (cancellation in the alternating weights); raise the precision for high orders";
      r.warning = note.str();
    }
    return weakest >= P / 2;
  });

  SelfcheckReport report;
  report.precision_digits = P;
  report.checks = std::move(s.results);
  return report;
}

}  // namespace ksum
