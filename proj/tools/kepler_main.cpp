#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ksum/ksum.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct ContextDeleter {
  void operator()(ksum_context* c) const { ksum_context_destroy(c); }
};
struct DebyeDeleter {
  void operator()(ksum_debye* d) const { ksum_debye_destroy(d); }
};
struct ReportDeleter {
  void operator()(ksum_report* r) const { ksum_report_destroy(r); }
};
struct StringDeleter {
  void operator()(char* s) const { ksum_string_free(s); }
};
using Text = std::unique_ptr<char, StringDeleter>;

int exit_code_for(ksum_status status) {
  switch (status) {
    case KSUM_OK: return kExitPass;
    case KSUM_ERR_CONFIG:
    case KSUM_ERR_DOMAIN:
    case KSUM_ERR_RANGE:
    case KSUM_ERR_PARSE:
    case KSUM_ERR_ARGUMENT:
    case KSUM_ERR_IO: return kExitUsage;
    default: return kExitMismatch;
  }
}

class Failure {
 public:
  explicit Failure(ksum_status status) : status(status) {}
  ksum_status status;
};

void check(ksum_status status) {
  if (status != KSUM_OK) throw Failure(status);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<const char*> c_strings(const std::vector<std::string>& items) {
  std::vector<const char*> out;
  for (const auto& s : items) out.push_back(s.c_str());
  return out;
}

struct Common {
  int precision = 0;
};

int resolve(const Common& common) {
  int digits = 0;
  check(ksum_resolve_precision(common.precision, &digits));
  return digits;
}

std::unique_ptr<ksum_context, ContextDeleter> make_context(const Common& common) {
  ksum_context* ctx = nullptr;
  check(ksum_context_create(resolve(common), &ctx));
  return std::unique_ptr<ksum_context, ContextDeleter>(ctx);
}

ksum_transform transform_from(const std::string& name) {
  ksum_transform kind = KSUM_LEVIN_D;
  check(ksum_parse_transform(name.c_str(), &kind));
  return kind;
}

void add_precision(CLI::App* cmd, Common& common) {
  cmd->add_option("--precision", common.precision,
                  "working precision in decimal digits (default: $KEPLER_PRECISION, else 250)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kepler's equation by resummed Kapteyn series, and the Debye/Stieltjes numerics"};
  app.require_subcommand(1);
  Common common;

  std::vector<std::string> targets;
  for (size_t i = 0; ksum_target_name(i) != nullptr; ++i) targets.emplace_back(ksum_target_name(i));

  auto* reproduce = app.add_subcommand("reproduce", "regenerate a published table or figure data set");
  std::string target;
  std::string format = "csv";
  std::string out_path;
  int print_digits = 0;
  reproduce->add_option("--target,target", target, "table1..table5, fig2..fig10")
      ->required()
      ->check(CLI::IsMember(targets));
  reproduce->add_option("--format", format, "artifact format")->check(CLI::IsMember({"csv", "json"}));
  reproduce->add_option("--out", out_path, "artifact path (default ./<target>.<format>)");
  reproduce->add_option("--digits", print_digits, "significant digits in table artifacts (default: as printed)")
      ->check(CLI::PositiveNumber);
  add_precision(reproduce, common);

  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite of every module");
  bool corrupt_debye_row = false;
  selfcheck->add_flag("--corrupt-debye-row", corrupt_debye_row, "fault injection: perturb one Debye row")
      ->group("");
  add_precision(selfcheck, common);

  auto* solve = app.add_subcommand("solve", "solve M = psi - eps sin psi");
  std::string eps;
  std::string mean_anomaly;
  std::string method = "newton";
  int order = 40;
  int digits = 30;
  solve->add_option("--eps", eps, "eccentricity in [0, 1), e.g. 9/10")->required();
  solve->add_option("--M", mean_anomaly, "mean anomaly, e.g. pi/4")->required();
  solve->add_option("--method", method, "newton, levin or weniger")
      ->check(CLI::IsMember({"newton", "levin", "weniger"}));
  solve->add_option("--order", order, "transformation order")->check(CLI::PositiveNumber);
  solve->add_option("--digits", digits, "printed significant digits")->check(CLI::PositiveNumber);
  add_precision(solve, common);

  auto* rates = app.add_subcommand("rates", "fit exp(-alpha k^nu) to the transformation errors");
  std::string grid = "pi/4,pi/3,pi/2,2pi/3,3pi/4:1/10,2/10,3/10,4/10,5/10,6/10,7/10,8/10,9/10,99/100";
  std::string kinds = "weniger,levin";
  int rate_order = 200;
  rates->add_option("--grid", grid, "M values and eps values, 'M1,M2,...:eps1,eps2,...'")->capture_default_str();
  rates->add_option("--kinds", kinds, "comma-separated transformations")->capture_default_str();
  rates->add_option("--order", rate_order, "largest transformation order")->capture_default_str()->check(CLI::PositiveNumber);
  add_precision(rates, common);

  auto* debye = app.add_subcommand("debye", "evaluate the Debye polynomial U_k(t)");
  int k = 0;
  std::string t;
  bool table_json = false;
  debye->add_option("--k,k", k, "polynomial order")->required()->check(CLI::NonNegativeNumber);
  debye->add_option("--t,t", t, "argument, e.g. 100/sqrt(199)");
  debye->add_option("--digits", digits, "printed significant digits")->check(CLI::PositiveNumber);
  debye->add_flag("--json", table_json, "print the exact coefficients of U_0 .. U_k as JSON");
  add_precision(debye, common);

  auto* bessel = app.add_subcommand("bessel", "resummed Debye series of J_n(n eps) as CSV");
  int n = 10;
  std::string bessel_eps = "1/2";
  int bessel_order = 30;
  int bessel_digits = 10;
  bessel->add_option("--n", n, "Bessel order")->capture_default_str()->check(CLI::PositiveNumber);
  bessel->add_option("--eps", bessel_eps, "argument ratio eps in (0, 1)")->capture_default_str();
  bessel->add_option("--order", bessel_order, "largest transformation order")->capture_default_str()->check(CLI::PositiveNumber);
  bessel->add_option("--digits", bessel_digits, "printed significant digits")->capture_default_str()->check(CLI::PositiveNumber);
  add_precision(bessel, common);

  auto* uscan = app.add_subcommand("u-scan", "resummed U(-log t, 1/sqrt(1-eps^2)) on t in (0, 1]");
  std::string scan_eps;
  int scan_order = 40;
  std::string scan_kind = "levin";
  int scan_grid = 101;
  uscan->add_option("--eps", scan_eps, "eccentricity in (0, 1)")->required();
  uscan->add_option("--order", scan_order, "transformation order")->capture_default_str()->check(CLI::PositiveNumber);
  uscan->add_option("--kind", scan_kind, "levin or weniger")->capture_default_str();
  uscan->add_option("--grid", scan_grid, "number of points t = i/grid")->capture_default_str()->check(CLI::PositiveNumber);
  add_precision(uscan, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*reproduce || *selfcheck) {
      ksum_run_config cfg = ksum_run_config_default();
      cfg.precision_digits = resolve(common);
      cfg.format = format == "json" ? KSUM_FORMAT_JSON : KSUM_FORMAT_CSV;
      cfg.output_path = out_path.empty() ? nullptr : out_path.c_str();
      cfg.print_digits = print_digits;
      ksum_report* raw = nullptr;
      if (*reproduce) {
        check(ksum_reproduce(&cfg, target.c_str(), &raw));
      } else {
        check(ksum_selfcheck(&cfg, corrupt_debye_row ? KSUM_SELFCHECK_CORRUPT_DEBYE_ROW : 0u, &raw));
      }
      std::unique_ptr<ksum_report, ReportDeleter> report(raw);
      std::cout << ksum_report_summary(report.get());
      return ksum_report_passed(report.get()) ? kExitPass : kExitMismatch;
    }

    auto ctx = make_context(common);

    if (*solve) {
      char* raw = nullptr;
      if (method == "newton") {
        check(ksum_solve_newton(ctx.get(), eps.c_str(), mean_anomaly.c_str(), digits, &raw));
      } else {
        check(ksum_solve_series(ctx.get(), eps.c_str(), mean_anomaly.c_str(), transform_from(method), order,
                                KSUM_INDEXING_TABULATED, digits, &raw));
      }
      Text psi(raw);
      std::cout << psi.get() << '\n';
    } else if (*rates) {
      const std::vector<std::string> halves = split(grid, ':');
      if (halves.size() != 2) {
        std::cerr << "kepler rates: --grid must look like 'M1,M2,...:eps1,eps2,...'\n";
        return kExitUsage;
      }
      const std::vector<std::string> Ms = split(halves[0], ',');
      const std::vector<std::string> es = split(halves[1], ',');
      std::vector<ksum_transform> kind_list;
      for (const auto& name : split(kinds, ',')) kind_list.push_back(transform_from(name));
      const auto m_ptrs = c_strings(Ms);
      const auto e_ptrs = c_strings(es);
      char* raw = nullptr;
      check(ksum_rates_csv(ctx.get(), m_ptrs.data(), m_ptrs.size(), e_ptrs.data(), e_ptrs.size(), kind_list.data(),
                           kind_list.size(), rate_order, &raw));
      Text csv(raw);
      std::cout << csv.get();
    } else if (*debye) {
      ksum_debye* raw_table = nullptr;
      check(ksum_debye_create(k, &raw_table));
      std::unique_ptr<ksum_debye, DebyeDeleter> table(raw_table);
      if (table_json) {
        char* raw = nullptr;
        check(ksum_debye_json(table.get(), &raw));
        Text json(raw);
        std::cout << json.get();
      }
      if (!t.empty()) {
        char* raw = nullptr;
        check(ksum_debye_eval(ctx.get(), table.get(), k, t.c_str(), digits, &raw));
        Text value(raw);
        std::cout << value.get() << '\n';
      } else if (!table_json) {
        std::cerr << "kepler debye: give --t to evaluate U_k(t), or --json for the coefficients\n";
        return kExitUsage;
      }
    } else if (*bessel) {
      char* raw = nullptr;
      check(ksum_bessel_table_csv(ctx.get(), n, bessel_eps.c_str(), bessel_order, bessel_digits, &raw));
      Text csv(raw);
      std::cout << csv.get();
    } else if (*uscan) {
      char* raw = nullptr;
      check(ksum_u_scan_csv(ctx.get(), scan_eps.c_str(), scan_order, transform_from(scan_kind), scan_grid,
                            KSUM_INDEXING_TABULATED, &raw));
      Text csv(raw);
      std::cout << csv.get();
    }
  } catch (const Failure& f) {
    std::cerr << "kepler: " << ksum_status_name(f.status) << " error: " << ksum_last_error() << '\n';
    return exit_code_for(f.status);
  }
  return kExitPass;
}
