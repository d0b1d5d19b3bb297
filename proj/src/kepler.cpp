#include "ksum/kepler.hpp"

#include <cmath>
#include <sstream>

#include "ksum/error.hpp"
#include "ksum/kapteyn.hpp"

namespace ksum {

namespace {

constexpr int kMaxNewton = 200;

void check_eps(const BigReal& eps) {
  if (eps.sign() < 0 || !(eps < BigReal(1, eps.digits()))) {
    fail(ErrorCode::Domain, "eccentricity must satisfy 0 <= eps < 1, got " + eps.format(12));
  }
}

void check_tol(const BigReal& tol, int digits) {
  if (!(tol >= ten_to_minus(digits - 10, digits))) {
    fail(ErrorCode::Range, "tolerance " + tol.format(6) + " is below what " + std::to_string(digits) +
                               " digits can certify");
  }
}

}  // namespace

BigReal solve_newton(const KeplerProblem& p, const BigReal& tol) {
  check_eps(p.eps);
  const int digits = std::max(p.eps.digits(), p.M.digits());
  check_tol(tol, digits);
  const BigReal eps = p.eps.with_digits(digits);
  const BigReal M = p.M.with_digits(digits);
  const BigReal one(1, digits);
  BigReal psi = M + eps * sin(M);
  for (int i = 0; i < kMaxNewton; ++i) {
    const BigReal f = psi - eps * sin(psi) - M;
    if (abs(f) < tol) return psi;
    psi -= f / (one - eps * cos(psi));
  }
  fail(ErrorCode::Numerical, "Newton did not converge in 200 iterations for eps = " + p.eps.format(10) +
                                 ", M = " + p.M.format(10));
}

BigReal SeriesSolution::at(int k) const {
  if (degenerate) return M;
  return psi.estimate(k).re();
}

SeriesSolution solve_series(const KeplerProblem& p, TransformKind kind, int k_max, Indexing indexing) {
  check_eps(p.eps);
  const int digits = std::max(p.eps.digits(), p.M.digits());
  SeriesSolution out;
  out.M = p.M.with_digits(digits);
  if (p.eps.is_zero() || abs(sin(out.M)) < ten_to_minus(digits - 5, digits)) {
    out.degenerate = true;
    out.psi.kind = kind;
    out.psi.requested_order = k_max;
    return out;
  }
  const TermSequence terms = kapteyn_terms({p.eps, cis(out.M), k_max + 2, KapteynConvention::Kepler});
  out.psi = transform(terms, kind, k_max, indexing);
  for (auto& e : out.psi.estimates) e = BigComplex(out.M + e.im(), BigReal(0, digits));
  for (auto& s : out.psi.partial_sums) s = BigComplex(out.M + s.im(), BigReal(0, digits));
  return out;
}

BigComplex solve_complex_newton(const ComplexKeplerProblem& p, const BigReal& tol) {
  check_eps(p.eps);
  if (p.z.is_zero()) fail(ErrorCode::Domain, "z must be nonzero");
  const int digits = std::max(p.eps.digits(), p.z.digits());
  check_tol(tol, digits);
  const BigReal eps = p.eps.with_digits(digits);
  const BigComplex target = log(p.z);
  const BigComplex one(BigReal(1, digits));
  BigComplex psi = target;
  std::vector<BigComplex> trace;
  for (int i = 0; i < kMaxNewton; ++i) {
    const BigComplex f = psi - sinh(psi) * eps - target;
    if (abs(f) < tol) return psi;
    trace.push_back(psi);
    psi -= f / (one - cosh(psi) * eps);
    if (!psi.is_finite()) break;
  }
  std::ostringstream os;
  os << "complex Newton did not converge; last iterates:";
  const size_t from = trace.size() > 5 ? trace.size() - 5 : 0;
  for (size_t i = from; i < trace.size(); ++i) {
    os << " (" << trace[i].re().format(10) << ", " << trace[i].im().format(10) << ")";
  }
  fail(ErrorCode::Numerical, os.str());
}

IdentityCheck complex_identity_check(const ComplexKeplerProblem& p, TransformKind kind, int k_max,
                                     Indexing indexing) {
  check_eps(p.eps);
  const int digits = std::max(p.eps.digits(), p.z.digits());
  IdentityCheck out;
  out.target = solve_complex_newton(p, ten_to_minus(digits - 10, digits)) - log(p.z);
  const BigReal zero(0, digits);
  if (p.eps.is_zero()) {
    for (int k = 1; k <= k_max; ++k) {
      out.first.emplace_back(zero, zero);
      out.second.emplace_back(zero, zero);
      out.errors.emplace_back(k, zero);
    }
    return out;
  }
  const BigComplex inv = BigComplex(BigReal(1, digits)) / p.z;
  const TransformTable a =
      transform(kapteyn_terms({p.eps, p.z, k_max + 2, KapteynConvention::Generalized}), kind, k_max, indexing);
  const TransformTable b =
      transform(kapteyn_terms({p.eps, inv, k_max + 2, KapteynConvention::Generalized}), kind, k_max, indexing);
  const BigReal scale = abs(out.target);
  const int n = std::min(a.max_order(), b.max_order());
  for (int k = 1; k <= n; ++k) {
    out.first.push_back(a.estimate(k));
    out.second.push_back(b.estimate(k));
    out.errors.emplace_back(k, abs(a.estimate(k) - b.estimate(k) - out.target) / scale);
  }
  return out;
}

std::vector<std::pair<int, BigReal>> series_errors(const KeplerProblem& p, TransformKind kind, int k_max,
                                                   Indexing indexing) {
  const int digits = std::max(p.eps.digits(), p.M.digits());
  const BigReal exact = solve_newton(p, ten_to_minus(digits - 10, digits));
  const SeriesSolution s = solve_series(p, kind, k_max, indexing);
  std::vector<std::pair<int, BigReal>> out;
  if (s.degenerate) return out;
  for (int k = 1; k <= s.psi.max_order(); ++k) out.emplace_back(k, abs(s.at(k) - exact) / abs(exact));
  return out;
}

RateFit fit_rate(const std::vector<std::pair<int, BigReal>>& errors, int digits) {
  const BigReal floor = ten_to_minus(digits - 20, std::max(digits, kMinDigits));
  std::vector<double> xs;
  std::vector<double> ys;
  RateFit fit;
  for (const auto& [k, e] : errors) {
    if (k <= 10 || !(e.sign() > 0) || !(e < BigReal(1, e.digits())) || !(e > floor)) continue;
    // log(-log e) from the BigReal so that errors far below double range still count
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(-log(e).to_double()));
    fit.window_min = fit.points == 0 ? k : std::min(fit.window_min, k);
    fit.window_max = std::max(fit.window_max, k);
    ++fit.points;
  }
  if (fit.points < 8) {
    fail(ErrorCode::Fit, "rate fit needs at least 8 usable points (k > 10, error in (0,1) above the precision "
                         "floor), got " + std::to_string(fit.points));
  }
  const double n = fit.points;
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0) fail(ErrorCode::Fit, "rate fit needs at least two distinct orders");
  fit.nu = sxy / sxx;
  const double intercept = my - fit.nu * mx;
  fit.alpha = std::exp(intercept);
  double ss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + fit.nu * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::vector<RateCell> rate_scan(const std::vector<BigReal>& M_list, const std::vector<BigReal>& eps_grid,
                                const std::vector<TransformKind>& kinds, int k_max, Indexing indexing) {
  std::vector<RateCell> cells;
  for (const auto& M : M_list) {
    for (const auto& eps : eps_grid) {
      for (TransformKind kind : kinds) {
        RateCell cell{eps, M, kind, std::nullopt, ""};
        try {
          const KeplerProblem p{eps, M};
          const auto errs = series_errors(p, kind, k_max, indexing);
          if (errs.empty()) {
            cell.note = "degenerate (all series terms vanish)";
          } else {
            cell.fit = fit_rate(errs, std::max(eps.digits(), M.digits()));
          }
        } catch (const Error& e) {
          cell.note = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::string rate_scan_csv(const std::vector<RateCell>& cells) {
  std::ostringstream os;
  os.precision(10);
  os << "eps,M,kind,alpha,nu,residual\n";
  for (const auto& c : cells) {
    os << c.eps.format(10) << ',' << c.M.format(10) << ',' << to_string(c.kind) << ',';
    if (c.fit) {
      os << c.fit->alpha << ',' << c.fit->nu << ',' << c.fit->residual;
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ksum
