#include "ksum/kapteyn.hpp"

#include <cmath>
#include <sstream>

#include "ksum/bessel.hpp"
#include "ksum/error.hpp"

namespace ksum {

TermSequence kapteyn_terms(const KapteynParams& p) {
  const int digits = std::max(p.eps.digits(), p.z.digits());
  const BigReal one(1, digits);
  if (p.eps.sign() < 0 || !(p.eps < one)) fail(ErrorCode::Domain, "Kapteyn series needs 0 <= eps < 1");
  if (p.n_terms < 2) fail(ErrorCode::Range, "Kapteyn series needs at least two terms");
  std::vector<BigComplex> terms;
  terms.reserve(static_cast<size_t>(p.n_terms));
  const long factor = p.convention == KapteynConvention::Kepler ? 2 : 1;
  BigComplex zn(one);
  for (int n = 1; n <= p.n_terms; ++n) {
    zn *= p.z;
    const BigReal j = jn_reference(n, p.eps.with_digits(digits) * n);
    terms.push_back(zn * (j * factor / n));
  }
  std::ostringstream desc;
  desc << (p.convention == KapteynConvention::Kepler ? "2 J_n(n eps) z^n / n" : "J_n(n eps) z^n / n")
       << ", eps = " << p.eps.format(10) << ", z = " << p.z.re().format(10) << " + " << p.z.im().format(10) << "i";
  return TermSequence(std::move(terms), desc.str());
}

namespace {

void check_polylog_domain(const BigReal& nu, const BigComplex& z) {
  if (!(nu.sign() > 0)) fail(ErrorCode::Domain, "polylog order must be positive");
  if (!(abs(z) < BigReal(1, z.digits()))) fail(ErrorCode::Domain, "polylog needs |z| < 1 (no continuation)");
}

// smallest N with |z|^(N+1) / (1 - |z|) < 10^-digits
long polylog_terms(const BigComplex& z, int digits) {
  const double r = abs(z).to_double();
  if (r == 0.0) return 1;
  const double n = (-digits * std::log(10.0) + std::log1p(-r)) / std::log(r);
  return static_cast<long>(std::ceil(n)) + 1;
}

}  // namespace

std::vector<BigComplex> polylog_ladder(const BigReal& nu0, int count, const BigComplex& z) {
  check_polylog_domain(nu0, z);
  if (count < 1) fail(ErrorCode::Range, "polylog ladder needs at least one order");
  const int digits = std::max(nu0.digits(), z.digits());
  const BigReal zero(0, digits);
  std::vector<BigComplex> sums(static_cast<size_t>(count), BigComplex(zero, zero));
  if (z.is_zero()) return sums;
  const long n_max = polylog_terms(z, digits);
  BigComplex zn(BigReal(1, digits));
  for (long n = 1; n <= n_max; ++n) {
    zn *= z;
    const BigReal nn(n, digits);
    BigComplex term = zn / pow(nn, nu0.with_digits(digits));
    for (int k = 0; k < count; ++k) {
      sums[static_cast<size_t>(k)] += term;
      if (k + 1 < count) term /= nn;
    }
  }
  return sums;
}

BigComplex polylog(const BigReal& nu, const BigComplex& z) { return polylog_ladder(nu, 1, z).front(); }

BigReal stieltjes_measure(const BigReal& nu, const BigReal& t) {
  if (!(nu.sign() > 0)) fail(ErrorCode::Domain, "measure needs nu > 0");
  if (!(t.sign() > 0)) fail(ErrorCode::Domain, "measure is defined for t > 0, got " + t.format(12));
  const int digits = std::max(nu.digits(), t.digits());
  if (t >= BigReal(1, digits)) return BigReal(1, digits);
  const BigReal x = -log(t.with_digits(digits));
  BigReal upper = BigRealAccess::make(digits);
  mpfr_gamma_inc(BigRealAccess::raw(upper), nu.with_digits(digits).get(), x.get(), MPFR_RNDN);
  return upper / gamma(nu.with_digits(digits));
}

TermSequence u_terms(const UQuery& q, const DebyeTable& table) {
  const int digits = std::max(q.x.digits(), q.y.digits());
  if (q.x.sign() < 0) fail(ErrorCode::Domain, "U(x, y) needs x >= 0");
  if (!(q.y > BigReal(1, digits))) fail(ErrorCode::Domain, "U(x, y) needs y > 1");
  if (q.k_terms < 2) fail(ErrorCode::Range, "U series needs at least two terms");
  if (table.k_max() < q.k_terms - 1) {
    fail(ErrorCode::Range, "Debye table reaches k = " + std::to_string(table.k_max()) + ", need " +
                               std::to_string(q.k_terms - 1));
  }
  const BigReal x = q.x.with_digits(digits);
  const BigReal y = q.y.with_digits(digits);
  std::vector<BigComplex> terms;
  terms.reserve(static_cast<size_t>(q.k_terms));
  // x^(k+1/2) / Gamma(k+3/2), starting from sqrt(x) / (sqrt(pi)/2)
  BigReal c = sqrt(x) * 2 / sqrt(BigReal::pi(digits));
  for (int k = 0; k < q.k_terms; ++k) {
    terms.emplace_back(c * eval_poly(table, k, y));
    c *= x;
    c *= BigReal(2, digits) / (2 * k + 3);
  }
  return TermSequence(std::move(terms), "U(" + x.format(10) + ", " + y.format(10) + ")");
}

TransformTable u_resummed(const UQuery& q, const DebyeTable& table, TransformKind kind, int k_max,
                          Indexing indexing) {
  return transform(u_terms(q, table), kind, k_max, indexing);
}

std::vector<BigReal> uniform_t_grid(int n, int digits) {
  if (n < 1) fail(ErrorCode::Range, "grid needs at least one point");
  std::vector<BigReal> grid;
  for (int i = 1; i <= n; ++i) grid.push_back(BigReal(i, digits) / n);
  return grid;
}

std::vector<ScanPoint> stieltjes_scan(const BigReal& eps, const std::vector<BigReal>& t_grid, int order,
                                      TransformKind kind, const DebyeTable& table, Indexing indexing) {
  const int digits = eps.digits();
  const BigReal one(1, digits);
  if (!(eps.sign() > 0) || !(eps < one)) fail(ErrorCode::Domain, "scan needs 0 < eps < 1");
  const BigReal y = one / sqrt(one - eps * eps);
  std::vector<ScanPoint> out;
  out.reserve(t_grid.size());
  for (const auto& t : t_grid) {
    ScanPoint pt;
    pt.t = t;
    try {
      if (!(t.sign() > 0) || t > one) fail(ErrorCode::Domain, "grid point outside (0, 1]: " + t.format(12));
      pt.x = -log(t.with_digits(digits));
      if (pt.x.is_zero()) {
        pt.x = BigReal(0, digits);
        pt.value = BigReal(0, digits);
      } else {
        const TransformTable tt = u_resummed({pt.x, y, order + 2}, table, kind, order, indexing);
        pt.value = tt.estimate(order).re();
      }
    } catch (const Error& e) {
      pt.ok = false;
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::string scan_to_csv(const std::vector<ScanPoint>& points, int order, const BigReal& eps, int significant) {
  auto cell = [significant](const BigReal& v) { return significant > 0 ? v.format(significant) : v.serialize(); };
  std::ostringstream os;
  os << "t,x,u_value,order,eps\n";
  for (const auto& p : points) {
    os << cell(p.t) << ',' << (p.ok ? cell(p.x) : "") << ',' << (p.ok ? cell(p.value) : "") << ',' << order << ','
       << cell(eps) << '\n';
  }
  return os.str();
}

TermSequence polylog_route_terms(const BigReal& eps, const BigReal& M, int k_terms, const DebyeTable& table) {
  const int digits = std::max(eps.digits(), M.digits());
  const BigReal one(1, digits);
  if (!(eps.sign() > 0) || !(eps < one)) fail(ErrorCode::Domain, "polylog route needs 0 < eps < 1");
  if (table.k_max() < k_terms - 1) fail(ErrorCode::Range, "Debye table too short for the polylog route");
  const BigReal w = sqrt(one - eps.with_digits(digits) * eps.with_digits(digits));
  const BigReal y = one / w;
  const BigReal scale = sqrt(BigReal(2, digits) / (BigReal::pi(digits) * w));
  const BigComplex z = polar(rho(eps.with_digits(digits)), M.with_digits(digits));
  const std::vector<BigComplex> lis = polylog_ladder(BigReal(3, digits) / 2, k_terms, z);
  std::vector<BigComplex> terms;
  terms.reserve(static_cast<size_t>(k_terms));
  for (int k = 0; k < k_terms; ++k) terms.push_back(lis[static_cast<size_t>(k)] * (scale * eval_poly(table, k, y)));
  return TermSequence(std::move(terms), "polylog route, eps = " + eps.format(10) + ", M = " + M.format(10));
}

BigComplex s_via_polylog(const BigReal& eps, const BigReal& M, int k_max, TransformKind kind,
                         const DebyeTable& table, Indexing indexing) {
  return transform(polylog_route_terms(eps, M, k_max + 2, table), kind, k_max, indexing).estimate(k_max);
}

}  // namespace ksum
