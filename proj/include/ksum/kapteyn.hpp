#pragma once

// Kapteyn series sum_n c J_n(n eps) z^n / n, the polylogarithm, the measure
// Gamma(nu, -log t)/Gamma(nu), and the generating function
//   U(x, y) = sum_k x^(k+1/2) / Gamma(k+3/2) U_k(y),   x >= 0, y > 1.

#include <string>
#include <vector>

#include "ksum/arith.hpp"
#include "ksum/debye.hpp"
#include "ksum/seqxform.hpp"

namespace ksum {

enum class KapteynConvention {
  Kepler,       // 2 J_n(n eps) z^n / n
  Generalized,  // J_n(n eps) z^n / n
};

struct KapteynParams {
  BigReal eps;  // in [0, 1)
  BigComplex z;
  int n_terms = 2;
  KapteynConvention convention = KapteynConvention::Kepler;
};

/// Terms n = 1 .. n_terms stored at indices 0 .. n_terms-1.
TermSequence kapteyn_terms(const KapteynParams& p);

/// sum_{n>=1} z^n / n^nu for |z| < 1, truncated once the geometric tail bound is below
/// 10^(-digits). Throws Error(Domain) for |z| >= 1 or nu <= 0.
BigComplex polylog(const BigReal& nu, const BigComplex& z);

/// L_{nu0}(z), L_{nu0+1}(z), ..., L_{nu0+count-1}(z) sharing one pass over n.
std::vector<BigComplex> polylog_ladder(const BigReal& nu0, int count, const BigComplex& z);

/// Gamma(nu, -log t) / Gamma(nu) for t > 0 (equal to 1 for t >= 1). Throws Error(Domain)
/// for t <= 0 or nu <= 0.
BigReal stieltjes_measure(const BigReal& nu, const BigReal& t);

struct UQuery {
  BigReal x;  // >= 0
  BigReal y;  // > 1
  int k_terms = 2;
};

/// Terms k = 0 .. k_terms-1; the table must reach k_terms-1.
TermSequence u_terms(const UQuery& q, const DebyeTable& table);

TransformTable u_resummed(const UQuery& q, const DebyeTable& table, TransformKind kind, int k_max,
                          Indexing indexing = Indexing::ZeroBased);

struct ScanPoint {
  BigReal t;
  BigReal x;
  BigReal value;
  bool ok = true;
  std::string error;
};

/// Resummed U(-log t, 1/sqrt(1-eps^2)) at each grid point, transformation order `order`.
/// Failures are recorded per point and the scan continues. The table must reach order+1.
std::vector<ScanPoint> stieltjes_scan(const BigReal& eps, const std::vector<BigReal>& t_grid, int order,
                                      TransformKind kind, const DebyeTable& table,
                                      Indexing indexing = Indexing::ZeroBased);

/// CSV with columns t, x, u_value, order, eps.
std::string scan_to_csv(const std::vector<ScanPoint>& points, int order, const BigReal& eps, int significant = 0);

/// t_i = i / n for i = 1 .. n.
std::vector<BigReal> uniform_t_grid(int n, int digits);

/// sqrt(2 / (pi sqrt(1-eps^2))) sum_k U_k(1/sqrt(1-eps^2)) L_{k+3/2}(rho e^{iM}), the k-series
/// resummed at order k_max. Equals the Kepler-convention Kapteyn series at z = e^{iM}.
BigComplex s_via_polylog(const BigReal& eps, const BigReal& M, int k_max, TransformKind kind,
                         const DebyeTable& table, Indexing indexing = Indexing::ZeroBased);

/// The k-series terms used by s_via_polylog.
TermSequence polylog_route_terms(const BigReal& eps, const BigReal& M, int k_terms, const DebyeTable& table);

}  // namespace ksum
