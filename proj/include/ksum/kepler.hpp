#pragma once

// Kepler's equation M = psi - eps sin(psi): Newton reference, resummed Kapteyn series
// psi = M + Im sum_n 2 J_n(n eps) e^{inM} / n, the complexified form
// log z = Psi - eps sinh(Psi), and empirical convergence-rate fits exp(-alpha k^nu).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksum/arith.hpp"
#include "ksum/seqxform.hpp"

namespace ksum {

struct KeplerProblem {
  BigReal eps;  // in [0, 1)
  BigReal M;
};

struct ComplexKeplerProblem {
  BigReal eps;  // in [0, 1)
  BigComplex z;  // nonzero
};

/// Newton from psi_0 = M + eps sin M until |psi - eps sin psi - M| < tol. tol must be at
/// least 10^(-digits+10). Throws Error(Numerical) after 200 iterations.
BigReal solve_newton(const KeplerProblem& p, const BigReal& tol);

struct SeriesSolution {
  TransformTable psi;      // estimates are psi values (imaginary part zero)
  bool degenerate = false;  // M a multiple of pi or eps = 0: every term vanishes, psi = M
  BigReal M;

  /// psi at order k (M itself when degenerate).
  BigReal at(int k) const;
};

SeriesSolution solve_series(const KeplerProblem& p, TransformKind kind, int k_max,
                            Indexing indexing = Indexing::ZeroBased);

/// Newton from Psi_0 = log z (principal branch). On failure the error text carries the
/// last iterates.
BigComplex solve_complex_newton(const ComplexKeplerProblem& p, const BigReal& tol);

struct IdentityCheck {
  std::vector<BigComplex> first;   // resummed sum z^m/m J_m(m eps), order k at index k-1
  std::vector<BigComplex> second;  // resummed sum z^-m/m J_m(m eps)
  std::vector<std::pair<int, BigReal>> errors;  // (order, |first - second - (Psi - log z)| / |Psi - log z|)
  BigComplex target;                           // Psi - log z
};

IdentityCheck complex_identity_check(const ComplexKeplerProblem& p, TransformKind kind, int k_max,
                                     Indexing indexing = Indexing::ZeroBased);

/// Relative error of the series solution against Newton for orders 1..k_max.
std::vector<std::pair<int, BigReal>> series_errors(const KeplerProblem& p, TransformKind kind, int k_max,
                                                   Indexing indexing = Indexing::ZeroBased);

struct RateFit {
  double alpha = 0;
  double nu = 0;
  int window_min = 0;  // smallest order used
  int window_max = 0;  // largest order used
  int points = 0;
  double residual = 0;  // rms of the linearised fit
};

/// Least squares on log(-log e_k) = log alpha + nu log k over points with k > 10,
/// 0 < e_k < 1 and e_k > 10^(-digits+20). Throws Error(Fit) with fewer than 8 points.
RateFit fit_rate(const std::vector<std::pair<int, BigReal>>& errors, int digits);

struct RateCell {
  BigReal eps;
  BigReal M;
  TransformKind kind = TransformKind::LevinD;
  std::optional<RateFit> fit;  // empty when the cell could not be fitted
  std::string note;
};

/// One fit per (M, eps, kind), each from orders 1..k_max.
std::vector<RateCell> rate_scan(const std::vector<BigReal>& M_list, const std::vector<BigReal>& eps_grid,
                                const std::vector<TransformKind>& kinds, int k_max,
                                Indexing indexing = Indexing::ZeroBased);

/// Columns eps, M, kind, alpha, nu, residual (empty fields for missing cells).
std::string rate_scan_csv(const std::vector<RateCell>& cells);

}  // namespace ksum
