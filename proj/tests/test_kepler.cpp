#include <doctest.h>

#include <cmath>

#include "ksum/error.hpp"
#include "ksum/goldens.hpp"
#include "ksum/kapteyn.hpp"
#include "ksum/kepler.hpp"

using namespace ksum;

namespace {

BigReal tol(int digits) { return ten_to_minus(digits - 10, digits); }

// real root of log z = psi - eps sinh(psi) by bisection, for 0 < z < 1 and small eps
BigReal hyperbolic_bisection(const BigReal& eps, const BigReal& z) {
  const BigReal target = log(z);
  BigReal lo = target * 2 - BigReal(1, z.digits());
  BigReal hi = target;
  auto g = [&](const BigReal& psi) { return psi - eps * sinh(psi) - target; };
  REQUIRE(g(lo).sign() < 0);
  REQUIRE(g(hi).sign() >= 0);
  for (int i = 0; i < 400; ++i) {
    const BigReal mid = (lo + hi) / 2;
    (g(mid).sign() < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("Newton reference") {
  const Precision p(250);
  CHECK(solve_newton({p.real(0), p.ratio(3, 7)}, tol(250)) == p.ratio(3, 7));
  const BigReal psi = solve_newton({p.ratio(9, 10), p.pi() / 4}, tol(250));
  CHECK(psi.format(20) == "1.6800337357880455291");
  CHECK(abs(psi - p.ratio(9, 10) * sin(psi) - p.pi() / 4) < p.real("1e-230"));
  const BigReal hard = solve_newton({p.ratio(99, 100), p.pi() / 2}, tol(250));
  CHECK(abs(hard - p.ratio(99, 100) * sin(hard) - p.pi() / 2) < tol(250));
  CHECK_THROWS_AS(solve_newton({p.real(1), p.real(1)}, tol(250)), Error);
  CHECK_THROWS_AS(solve_newton({p.ratio(1, 2), p.real(1)}, p.epsilon()), Error);
}

TEST_CASE("reflection symmetry") {
  const Precision p(120);
  const BigReal two_pi = p.pi() * 2;
  for (int e : {2, 6, 9}) {
    const BigReal eps = p.ratio(e, 10);
    const BigReal M = p.ratio(7, 5);
    const BigReal a = solve_newton({eps, M}, tol(120));
    const BigReal b = solve_newton({eps, two_pi - M}, tol(120));
    CHECK(abs(b - (two_pi - a)) < p.epsilon(15));
    const SeriesSolution sa = solve_series({eps, M}, TransformKind::WenigerDelta, 30);
    const SeriesSolution sb = solve_series({eps, two_pi - M}, TransformKind::WenigerDelta, 30);
    for (int k = 1; k <= 30; ++k) CHECK(abs(sb.at(k) - (two_pi - sa.at(k))) < p.epsilon(20));
  }
}

TEST_CASE("degenerate series") {
  const Precision p(80);
  const SeriesSolution a = solve_series({p.real(0), p.real(1)}, TransformKind::LevinD, 10);
  CHECK(a.degenerate);
  CHECK(a.at(7) == p.real(1));
  const SeriesSolution b = solve_series({p.ratio(1, 2), p.pi()}, TransformKind::LevinD, 10);
  CHECK(b.degenerate);
  CHECK(b.at(3) == p.pi());
  CHECK(solve_series({p.ratio(1, 2), p.real(0)}, TransformKind::WenigerDelta, 10).degenerate);
}

TEST_CASE("series solution matches Newton at order 30") {
  const Precision p(250);
  const KeplerProblem prob{p.ratio(9, 10), p.pi() / 4};
  const BigReal exact = solve_newton(prob, tol(250));
  const SeriesSolution s = solve_series(prob, TransformKind::LevinD, 30);
  CHECK(abs(s.at(30) - exact) / exact < p.real("1e-10"));
}

TEST_CASE("series and Newton agree on the grid at order 40") {
  const Precision p(250);
  for (int e : {20, 60, 90, 99}) {
    for (int m : {1, 2, 3}) {
      const KeplerProblem prob{p.ratio(e, 100), p.pi() * m / 4};
      const BigReal exact = solve_newton(prob, tol(250));
      for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
        const SeriesSolution s = solve_series(prob, kind, 40);
        CHECK_MESSAGE(abs(s.at(40) - exact) / exact < p.real("1e-10"),
                      to_string(kind) << " eps=" << e << "/100 M=" << m << "pi/4");
      }
    }
  }
}

TEST_CASE("relative error decays with the order") {
  const Precision p(250);
  for (int e : {20, 60, 90, 99}) {
    for (int m : {1, 2, 3}) {
      const KeplerProblem prob{p.ratio(e, 100), p.pi() * m / 4};
      for (TransformKind kind : {TransformKind::LevinD, TransformKind::WenigerDelta}) {
        const auto errs = series_errors(prob, kind, 60);
        const BigReal floor = ten_to_minus(230, 250);
        // net trend over windows of five orders beyond order 10, until the precision floor
        for (int k = 11; k + 5 <= 60; k += 5) {
          const BigReal& now = errs[static_cast<size_t>(k - 1)].second;
          const BigReal& later = errs[static_cast<size_t>(k + 4)].second;
          if (now < floor) break;
          CHECK_MESSAGE(later <= now, to_string(kind) << " eps=" << e << "/100 M=" << m << "pi/4 k=" << k);
        }
      }
    }
  }
}

TEST_CASE("complex Newton") {
  const Precision p(120);
  const BigComplex z(p.ratio(3, 10), p.ratio(4, 10));
  const BigComplex psi0 = solve_complex_newton({p.real(0), z}, tol(120));
  CHECK(abs(psi0 - log(z)) < p.epsilon(10));
  for (int e : {1, 5, 10}) {
    const BigReal eps = p.ratio(e, 100);
    const BigReal x = p.ratio(2, 5);
    const BigComplex psi = solve_complex_newton({eps, BigComplex(x)}, tol(120));
    CHECK(abs(psi.im()) < p.epsilon(10));
    CHECK(abs(psi.re() - hyperbolic_bisection(eps, x)) < p.real("1e-100"));
  }
  const ComplexKeplerProblem far{p.ratio(9, 10), polar(p.real(10), p.pi() / 3)};
  const BigComplex psi = solve_complex_newton(far, tol(120));
  CHECK(abs(psi - sinh(psi) * far.eps - log(far.z)) < tol(120));
  CHECK(psi.re().format(12) == "1.28130119710");
  CHECK(psi.im().format(12) == "2.32243960194");
}

TEST_CASE("identity off the unit circle") {
  const Precision p(250);
  const ComplexKeplerProblem prob{p.ratio(9, 10), polar(p.real(10), p.pi() / 3)};
  const IdentityCheck delta = complex_identity_check(prob, TransformKind::WenigerDelta, 30);
  CHECK(golden_match("-1.001838", delta.first[29].re()));
  CHECK(golden_match("1.238765", delta.first[29].im()));
  const IdentityCheck d = complex_identity_check(prob, TransformKind::LevinD, 30, Indexing::OneBased);
  CHECK(delta.errors[29].second <= d.errors[29].second);
  CHECK(delta.errors[29].second < p.real("1e-8"));
  const IdentityCheck zero = complex_identity_check({p.real(0), prob.z}, TransformKind::LevinD, 5);
  for (const auto& [k, e] : zero.errors) CHECK(e.is_zero());
}

TEST_CASE("rate fit") {
  const int d = 250;
  std::vector<std::pair<int, BigReal>> synthetic;
  for (int k = 1; k <= 60; ++k) synthetic.emplace_back(k, exp(BigReal(-2, d) * pow(BigReal(k, d), BigReal::parse("0.75", d))));
  const RateFit f = fit_rate(synthetic, d);
  CHECK(std::abs(f.nu - 0.75) < 1e-6);
  CHECK(std::abs(f.alpha - 2.0) < 1e-5);
  CHECK(f.window_min == 11);
  CHECK(f.window_max == 60);
  CHECK(f.points == 50);
  std::vector<std::pair<int, BigReal>> few(synthetic.begin(), synthetic.begin() + 17);
  CHECK_THROWS_AS(fit_rate(few, d), Error);
}

TEST_CASE("rate scan flags degenerate cells") {
  const Precision p(100);
  const auto cells = rate_scan({p.pi() / 2}, {p.real(0), p.ratio(1, 2)}, {TransformKind::WenigerDelta}, 40);
  REQUIRE(cells.size() == 2);
  CHECK_FALSE(cells[0].fit.has_value());
  CHECK_FALSE(cells[0].note.empty());
  CHECK(cells[1].fit.has_value());
  const std::string csv = rate_scan_csv(cells);
  CHECK(csv.rfind("eps,M,kind,alpha,nu,residual\n", 0) == 0);
}
