#include "ksum/quadrature.hpp"

#include <cmath>

#include "ksum/error.hpp"

namespace ksum {

namespace {

constexpr int kMaxLevel = 12;

// sum over t = (offset + j * stride) * h, j in Z, of weight(t) f(x(t)), stopping in each
// direction once terms fall below the target for a few steps in a row
template <class Node>
BigReal sweep(const Node& node, const BigReal& h, int start, int stride, const BigReal& tiny, double t_limit) {
  BigReal sum(0, h.digits());
  for (int dir : {+1, -1}) {
    int quiet = 0;
    for (int j = (dir > 0 ? start : (start == 0 ? -stride : -start)); ; j += dir * stride) {
      const BigReal t = h * static_cast<long>(j);
      if (std::abs(t.to_double()) > t_limit) break;
      BigReal term;
      if (!node(t, term)) break;
      sum += term;
      quiet = abs(term) <= tiny ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  return sum;
}

template <class Node>
BigReal refine(const Node& node, int digits, double t_limit) {
  const int work = digits + 10;
  const BigReal tiny = ten_to_minus(work, work);
  BigReal h(1, work);
  BigReal sum = sweep(node, h, 0, 1, tiny, t_limit);
  BigReal estimate = sum * h;
  for (int level = 1; level <= kMaxLevel; ++level) {
    h /= 2;
    sum += sweep(node, h, 1, 2, tiny, t_limit);
    BigReal next = sum * h;
    const BigReal change = abs(next - estimate);
    estimate = std::move(next);
    if (level >= 3 && change <= abs(estimate) * ten_to_minus(digits - 5, work)) return estimate.with_digits(digits);
  }
  fail(ErrorCode::Numerical, "quadrature did not converge");
}

}  // namespace

BigReal integrate(const RealFunction& f, const BigReal& a, const BigReal& b, int digits) {
  const int work = digits + 10;
  const BigReal mid = (a.with_digits(work) + b.with_digits(work)) / 2;
  const BigReal half = (b.with_digits(work) - a.with_digits(work)) / 2;
  const BigReal half_pi = BigReal::pi(work) / 2;
  const BigReal one(1, work);
  auto node = [&](const BigReal& t, BigReal& out) {
    const BigReal u = half_pi * sinh(t);
    const BigReal e = exp(u * 2);
    const BigReal c = cosh(u);
    // distance to the nearer endpoint as a fraction of half, computed without cancellation
    const BigReal gap = t.sign() >= 0 ? (one * 2) / (e + one) : (e * 2) / (e + one);
    if (gap.is_zero()) return false;
    const BigReal x = t.sign() >= 0 ? b.with_digits(work) - half * gap : a.with_digits(work) + half * gap;
    const BigReal w = half * half_pi * cosh(t) / (c * c);
    out = w * f(x);
    return true;
  };
  const double t_limit = std::asinh(2.0 / M_PI * std::log(10.0) * work) + 1;
  return refine(node, digits, t_limit);
}

BigReal integrate_to_infinity(const RealFunction& f, const BigReal& a, int digits) {
  const int work = digits + 10;
  const BigReal half_pi = BigReal::pi(work) / 2;
  const BigReal base = a.with_digits(work);
  auto node = [&](const BigReal& t, BigReal& out) {
    const BigReal e = exp(half_pi * sinh(t));
    if (e.is_zero() || !e.is_finite()) return false;
    out = half_pi * cosh(t) * e * f(base + e);
    return out.is_finite();
  };
  const double t_limit = std::asinh(2.0 / M_PI * std::log(10.0) * work) + 2;
  return refine(node, digits, t_limit);
}

}  // namespace ksum
