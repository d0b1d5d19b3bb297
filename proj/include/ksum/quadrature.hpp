#pragma once

// Double-exponential quadrature at arbitrary precision, used as an independent check
// on closed forms and series.

#include <functional>

#include "ksum/arith.hpp"

namespace ksum {

using RealFunction = std::function<BigReal(const BigReal&)>;

/// tanh-sinh rule on [a, b]; refines the step until two levels agree to ~digits - 10.
BigReal integrate(const RealFunction& f, const BigReal& a, const BigReal& b, int digits);

/// exp-sinh rule on [a, infinity) for integrands decaying at infinity.
BigReal integrate_to_infinity(const RealFunction& f, const BigReal& a, int digits);

}  // namespace ksum
