#pragma once

#include "lfapprox/numerics/big_complex.hpp"
#include "lfapprox/numerics/big_real.hpp"

namespace lfapprox {

// A computed value together with an estimate of its absolute error.
// Composite computations add the error estimates of their parts.
template <class T>
struct Estimate {
  T value;
  BigReal abs_error;
};

using ComplexEstimate = Estimate<BigComplex>;
using RealEstimate = Estimate<BigReal>;

// Relative rounding error 2^-bits scaled to |value|, at low precision.
inline BigReal rounding_error(const BigComplex& value, int bits) {
  BigReal mag = abs(value).rounded(64);
  return ldexp(mag, -bits);
}

inline BigReal rounding_error(const BigReal& value, int bits) { return ldexp(abs(value).rounded(64), -bits); }

}  // namespace lfapprox
