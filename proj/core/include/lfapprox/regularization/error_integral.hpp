#pragma once

#include <optional>

#include "lfapprox/approximation/series.hpp"
#include "lfapprox/euler/euler_product.hpp"

namespace lfapprox {

// Bound on the part of the error integral with |Im s| > X, from the gamma
// decay of |Lambda - Lambda_N^Euler| on Re s = sigma and
// |L|, |L_N| <= zeta(sigma - (k-1)/2)^2. Infinite when X is too small for
// the bound to apply.
BigReal error_integral_tail(const BigComplex& s0, const BigReal& sigma, const BigReal& X, const EigenformSpec& spec,
                            const PrecisionContext& ctx);

// Smallest integer X with error_integral_tail <= target / 4.
BigReal error_integral_extent(const BigComplex& s0, const BigReal& sigma, const EigenformSpec& spec,
                              const BigReal& target, const PrecisionContext& ctx);

struct ErrorIntegralResult {
  BigComplex value;
  BigReal abs_error;
  BigReal quad_extent;
  BigReal step;      // final trapezoid step
  int evaluations = 0;
};

// (1/2 pi i) int_{Re s = sigma} (Lambda - Lambda_N^Euler)(s) (1/(s - s0) + (-1)^P/(s - k + s0)) ds
// over |Im s| <= quad_extent, which equals Lambda(s0) - Lambda_N(s0) up to
// the reported error. The trapezoid step halves until successive levels
// agree to target / 2. Throws RegimeError unless
// sigma > max(Re s0, k - Re s0, (k+1)/2).
ErrorIntegralResult error_integral(const BigComplex& s0, const BigReal& sigma, int N,
                                   const std::optional<BigReal>& quad_extent, const CoefficientTable& table,
                                   const EigenformSpec& spec, const BigReal& target, const PrecisionContext& ctx);

}  // namespace lfapprox
