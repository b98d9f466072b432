#pragma once

#include <functional>
#include <vector>

#include "lfapprox/numerics/big_complex.hpp"
#include "lfapprox/numerics/estimate.hpp"
#include "lfapprox/numerics/precision.hpp"

namespace lfapprox {

// Gamma function for complex arguments.
//
// Stirling's series on an argument shifted to Re(s) >= R(prec) by the
// recurrence, with the remainder bounded by the first omitted term times
// sec(arg/2)^(2M+2); reflection formula for Re(s) < 1/2.
//
// Throws PoleError when s lies within 2^(-bits/2) of a nonpositive integer.
ComplexEstimate gamma(const BigComplex& s, const PrecisionContext& ctx);

// Upper incomplete gamma function Gamma(s, a) = int_a^inf t^(s-1) e^(-t) dt
// for complex s and real a > 0.
//
// Regimes: Legendre continued fraction (modified Lentz) when a >= |s| + 1 or
// when s sits on a pole of Gamma; otherwise Gamma(s) minus the lower
// incomplete series, with the working precision raised to absorb the
// cancellation. Throws ConvergenceError if the iteration budget (which scales
// with precision) is exhausted.
ComplexEstimate upper_incomplete_gamma(const BigComplex& s, const BigReal& a, const PrecisionContext& ctx);

// Smallest m >= 0 with t^(sigma-1) < e^(t/2) for every t > m. Above this
// threshold |Gamma(sigma + i t, a)| <= 2 e^(-a/2).
double decay_threshold(double sigma);

// Distance from s to the nearest nonpositive integer.
BigReal distance_to_gamma_pole(const BigComplex& s);

// f^(order)(s0) from the trapezoid rule on the circle |s - s0| = radius.
// `points` are doubled (re-using earlier samples) until two successive
// results agree to 2^-bits relative to the sampling noise floor.
using AnalyticFunction = std::function<ComplexEstimate(const BigComplex&)>;

ComplexEstimate cauchy_derivative(const AnalyticFunction& f, const BigComplex& s0, int order, const BigReal& radius,
                                  int points, const PrecisionContext& ctx);

// All derivatives of order 0..max_order from one set of circle samples.
std::vector<ComplexEstimate> cauchy_derivatives(const AnalyticFunction& f, const BigComplex& s0, int max_order,
                                                const BigReal& radius, int points, const PrecisionContext& ctx);

// Wraps a plain function as an AnalyticFunction whose error is the rounding
// error at the given bits.
AnalyticFunction exact_function(std::function<BigComplex(const BigComplex&)> f, int bits);

namespace detail {

// Internal entry points working at an explicit precision with no output
// rounding. `pole_tolerance_bits` controls the pole rejection radius
// 2^-pole_tolerance_bits.
BigComplex gamma_at(const BigComplex& s, mpfr_prec_t prec, long pole_tolerance_bits);

// Gamma(s, a) at precision prec. When gamma_s is non-null it must hold
// Gamma(s) at >= prec bits and is used by the series regime.
ComplexEstimate upper_incomplete_gamma_at(const BigComplex& s, const BigReal& a, mpfr_prec_t prec,
                                          long pole_tolerance_bits, const BigComplex* gamma_s = nullptr);

// True when Gamma(s, a) would be evaluated through Gamma(s) - gamma(s, a).
bool incomplete_gamma_uses_series(const BigComplex& s, const BigReal& a, long pole_tolerance_bits);

}  // namespace detail

}  // namespace lfapprox
