#pragma once

// Double-exponential quadrature used as an independent reference for the
// special functions. Nothing here calls into the library's gamma code.

#include <functional>
#include <stdexcept>

#include "lfapprox/numerics/big_complex.hpp"

namespace lfapprox::testing {

using RealToComplex = std::function<BigComplex(const BigReal&)>;

struct QuadratureResult {
  BigComplex value;
  BigReal level_difference;  // |S_k - S_{k-1}| at the accepted level
  int evaluations = 0;
};

namespace detail {

// Convergence is judged relative to the running value; 1 stands in for zero.
inline BigReal relative_scale(const BigComplex& v) {
  BigReal m = abs(v);
  return m.is_zero() ? BigReal(1L, v.precision()) : m;
}

// Generic trapezoid on x in R with step halving. `map` turns x into the
// abscissa t and the Jacobian dt/dx. Each sweep stops once three
// consecutive weighted terms are negligible.
inline QuadratureResult double_exponential(const RealToComplex& f,
                                           const std::function<void(const BigReal&, BigReal&, BigReal&)>& map,
                                           mpfr_prec_t prec, int max_level) {
  BigReal tiny = BigReal::exp2i(-static_cast<long>(prec) - 8, prec);
  int evals = 0;
  auto sweep = [&](const BigReal& h, bool odd_only) {
    BigComplex acc(prec);
    // x = j*h; at refined levels only odd j are new.
    for (int dir = -1; dir <= 1; dir += 2) {
      long j = odd_only ? (dir > 0 ? 1 : -1) : (dir > 0 ? 0 : -1);
      int quiet = 0;
      while (true) {
        BigReal x = h * j;
        BigReal t(prec), w(prec);
        map(x, t, w);
        if (!w.is_finite() || !t.is_finite()) break;
        BigComplex term(prec);
        if (!w.is_zero()) {
          term = f(t) * w;
          ++evals;
        }
        acc += term;
        BigReal mag = abs(term);
        if (mag <= tiny * relative_scale(acc)) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
        j += odd_only ? 2 * dir : dir;
        if (std::labs(j) > (1L << 24)) throw std::runtime_error("quadrature sweep did not terminate");
      }
    }
    return acc;
  };

  BigReal h(1L, prec);
  BigComplex sum = sweep(h, false);
  BigComplex estimate = sum * h;
  for (int level = 1; level <= max_level; ++level) {
    h /= 2L;
    sum += sweep(h, true);
    BigComplex next = sum * h;
    BigReal diff = abs(next - estimate);
    estimate = next;
    if (level >= 3 && diff <= ldexp(relative_scale(next), -static_cast<long>(prec) / 2 - 4)) {
      // Double-exponential convergence: one more halving squares the error.
      h /= 2L;
      sum += sweep(h, true);
      BigComplex final_value = sum * h;
      BigReal final_diff = abs(final_value - estimate);
      return {final_value, final_diff, evals};
    }
  }
  throw std::runtime_error("double-exponential quadrature did not converge");
}

}  // namespace detail

// int_a^inf f(t) dt with t = a + exp(pi/2 sinh x).
inline QuadratureResult exp_sinh(const RealToComplex& f, const BigReal& a, mpfr_prec_t prec, int max_level = 14) {
  BigReal half_pi = BigReal::pi(prec) / 2L;
  BigReal aa = a.rounded(prec);
  auto map = [&](const BigReal& x, BigReal& t, BigReal& w) {
    BigReal sh, ch;
    sinh_cosh(x, sh, ch);
    BigReal e = exp(half_pi * sh);
    t = aa + e;
    w = half_pi * ch * e;
    if (t == aa) w = BigReal(0L, prec);
  };
  return detail::double_exponential(f, map, prec, max_level);
}

// int_a^b f(t) dt with t = (a+b)/2 + (b-a)/2 tanh(pi/2 sinh x).
inline QuadratureResult tanh_sinh(const RealToComplex& f, const BigReal& a, const BigReal& b, mpfr_prec_t prec,
                                  int max_level = 14) {
  BigReal half_pi = BigReal::pi(prec) / 2L;
  BigReal half = (b - a).rounded(prec) / 2L;
  auto map = [&](const BigReal& x, BigReal& t, BigReal& w) {
    BigReal sh, ch;
    sinh_cosh(x, sh, ch);
    BigReal u = half_pi * sh;
    BigReal eu = exp(u);
    BigReal emu = exp(-u);
    BigReal c = (eu + emu) / 2L;
    // Distance to the nearer endpoint, computed without cancellation.
    BigReal gap = half * (x.sign() >= 0 ? emu : eu) / c;
    t = x.sign() >= 0 ? b.rounded(prec) - gap : a.rounded(prec) + gap;
    w = half * half_pi * ch / (c * c);
    if (gap.is_zero()) w = BigReal(0L, prec);
  };
  return detail::double_exponential(f, map, prec, max_level);
}

// Gamma(s) = int_0^inf t^(s-1) e^-t dt for Re(s) > 0.
inline QuadratureResult gamma_by_quadrature(const BigComplex& s, mpfr_prec_t prec) {
  BigComplex sm1 = s.rounded(prec) - 1L;
  return exp_sinh([&](const BigReal& t) { return exp(sm1 * log(t) - t); }, BigReal(0L, prec), prec);
}

// Gamma(s, a) = int_a^inf t^(s-1) e^-t dt.
inline QuadratureResult upper_gamma_by_quadrature(const BigComplex& s, const BigReal& a, mpfr_prec_t prec) {
  BigComplex sm1 = s.rounded(prec) - 1L;
  return exp_sinh([&](const BigReal& t) { return exp(sm1 * log(t) - t); }, a, prec);
}

// gamma(s, a) = int_0^a t^(s-1) e^-t dt for Re(s) > 0.
inline QuadratureResult lower_gamma_by_quadrature(const BigComplex& s, const BigReal& a, mpfr_prec_t prec) {
  BigComplex sm1 = s.rounded(prec) - 1L;
  return tanh_sinh([&](const BigReal& t) { return exp(sm1 * log(t) - t); }, BigReal(0L, prec), a, prec);
}

}  // namespace lfapprox::testing
