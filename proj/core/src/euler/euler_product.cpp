#include "lfapprox/euler/euler_product.hpp"

#include <string>

#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"

namespace lfapprox {

TruncatedEulerProduct::TruncatedEulerProduct(int N, const CoefficientTable& table, const EigenformSpec& spec,
                                             const PrecisionContext& ctx)
    : spec_(spec), ctx_(ctx) {
  if (N < 0) throw PreconditionError("truncated Euler product needs N >= 0");
  if (N == 0) return;
  auto primes = primes_up_to(nth_prime(N));
  factors_.reserve(primes.size());
  for (long p : primes) factors_.push_back(make_local_factor(p, table, spec, ctx));
}

ComplexEstimate TruncatedEulerProduct::eval_finite_part(const BigComplex& s) const {
  // Each factor is evaluated at working precision; the guard bits absorb
  // the accumulated rounding.
  PrecisionContext inner(static_cast<int>(ctx_.working()), ctx_.guard_bits());
  BigComplex product(BigReal(1L, ctx_.working()));
  BigReal rel_err(0L, 64);
  for (const auto& f : factors_) {
    ComplexEstimate lp = local_factor_eval(f, s, inner);
    product *= lp.value;
    rel_err += lp.abs_error / abs(lp.value).rounded(64);
  }
  BigComplex out = product.rounded(ctx_.output());
  BigReal err = abs(out).rounded(64) * rel_err + rounding_error(out, ctx_.bits());
  return {std::move(out), std::move(err)};
}

ComplexEstimate TruncatedEulerProduct::eval(const BigComplex& s) const {
  PrecisionContext inner(static_cast<int>(ctx_.working()), ctx_.guard_bits());
  ComplexEstimate g = gamma_factor_eval(s, spec_, inner);
  BigComplex product = g.value;
  BigReal rel_err = g.abs_error / abs(g.value).rounded(64);
  for (const auto& f : factors_) {
    ComplexEstimate lp = local_factor_eval(f, s, inner);
    product *= lp.value;
    rel_err += lp.abs_error / abs(lp.value).rounded(64);
  }
  BigComplex out = product.rounded(ctx_.output());
  BigReal err = abs(out).rounded(64) * rel_err + rounding_error(out, ctx_.bits());
  return {std::move(out), std::move(err)};
}

ComplexEstimate truncated_euler_eval(const BigComplex& s, int N, const EigenformSpec& spec,
                                     const CoefficientTable& table, const PrecisionContext& ctx) {
  return TruncatedEulerProduct(N, table, spec, ctx).eval(s);
}

}  // namespace lfapprox
