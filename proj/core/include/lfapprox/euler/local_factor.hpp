#pragma once

#include <utility>

#include "lfapprox/eigenform/coefficients.hpp"
#include "lfapprox/eigenform/form.hpp"
#include "lfapprox/numerics/big_complex.hpp"
#include "lfapprox/numerics/estimate.hpp"
#include "lfapprox/numerics/precision.hpp"

namespace lfapprox {

// Roots of X^2 - a_p X + chi(p) p^(k-1), larger magnitude first, the second
// recovered from the product. When chi(p) = 0 the pair is (a_p, 0).
// Throws ToleranceError when chi(p) != 0 and |alpha_i| misses p^((k-1)/2) by
// more than 2^(-bits/2) relative.
std::pair<BigComplex, BigComplex> local_roots(long p, const BigReal& a_p, const BigComplex& chi_p, int k,
                                              const PrecisionContext& ctx);

// L_p(s) = (1 - a_p p^-s + chi(p) p^(k-1) p^-2s)^-1 with its reciprocal roots.
struct LocalFactor {
  long p = 0;
  BigReal a_p;
  BigComplex chi_p;
  BigComplex alpha1;
  BigComplex alpha2;
  int weight_k = 0;
  PrecisionContext ctx;

  // chi(p) = 0: at most one nonzero root.
  bool degenerate() const { return chi_p.is_zero(); }
};

LocalFactor make_local_factor(long p, const CoefficientTable& table, const EigenformSpec& spec,
                              const PrecisionContext& ctx);

// Throws PoleError within 2^(-bits/2) of a pole of L_p.
ComplexEstimate local_factor_eval(const LocalFactor& f, const BigComplex& s, const PrecisionContext& ctx);

// ((1 - alpha1 p^-s)(1 - alpha2 p^-s))^-1, the factored form.
BigComplex local_factor_eval_factored(const LocalFactor& f, const BigComplex& s, mpfr_prec_t prec);

// g(s) = C^(s/2) (2 pi)^-s Gamma(s). Throws PoleError near s = 0, -1, ...
ComplexEstimate gamma_factor_eval(const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx);

}  // namespace lfapprox
