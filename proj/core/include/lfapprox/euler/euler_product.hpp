#pragma once

#include <vector>

#include "lfapprox/euler/local_factor.hpp"

namespace lfapprox {

// g(s) prod_{p <= p_N} L_p(s) with the local factors prepared once.
class TruncatedEulerProduct {
 public:
  // N = 0 gives g(s) alone. Throws CutoffError when the table does not reach p_N.
  TruncatedEulerProduct(int N, const CoefficientTable& table, const EigenformSpec& spec, const PrecisionContext& ctx);

  int N() const { return static_cast<int>(factors_.size()); }
  const std::vector<LocalFactor>& factors() const { return factors_; }
  const EigenformSpec& spec() const { return spec_; }
  const PrecisionContext& ctx() const { return ctx_; }

  // Throws PoleError naming the offending factor (or the gamma factor).
  ComplexEstimate eval(const BigComplex& s) const;
  // prod L_p(s) without g.
  ComplexEstimate eval_finite_part(const BigComplex& s) const;

 private:
  std::vector<LocalFactor> factors_;
  EigenformSpec spec_;
  PrecisionContext ctx_;
};

ComplexEstimate truncated_euler_eval(const BigComplex& s, int N, const EigenformSpec& spec,
                                     const CoefficientTable& table, const PrecisionContext& ctx);

}  // namespace lfapprox
