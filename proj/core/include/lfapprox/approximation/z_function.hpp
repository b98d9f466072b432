#pragma once

#include <vector>

#include "lfapprox/approximation/series.hpp"
#include "lfapprox/numerics/gamma.hpp"

namespace lfapprox {

// Z(t) = (-i)^P Lambda(k/2 + it) / |g(k/2 + it)|, real for real t.
//
// The configured target is the absolute error allowed on Z; the series for
// Lambda is certified to target |g(k/2 + it)|. Throws PrecisionError when
// the imaginary residue or the propagated error exceeds the target, which
// means the working precision is too low for this t.
class ZFunction {
 public:
  ZFunction(const CoefficientTable& table, const EigenformSpec& spec, const ApproxConfig& cfg,
            const PrecisionContext& ctx);

  RealEstimate operator()(const BigReal& t, const Mode& mode) const;
  std::vector<RealEstimate> evaluate(const BigReal& t, const std::vector<Mode>& modes) const;

  const SeriesEngine& engine() const { return engine_; }
  const ApproxConfig& config() const { return cfg_; }
  const PrecisionContext& ctx() const { return engine_.ctx(); }

 private:
  SeriesEngine engine_;
  ApproxConfig cfg_;
};

RealEstimate z_function(const BigReal& t, const Mode& mode, const CoefficientTable& table, const EigenformSpec& spec,
                        const ApproxConfig& cfg, const PrecisionContext& ctx);

// d^order/ds^order of Lambda or Lambda_N at s0 from Cauchy's formula on the
// circle |s - s0| = 1/2, starting with 32 (order + 1) points.
ComplexEstimate derivative(const BigComplex& s0, int order, const Mode& mode, const CoefficientTable& table,
                           const EigenformSpec& spec, const ApproxConfig& cfg, const PrecisionContext& ctx);

// As above with a caller-owned engine.
ComplexEstimate derivative(const SeriesEngine& engine, const BigComplex& s0, int order, const Mode& mode,
                           const BigReal& target);

// All derivatives of orders 0..max_order from one set of circle samples.
std::vector<ComplexEstimate> derivatives(const SeriesEngine& engine, const BigComplex& s0, int max_order,
                                         const Mode& mode, const BigReal& target);

}  // namespace lfapprox
