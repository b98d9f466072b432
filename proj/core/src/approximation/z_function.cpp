#include "lfapprox/approximation/z_function.hpp"

#include <string>

#include "lfapprox/errors.hpp"
#include "lfapprox/euler/local_factor.hpp"

namespace lfapprox {

ZFunction::ZFunction(const CoefficientTable& table, const EigenformSpec& spec, const ApproxConfig& cfg,
                     const PrecisionContext& ctx)
    : engine_(table, spec, ctx), cfg_(cfg) {
  cfg_.validate();
}

RealEstimate ZFunction::operator()(const BigReal& t, const Mode& mode) const {
  return evaluate(t, std::vector<Mode>{mode}).front();
}

std::vector<RealEstimate> ZFunction::evaluate(const BigReal& t, const std::vector<Mode>& modes) const {
  const PrecisionContext& ctx = engine_.ctx();
  const EigenformSpec& spec = engine_.spec();
  const mpfr_prec_t prec = ctx.working();
  BigComplex s(BigReal(static_cast<long>(spec.weight_k), prec) / 2L, t.rounded(prec));

  ComplexEstimate g = gamma_factor_eval(s, spec, PrecisionContext(static_cast<int>(prec), ctx.guard_bits()));
  BigReal g_abs = abs(g.value);
  BigReal g_rel = g.abs_error / g_abs.rounded(64);
  BigReal target = cfg_.target_abs_error.rounded(64);

  std::vector<ComplexEstimate> lambdas = engine_.evaluate(s, modes, target * g_abs, cfg_.n_cutoff_override);
  std::vector<RealEstimate> out;
  out.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    BigComplex q = lambdas[i].value / g_abs;
    // For P = 1 the critical-line values are purely imaginary.
    if (spec.sign_P == 1) q = BigComplex(q.im(), -q.re());
    BigReal err = lambdas[i].abs_error / g_abs.rounded(64) + abs(q.re()).rounded(64) * g_rel;
    BigReal residue = abs(q.im()).rounded(64);
    if (residue > target || err > target) {
      throw PrecisionError("Z(" + t.to_string(17) + ") [" + modes[i].label() + "]: imaginary residue " +
                           residue.to_string(4) + ", error estimate " + err.to_string(4) + " exceed the target " +
                           target.to_string(4) + " at " + std::to_string(ctx.bits()) +
                           " bits; rerun with more bits");
    }
    BigReal value = q.re().rounded(ctx.output());
    err += rounding_error(value, ctx.bits());
    out.push_back({std::move(value), std::move(err)});
  }
  return out;
}

RealEstimate z_function(const BigReal& t, const Mode& mode, const CoefficientTable& table, const EigenformSpec& spec,
                        const ApproxConfig& cfg, const PrecisionContext& ctx) {
  return ZFunction(table, spec, cfg, ctx)(t, mode);
}

std::vector<ComplexEstimate> derivatives(const SeriesEngine& engine, const BigComplex& s0, int max_order,
                                         const Mode& mode, const BigReal& target) {
  const PrecisionContext& ctx = engine.ctx();
  AnalyticFunction f = [&](const BigComplex& s) { return engine.evaluate(s, mode, target); };
  BigReal radius(0.5, ctx.working());
  return cauchy_derivatives(f, s0, max_order, radius, 32 * (max_order + 1), ctx);
}

ComplexEstimate derivative(const SeriesEngine& engine, const BigComplex& s0, int order, const Mode& mode,
                           const BigReal& target) {
  if (order < 1) throw PreconditionError("derivative order must be >= 1");
  return derivatives(engine, s0, order, mode, target).back();
}

ComplexEstimate derivative(const BigComplex& s0, int order, const Mode& mode, const CoefficientTable& table,
                           const EigenformSpec& spec, const ApproxConfig& cfg, const PrecisionContext& ctx) {
  cfg.validate();
  SeriesEngine engine(table, spec, ctx);
  return derivative(engine, s0, order, mode, cfg.target_abs_error);
}

}  // namespace lfapprox
