#include "lfapprox/regularization/error_integral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lfapprox/errors.hpp"
#include "lfapprox/euler/local_factor.hpp"

namespace lfapprox {

namespace {

constexpr int kMaxLevels = 12;

BigReal infinite() { return BigReal(std::numeric_limits<double>::infinity(), 64); }

void check_regime(const BigComplex& s0, const BigReal& sigma, const EigenformSpec& spec) {
  const long k = spec.weight_k;
  BigReal need = max(max(s0.re(), BigReal(k, 64) - s0.re()), BigReal(static_cast<double>(k + 1) / 2.0, 64));
  if (!(sigma > need)) {
    throw RegimeError("error_integral: sigma = " + sigma.to_string(8) + " must exceed " + need.to_string(8) +
                      " = max(Re s0, k - Re s0, (k+1)/2)");
  }
}

}  // namespace

BigReal error_integral_tail(const BigComplex& s0, const BigReal& sigma, const BigReal& X, const EigenformSpec& spec,
                            const PrecisionContext& ctx) {
  check_regime(s0, sigma, spec);
  const double k = spec.weight_k;
  double x = sigma.to_double() - (k - 1.0) / 2.0;
  double zeta_bound = x / (x - 1.0);
  double B = 2.0 * zeta_bound * zeta_bound;
  double c = std::abs(s0.im().to_double());
  double Xd = X.to_double();
  double power = sigma.to_double() - 0.5;
  double rate = M_PI / 2.0 - power / Xd;
  if (Xd <= c + 1.0 || rate <= 0.1) return infinite();
  PrecisionContext low = ctx.with_bits(64);
  BigReal gX = abs(gamma_factor_eval(BigComplex(sigma.rounded(64), X.rounded(64)), spec, low).value);
  // Two half-lines, 1/(2 pi), |kernel| <= 2/(X - c), 10% slack on the gamma ratio.
  return gX * (2.2 * B / (M_PI * rate * (Xd - c)));
}

BigReal error_integral_extent(const BigComplex& s0, const BigReal& sigma, const EigenformSpec& spec,
                              const BigReal& target, const PrecisionContext& ctx) {
  BigReal goal = target.rounded(64) / 4L;
  long start = static_cast<long>(std::ceil(std::abs(s0.im().to_double()))) + 2;
  for (long X = start; X < start + 100000; ++X) {
    if (error_integral_tail(s0, sigma, BigReal(X, 64), spec, ctx) <= goal) return BigReal(X, 64);
  }
  throw SearchError("error_integral_extent: no extent reaches the target");
}

ErrorIntegralResult error_integral(const BigComplex& s0, const BigReal& sigma, int N,
                                   const std::optional<BigReal>& quad_extent, const CoefficientTable& table,
                                   const EigenformSpec& spec, const BigReal& target, const PrecisionContext& ctx) {
  check_regime(s0, sigma, spec);
  if (!(target.sign() > 0)) throw PreconditionError("error_integral: target must be positive");
  const mpfr_prec_t prec = ctx.working();
  const long k = spec.weight_k;
  BigReal X = quad_extent ? quad_extent->rounded(64) : error_integral_extent(s0, sigma, spec, target, ctx);
  if (!(X.sign() > 0)) throw PreconditionError("error_integral: quad_extent must be positive");

  SeriesEngine engine(table, spec, ctx);
  TruncatedEulerProduct euler(N, table, spec, ctx);
  BigComplex z0 = s0.rounded(prec);
  BigComplex z1 = BigReal(k, prec) - z0;
  BigReal sig = sigma.rounded(prec);
  BigReal two_pi = BigReal::pi(prec) * 2L;

  BigReal gap = sigma.rounded(64) - max(s0.re(), BigReal(k, 64) - s0.re()).rounded(64);
  BigReal kernel_max = BigReal(2L, 64) / gap;
  // Node errors enter as (1/2 pi) sum h |err| <= (X / pi) max |K| err.
  BigReal node_target = target.rounded(64) * BigReal::pi(64) / (X * kernel_max * 8L);

  int evaluations = 0;
  BigReal node_error_sum(0L, 64);  // sum over nodes of |err_j|
  auto integrand = [&](const BigReal& t) {
    BigComplex s(sig, t.rounded(prec));
    ComplexEstimate lam = engine.evaluate(s, Mode::full_mode(), node_target);
    ComplexEstimate eul = euler.eval(s);
    BigComplex kernel = BigReal(1L, prec) / (s - z0);
    BigComplex reflected = BigReal(1L, prec) / (s - z1);
    kernel = spec.sign() > 0 ? kernel + reflected : kernel - reflected;
    BigComplex value = (lam.value.rounded(prec) - eul.value.rounded(prec)) * kernel / two_pi;
    node_error_sum += (lam.abs_error + eul.abs_error) * abs(kernel).rounded(64) / BigReal(2.0 * M_PI, 64);
    ++evaluations;
    return value;
  };

  // Level 0: step 1 on [-X, X]; each level adds the odd multiples of the new step.
  BigReal h(1L, prec);
  long J = floor(X).to_long();
  BigComplex sum(prec);
  for (long j = -J; j <= J; ++j) sum += integrand(BigReal(j, prec));
  BigComplex estimate = sum * h;
  BigReal diff = infinite();
  for (int level = 1; level <= kMaxLevels; ++level) {
    h /= 2L;
    J = floor(X.rounded(prec) / h).to_long();
    for (long j = -J; j <= J; j += 1) {
      if ((j & 1L) == 0) continue;
      sum += integrand(h * j);
    }
    BigComplex next = sum * h;
    diff = abs(next - estimate).rounded(64);
    estimate = std::move(next);
    if (level >= 2 && diff <= target.rounded(64) / 2L) {
      BigReal err = diff + error_integral_tail(s0, sigma, X, spec, ctx) + node_error_sum * h.rounded(64);
      BigComplex value = estimate.rounded(ctx.output());
      err += rounding_error(value, ctx.bits());
      return {std::move(value), std::move(err), X, h.rounded(64), evaluations};
    }
  }
  throw ConvergenceError("error_integral: trapezoid levels still differ by " + diff.to_string(4) + " at step " +
                         h.to_string(4));
}

}  // namespace lfapprox
