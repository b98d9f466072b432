#include "lfapprox/euler/local_factor.hpp"

#include <string>

#include "lfapprox/errors.hpp"
#include "lfapprox/numerics/gamma.hpp"

namespace lfapprox {

std::pair<BigComplex, BigComplex> local_roots(long p, const BigReal& a_p, const BigComplex& chi_p, int k,
                                              const PrecisionContext& ctx) {
  const mpfr_prec_t prec = ctx.working();
  BigReal a = a_p.rounded(prec);
  BigComplex chi = chi_p.rounded(prec);
  if (chi.is_zero()) return {BigComplex(a), BigComplex(prec)};

  BigReal pk = pow(BigReal(p, prec), BigReal(static_cast<long>(k - 1), prec));
  BigComplex c = chi * pk;
  BigComplex disc = BigComplex(a * a) - c * 4L;
  BigComplex root = sqrt(disc);
  BigComplex plus = BigComplex(a) + root;
  BigComplex minus = BigComplex(a) - root;
  BigComplex q = (abs(plus) >= abs(minus) ? plus : minus) / 2L;
  BigComplex alpha1 = q;
  BigComplex alpha2 = c / q;

  // Both roots have modulus p^((k-1)/2) for a genuine eigenform.
  BigReal target = sqrt(pk);
  const double tol = -static_cast<double>(ctx.bits()) / 2.0;
  for (const BigComplex* alpha : {&alpha1, &alpha2}) {
    BigReal dev = abs(abs(*alpha) - target) / target;
    if (dev.log2_abs() > tol) {
      throw ToleranceError("local root at p=" + std::to_string(p) + " has modulus " + abs(*alpha).to_string(20) +
                           ", expected " + target.to_string(20) + " (bad coefficient data?)");
    }
  }
  return {std::move(alpha1), std::move(alpha2)};
}

LocalFactor make_local_factor(long p, const CoefficientTable& table, const EigenformSpec& spec,
                              const PrecisionContext& ctx) {
  if (static_cast<std::size_t>(p) > table.n_max()) {
    throw CutoffError("coefficient table (n_max=" + std::to_string(table.n_max()) + ") does not contain a_" +
                      std::to_string(p));
  }
  LocalFactor f;
  f.p = p;
  f.a_p = table[static_cast<std::size_t>(p)].to_real(ctx.working());
  f.chi_p = spec.chi.at(p, ctx.working());
  f.weight_k = spec.weight_k;
  f.ctx = ctx;
  auto roots = local_roots(p, f.a_p, f.chi_p, spec.weight_k, ctx);
  f.alpha1 = std::move(roots.first);
  f.alpha2 = std::move(roots.second);
  return f;
}

ComplexEstimate local_factor_eval(const LocalFactor& f, const BigComplex& s, const PrecisionContext& ctx) {
  const mpfr_prec_t prec = ctx.working();
  BigReal log_p = log(BigReal(f.p, prec));
  BigComplex x = exp(-(s.rounded(prec) * log_p));

  BigReal pole_tol = BigReal::exp2i(-ctx.bits() / 2, 64);
  for (const BigComplex* alpha : {&f.alpha1, &f.alpha2}) {
    if (alpha->is_zero()) continue;
    BigComplex w = *alpha * x;
    // |1 - w| ~ |w| log p |s - s*| near a pole.
    BigReal dist = abs(w - 1L) / (abs(w) * log_p);
    if (dist < pole_tol) {
      throw PoleError("L_" + std::to_string(f.p) + " has a pole within " + dist.rounded(64).to_string(6) + " of s=" +
                      s.to_string(20));
    }
  }

  BigReal pk = pow(BigReal(f.p, prec), BigReal(static_cast<long>(f.weight_k - 1), prec));
  BigComplex lin = x * f.a_p;
  BigComplex quad = f.chi_p * pk * x * x;
  BigComplex denom = (quad - lin) + 1L;
  BigComplex value = BigReal(1L, prec) / denom;
  BigReal cond = (abs(lin) + abs(quad) + 1L).rounded(64) / abs(denom).rounded(64);
  BigReal err = ldexp(abs(value).rounded(64) * cond, -static_cast<long>(prec) + 4);
  BigComplex out = value.rounded(ctx.output());
  err += rounding_error(out, ctx.bits());
  return {std::move(out), std::move(err)};
}

BigComplex local_factor_eval_factored(const LocalFactor& f, const BigComplex& s, mpfr_prec_t prec) {
  BigReal log_p = log(BigReal(f.p, prec));
  BigComplex x = exp(-(s.rounded(prec) * log_p));
  BigComplex d1 = BigReal(1L, prec) - f.alpha1 * x;
  BigComplex d2 = BigReal(1L, prec) - f.alpha2 * x;
  return BigReal(1L, prec) / (d1 * d2);
}

ComplexEstimate gamma_factor_eval(const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx) {
  const mpfr_prec_t prec = ctx.working();
  BigComplex z = s.rounded(prec);
  BigComplex gam = detail::gamma_at(z, prec, ctx.bits() / 2);
  BigReal log_c = log(BigReal(spec.level_C, prec));
  BigReal log_2pi = log(BigReal::pi(prec) * 2L);
  BigComplex scale = exp(z * (log_c / 2L - log_2pi));
  BigComplex value = (scale * gam).rounded(ctx.output());
  BigReal err = ldexp(abs(value).rounded(64), -static_cast<long>(prec) + 6) + rounding_error(value, ctx.bits());
  return {std::move(value), std::move(err)};
}

}  // namespace lfapprox
