#pragma once

#include <vector>

#include "lfapprox/euler/euler_product.hpp"
#include "lfapprox/euler/poles.hpp"
#include "lfapprox/numerics/gamma.hpp"

namespace lfapprox {

// Singular part sum_{m=1}^{order} coeffs[order - m] (s - pole)^-m.
// coeffs runs from the leading coefficient rho^(-order) down to the residue.
struct PrincipalPart {
  BigComplex pole;
  int order = 1;
  std::vector<BigComplex> coeffs;
  std::vector<BigReal> coeff_errors;
  BigReal radius;  // circle used for the coefficients
  int points = 0;  // samples on that circle
  std::vector<Pole> members;  // more than one for a merged cluster

  const BigComplex& residue() const { return coeffs.back(); }
  // Sum over m of |rho^(-m)|: the size of the part at unit distance.
  BigReal magnitude() const;
  ComplexEstimate eval(const BigComplex& s) const;
};

// Laurent coefficients rho^(-1) .. rho^(-max_order) of f about center from
// the trapezoid rule on |s - center| = radius. The number of points doubles
// from initial_points until successive estimates agree to 2^(-bits+8)
// relative to max |f| on the circle. The order is the largest m whose
// coefficient clears the noise floor, 0 when f is regular inside the
// circle. Throws ConvergenceError after 2^14 points.
PrincipalPart laurent_coefficients(const AnalyticFunction& f, const BigComplex& center, const BigReal& radius,
                                   int max_order, int initial_points, const PrecisionContext& ctx);

// Principal part of Lambda_N^Euler at the pole (or coincidence cluster)
// containing s_star. The circle radius is 1/8 of the distance to the nearest
// pole outside the cluster, capped at 1/4. Throws SeparationError when that
// leaves no room around the cluster and PreconditionError when s_star is not
// within 2^(-bits/2) of a pole.
PrincipalPart laurent_principal_part(const BigComplex& s_star, int order_hint, int N, const CoefficientTable& table,
                                     const EigenformSpec& spec, const PrecisionContext& ctx);

// Smallest integer T with |g((k-1)/2 + iT)| <= 2^-8 target.
BigReal default_truncation(const EigenformSpec& spec, const BigReal& target, const PrecisionContext& ctx);

struct RegularizedEstimate {
  BigComplex value;
  BigReal abs_error;        // includes truncation_tail
  BigReal truncation_tail;  // estimate for the poles left out
};

// All principal parts of Lambda_N^Euler for finite-place poles with
// |Im| <= T and gamma poles s = 0, -1, .., -floor(T), computed once.
class PrincipalPartSum {
 public:
  PrincipalPartSum(int N, const BigReal& T_trunc, const CoefficientTable& table, const EigenformSpec& spec,
                   const PrecisionContext& ctx);

  int N() const { return euler_.N(); }
  const BigReal& truncation() const { return T_; }
  const std::vector<PrincipalPart>& parts() const { return parts_; }
  const TruncatedEulerProduct& euler() const { return euler_; }
  const EigenformSpec& spec() const { return euler_.spec(); }
  const PrecisionContext& ctx() const { return euler_.ctx(); }

  // Truncated Lambda_N^pp(s). Throws PoleError within 2^(-bits/2) of a pole.
  RegularizedEstimate eval(const BigComplex& s) const;
  // Lambda_N^Euler(s) - Lambda_N^pp(s).
  RegularizedEstimate ingoing(const BigComplex& s) const;
  // ingoing(s) + (-1)^P ingoing(k - s).
  RegularizedEstimate lambda_N(const BigComplex& s) const;

  // Estimated contribution of the poles beyond the truncation at s.
  BigReal tail_estimate(const BigComplex& s) const;

 private:
  TruncatedEulerProduct euler_;
  TruncatedEulerProduct sampler_;  // same product, output at working precision
  BigReal T_;
  std::vector<PrincipalPart> parts_;
  // Per sign of Im: largest magnitude in the outermost band, carried to height T.
  BigReal top_magnitude_[2];
  BigReal pole_density_;
  BigReal gamma_last_;
  BigReal gamma_ratio_;
  long gamma_count_ = 0;
};

RegularizedEstimate principal_part_sum(const BigComplex& s, int N, const BigReal& T_trunc,
                                       const CoefficientTable& table, const EigenformSpec& spec,
                                       const PrecisionContext& ctx);

RegularizedEstimate lambda_N_regularized(const BigComplex& s, int N, const BigReal& T_trunc,
                                         const CoefficientTable& table, const EigenformSpec& spec,
                                         const PrecisionContext& ctx);

// |rho^(-1)| log p / |g(s_star)| over the simple p-lattice poles with
// |Im| <= window, i.e. the size of the remaining Euler factors at the pole.
struct LaurentGrowthReport {
  long p = 0;
  BigReal window;
  int poles = 0;
  double max_normalized = 0.0;
  double max_at = 0.0;  // ordinate of the maximum
  // max over |s_star| > e of log(normalized)/log|s_star|; observed only.
  double growth_exponent = 0.0;
};

LaurentGrowthReport laurent_growth_probe(const PrincipalPartSum& pp, long p, const BigReal& window);

}  // namespace lfapprox
