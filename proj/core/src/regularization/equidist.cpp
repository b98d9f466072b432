#include "lfapprox/regularization/equidist.hpp"

#include <algorithm>
#include <string>

#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"

namespace lfapprox {

double star_discrepancy(std::vector<double> sample) {
  if (sample.empty()) throw PreconditionError("star_discrepancy: empty sample");
  std::sort(sample.begin(), sample.end());
  const double M = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double above = static_cast<double>(i + 1) / M - sample[i];
    double below = sample[i] - static_cast<double>(i) / M;
    worst = std::max({worst, above, below});
  }
  return worst;
}

EquidistReport equidist_probe(long p, long q, long M, const PrecisionContext& ctx) {
  if (p == q) throw PreconditionError("equidist_probe: p and q must differ");
  if (!is_prime(p) || !is_prime(q)) {
    throw PreconditionError("equidist_probe: " + std::to_string(p) + " and " + std::to_string(q) + " must be prime");
  }
  if (M < 1000) throw PreconditionError("equidist_probe: M must be at least 1000");

  const mpfr_prec_t prec = ctx.working();
  BigReal ratio = log(BigReal(q, prec)) / log(BigReal(p, prec));
  EquidistReport report;
  report.p = p;
  report.q = q;
  report.M = M;
  std::vector<double> fractions;
  fractions.reserve(static_cast<std::size_t>(M));
  BigReal x(0L, prec);
  BigReal best(0L, prec);
  for (long n = 1; n <= M; ++n) {
    x += ratio;
    x -= floor(x);
    fractions.push_back(x.to_double());
    BigReal scaled = x * n;
    scaled *= n;
    if (n == 1 || scaled < best) {
      best = scaled;
      report.argmin = n;
    }
  }
  report.min_scaled = best.rounded(ctx.output());
  report.discrepancy = star_discrepancy(std::move(fractions));
  return report;
}

}  // namespace lfapprox
