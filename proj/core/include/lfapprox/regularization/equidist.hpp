#pragma once

#include <vector>

#include "lfapprox/numerics/big_real.hpp"
#include "lfapprox/numerics/precision.hpp"

namespace lfapprox {

// Diagnostics for x_n = {n log q / log p}, n = 1..M.
struct EquidistReport {
  long p = 0;
  long q = 0;
  long M = 0;
  BigReal min_scaled;  // min over n of n^2 x_n
  long argmin = 0;
  double discrepancy = 0.0;  // star discrepancy of x_1..x_M
};

// The fractional parts are taken at the context's working precision.
// Throws PreconditionError unless p != q are primes and M >= 1000.
EquidistReport equidist_probe(long p, long q, long M, const PrecisionContext& ctx);

// max_i max(i/M - u_(i), u_(i) - (i-1)/M) over the sorted sample.
double star_discrepancy(std::vector<double> sample);

}  // namespace lfapprox
