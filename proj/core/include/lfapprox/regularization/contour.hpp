#pragma once

#include <vector>

#include "lfapprox/euler/poles.hpp"
#include "lfapprox/regularization/principal_parts.hpp"

namespace lfapprox {

// Rectangle [sigma1, sigma2] x [tau1, tau2] whose boundary keeps distance
// >= a from the finite-place poles and >= b from the gamma poles.
struct SparseContour {
  BigReal sigma1;
  BigReal sigma2;
  BigReal tau1;
  BigReal tau2;
  BigReal a;
  BigReal b;
  int N = 0;

  bool contains(const SparseContour& inner) const;
  // Boundary points, samples_per_side on each edge, counter-clockwise from
  // (sigma1, tau1).
  std::vector<BigComplex> boundary(int samples_per_side, mpfr_prec_t prec) const;
};

// a = pi / (2 N log p_N + (4N + 2) pi).
BigReal sparse_distance(int N, mpfr_prec_t prec);

// sigma1 = -ceil(min_extent) - 1/2, sigma2 = max(min_extent, k + 1) + 1/2,
// tau2 in [min_extent, min_extent + 1] and tau1 in [-min_extent - 1, -min_extent],
// each the ordinate farthest from every pole ordinate of the lattices.
// Throws PreconditionError unless min_extent > k and SearchError if a unit
// window has no ordinate at distance >= a.
SparseContour sparse_contour(int N, const BigReal& min_extent, const EigenformSpec& spec,
                             const std::vector<PoleLattice>& lattices);

// Smallest distance from the contour boundary to the finite-place poles and
// to the gamma poles, by direct enumeration.
struct ContourClearance {
  BigReal finite;
  BigReal gamma;
};
ContourClearance contour_clearance(const SparseContour& contour, const std::vector<PoleLattice>& lattices);

struct PpBoundReport {
  BigReal K;  // max over samples of (1 + |s|) |Lambda_N^pp(s)|
  BigComplex argmax;
  int samples = 0;
  BigReal tail_allowance;  // max over samples of (1 + |s|) * truncation tail
};

// Throws PreconditionError for fewer than 16 samples per side.
PpBoundReport pp_bound_probe(const SparseContour& contour, const PrincipalPartSum& pp, int samples_per_side);

struct PpBoundComparison {
  PpBoundReport smaller;
  PpBoundReport larger;
  double ratio = 0.0;  // K_larger / K_smaller
  // K_larger <= K_smaller + larger.tail_allowance
  bool within_allowance = false;
};

PpBoundComparison compare_pp_bounds(const PpBoundReport& smaller, const PpBoundReport& larger);

}  // namespace lfapprox
