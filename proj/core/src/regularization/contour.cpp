#include "lfapprox/regularization/contour.hpp"

#include <algorithm>
#include <string>

#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"

namespace lfapprox {

namespace {

mpfr_prec_t lattice_precision(const std::vector<PoleLattice>& lattices) {
  return lattices.empty() ? 128 : lattices.front().ctx.working();
}

// Ordinate in [lo, lo + 1] farthest from every entry of sorted ordinates.
BigReal farthest_ordinate(const std::vector<BigReal>& ordinates, const BigReal& lo, mpfr_prec_t prec) {
  BigReal hi = lo + 1L;
  std::vector<BigReal> candidates{lo, hi};
  for (std::size_t i = 0; i + 1 < ordinates.size(); ++i) {
    BigReal mid = (ordinates[i] + ordinates[i + 1]) / 2L;
    if (mid > lo && mid < hi) candidates.push_back(mid);
  }
  BigReal best = lo;
  BigReal best_gap(-1L, prec);
  for (const auto& c : candidates) {
    BigReal gap(1e300, prec);
    for (const auto& y : ordinates) gap = min(gap, abs(c - y));
    if (gap > best_gap) {
      best_gap = gap;
      best = c;
    }
  }
  return best;
}

BigReal distance_to_boundary(const SparseContour& c, const BigComplex& z) {
  const BigReal& x = z.re();
  const BigReal& y = z.im();
  bool inside_x = x >= c.sigma1 && x <= c.sigma2;
  bool inside_y = y >= c.tau1 && y <= c.tau2;
  if (inside_x && inside_y) {
    return min(min(x - c.sigma1, c.sigma2 - x), min(y - c.tau1, c.tau2 - y));
  }
  BigReal dx = inside_x ? BigReal(0L, 64) : min(abs(x - c.sigma1), abs(x - c.sigma2));
  BigReal dy = inside_y ? BigReal(0L, 64) : min(abs(y - c.tau1), abs(y - c.tau2));
  return hypot(dx, dy);
}

}  // namespace

bool SparseContour::contains(const SparseContour& inner) const {
  return sigma1 <= inner.sigma1 && sigma2 >= inner.sigma2 && tau1 <= inner.tau1 && tau2 >= inner.tau2;
}

std::vector<BigComplex> SparseContour::boundary(int samples_per_side, mpfr_prec_t prec) const {
  std::vector<BigComplex> out;
  out.reserve(static_cast<std::size_t>(4 * samples_per_side));
  const BigComplex corners[5] = {BigComplex(sigma1, tau1), BigComplex(sigma2, tau1), BigComplex(sigma2, tau2),
                                 BigComplex(sigma1, tau2), BigComplex(sigma1, tau1)};
  for (int side = 0; side < 4; ++side) {
    BigComplex from = corners[side].rounded(prec);
    BigComplex step = (corners[side + 1].rounded(prec) - from) / static_cast<long>(samples_per_side);
    for (int j = 0; j < samples_per_side; ++j) out.push_back(from + step * static_cast<long>(j));
  }
  return out;
}

BigReal sparse_distance(int N, mpfr_prec_t prec) {
  if (N < 1) throw PreconditionError("sparse_distance: N must be positive");
  BigReal pi = BigReal::pi(prec);
  BigReal log_pN = log(BigReal(nth_prime(N), prec));
  return pi / (log_pN * (2L * N) + pi * (4L * N + 2));
}

SparseContour sparse_contour(int N, const BigReal& min_extent, const EigenformSpec& spec,
                             const std::vector<PoleLattice>& lattices) {
  const long k = spec.weight_k;
  if (!(min_extent > k)) throw PreconditionError("sparse_contour: min_extent must exceed k=" + std::to_string(k));
  const mpfr_prec_t prec = lattice_precision(lattices);

  SparseContour c;
  c.N = N;
  c.a = sparse_distance(N, prec);
  c.b = BigReal(0.5, prec);
  BigReal E = min_extent.rounded(prec);
  BigReal ceil_E = -floor(-E);
  c.sigma1 = -ceil_E - BigReal(0.5, prec);
  c.sigma2 = max(E, BigReal(k + 1, prec)) + BigReal(0.5, prec);

  std::vector<BigReal> ordinates;
  BigReal reach = E + 3L;
  for (const auto& lattice : lattices) {
    if (lattice.base_ordinates.empty()) continue;
    for (const auto& pole : enumerate_poles(lattice, reach)) ordinates.push_back(pole.location.im());
  }
  std::sort(ordinates.begin(), ordinates.end(), [](const BigReal& x, const BigReal& y) { return x < y; });

  c.tau2 = farthest_ordinate(ordinates, E, prec);
  c.tau1 = farthest_ordinate(ordinates, -E - 1L, prec);
  for (const BigReal* tau : {&c.tau1, &c.tau2}) {
    for (const auto& y : ordinates) {
      if (abs(*tau - y) < c.a) {
        throw SearchError("sparse_contour: no ordinate near " + tau->to_string(10) + " stays " + c.a.to_string(6) +
                          " away from the poles");
      }
    }
  }
  return c;
}

ContourClearance contour_clearance(const SparseContour& contour, const std::vector<PoleLattice>& lattices) {
  ContourClearance out{BigReal(1e300, 64), BigReal(1e300, 64)};
  BigReal reach = max(abs(contour.tau1), abs(contour.tau2)) + 2L;
  for (const auto& lattice : lattices) {
    if (lattice.base_ordinates.empty()) continue;
    for (const auto& pole : enumerate_poles(lattice, reach)) {
      out.finite = min(out.finite, distance_to_boundary(contour, pole.location).rounded(64));
    }
  }
  long last = -floor(contour.sigma1).to_long() + 1;
  for (long n = 0; n <= last; ++n) {
    BigComplex z(BigReal(-n, contour.sigma1.precision()), BigReal(0L, contour.sigma1.precision()));
    out.gamma = min(out.gamma, distance_to_boundary(contour, z).rounded(64));
  }
  return out;
}

PpBoundReport pp_bound_probe(const SparseContour& contour, const PrincipalPartSum& pp, int samples_per_side) {
  if (samples_per_side < 16) throw PreconditionError("pp_bound_probe: need at least 16 samples per side");
  PpBoundReport report{BigReal(0L, 64), BigComplex(64), 0, BigReal(0L, 64)};
  for (const auto& s : contour.boundary(samples_per_side, pp.ctx().working())) {
    RegularizedEstimate v = pp.eval(s);
    BigReal weight = abs(s).rounded(64) + 1L;
    BigReal scaled = weight * abs(v.value).rounded(64);
    if (scaled > report.K) {
      report.K = scaled;
      report.argmax = s.rounded(64);
    }
    report.tail_allowance = max(report.tail_allowance, weight * v.truncation_tail);
    ++report.samples;
  }
  return report;
}

PpBoundComparison compare_pp_bounds(const PpBoundReport& smaller, const PpBoundReport& larger) {
  PpBoundComparison out{smaller, larger, 0.0, false};
  out.ratio = (larger.K / smaller.K).to_double();
  out.within_allowance = larger.K <= smaller.K + larger.tail_allowance;
  return out;
}

}  // namespace lfapprox
