#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lfapprox/approximation/z_function.hpp"

namespace lfapprox {

using RealFunction = std::function<RealEstimate(const BigReal&)>;

struct Bracket {
  BigReal lo;
  BigReal hi;
  RealEstimate f_lo;
  RealEstimate f_hi;
};

struct GridSample {
  BigReal t;
  RealEstimate value;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<GridSample> grid;
};

// Evaluates f at t_lo, t_lo + step, ... and t_hi, and reports every
// consecutive pair of opposite sign; a sample that is exactly zero between
// two of opposite sign is bracketed by those neighbours. An empty or
// reversed range gives an empty result. Throws PreconditionError unless step > 0.
ScanResult scan_sign_changes(const BigReal& t_lo, const BigReal& t_hi, const BigReal& step, const RealFunction& f);
ScanResult scan_sign_changes(const BigReal& t_lo, const BigReal& t_hi, const BigReal& step, const Mode& mode,
                             const ZFunction& Z);

struct ZeroRecord {
  BigReal t;
  Mode mode;
  BigReal refined_error;  // width of the final bracket
  int order = 1;
  BigReal bracket_lo;
  BigReal bracket_hi;
  RealEstimate value;  // f(t)
};

// Illinois iteration on a sign-change bracket with a bisection step whenever
// the width fails to halve over three iterations. Stops once the width is
// <= tol and |f(t)| <= 1000 times its reported error, or when the sign of
// f at the new point is indistinguishable from zero. Throws ToleranceError
// when precision runs out first (including PrecisionError from f) and
// PreconditionError without a sign change.
ZeroRecord refine_zero(const Bracket& bracket, const BigReal& tol, const RealFunction& f, const Mode& mode);
ZeroRecord refine_zero(const Bracket& bracket, const Mode& mode, const BigReal& tol, const ZFunction& Z);

// Order from derivative values d_0, d_1, ... at a refined zero whose location
// is known to within location_error. d_j counts as zero when
// |d_j| <= 16 err_j + 4 location_error |d_(j+1)| and as nonzero when it
// exceeds 1000 times that. The order is the first nonzero index. Throws
// AmbiguityError when a magnitude falls between the two thresholds, when
// d_0 is nonzero, or when every computed derivative is zero.
int order_from_derivatives(const std::vector<ComplexEstimate>& d, const BigReal& location_error);

// Derivatives of Lambda (or Lambda_N) at k/2 + i t0 up to max_order + 1.
int classify_order(const ZeroRecord& zero, const ZFunction& Z, int max_order = 4);
int classify_order(const BigReal& t0, const BigReal& location_error, const Mode& mode, const ZFunction& Z,
                   int max_order = 4);
// Any analytic f, with derivatives by Cauchy's formula on |s - s0| = 1/2.
int classify_order(const AnalyticFunction& f, const BigComplex& s0, const BigReal& location_error,
                   const PrecisionContext& ctx, int max_order = 4);

struct ZeroComparisonRow {
  std::optional<BigReal> first;
  std::optional<BigReal> second;
  std::optional<BigReal> difference;  // first - second
  bool matched() const { return difference.has_value(); }
};

// Greedy nearest matching: pairs within window are taken in order of
// increasing distance, each zero used at most once. Rows are sorted by
// location; unmatched zeros get a row of their own.
std::vector<ZeroComparisonRow> compare_zero_lists(const std::vector<BigReal>& first,
                                                  const std::vector<BigReal>& second, const BigReal& match_window);

}  // namespace lfapprox
