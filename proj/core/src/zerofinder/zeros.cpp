#include "lfapprox/zerofinder/zeros.hpp"

#include <algorithm>
#include <string>

#include "lfapprox/errors.hpp"
#include "lfapprox/euler/local_factor.hpp"

namespace lfapprox {

namespace {

constexpr int kMaxRefineSteps = 400;

bool sign_is_clear(const RealEstimate& v) { return abs(v.value) > v.abs_error; }

RealEstimate guarded(const RealFunction& f, const BigReal& t) {
  try {
    return f(t);
  } catch (const PrecisionError& e) {
    throw ToleranceError(std::string("refine_zero: precision exhausted at t=") + t.to_string(20) + ": " + e.what());
  }
}

}  // namespace

ScanResult scan_sign_changes(const BigReal& t_lo, const BigReal& t_hi, const BigReal& step, const RealFunction& f) {
  if (!(step.sign() > 0)) throw PreconditionError("scan_sign_changes: step must be positive");
  ScanResult out;
  if (!(t_hi > t_lo)) return out;
  const mpfr_prec_t prec = std::max(t_lo.precision(), t_hi.precision());
  long count = floor((t_hi - t_lo) / step).to_long();
  for (long i = 0; i <= count; ++i) {
    BigReal t = t_lo.rounded(prec) + step * i;
    out.grid.push_back({t, f(t)});
  }
  if (out.grid.back().t < t_hi) out.grid.push_back({t_hi.rounded(prec), f(t_hi)});

  const auto& g = out.grid;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const int sa = g[i].value.value.sign();
    const int sb = g[i + 1].value.value.sign();
    if (sa * sb < 0) {
      out.brackets.push_back({g[i].t, g[i + 1].t, g[i].value, g[i + 1].value});
    } else if (sb == 0 && sa != 0 && i + 2 < g.size() && sa * g[i + 2].value.value.sign() < 0) {
      // Exact hit on a grid point: bracket it by its neighbours.
      out.brackets.push_back({g[i].t, g[i + 2].t, g[i].value, g[i + 2].value});
    }
  }
  return out;
}

ScanResult scan_sign_changes(const BigReal& t_lo, const BigReal& t_hi, const BigReal& step, const Mode& mode,
                             const ZFunction& Z) {
  return scan_sign_changes(t_lo, t_hi, step, [&](const BigReal& t) { return Z(t, mode); });
}

ZeroRecord refine_zero(const Bracket& bracket, const BigReal& tol, const RealFunction& f, const Mode& mode) {
  if (!(tol.sign() > 0)) throw PreconditionError("refine_zero: tolerance must be positive");
  if (bracket.f_lo.value.sign() * bracket.f_hi.value.sign() >= 0) {
    throw PreconditionError("refine_zero: no sign change on [" + bracket.lo.to_string(15) + ", " +
                            bracket.hi.to_string(15) + "]");
  }
  const mpfr_prec_t prec = std::max(bracket.lo.precision(), bracket.hi.precision());
  BigReal lo = bracket.lo.rounded(prec);
  BigReal hi = bracket.hi.rounded(prec);
  RealEstimate f_lo = bracket.f_lo;
  RealEstimate f_hi = bracket.f_hi;
  // Illinois weights on the retained endpoint values.
  BigReal w_lo = f_lo.value;
  BigReal w_hi = f_hi.value;
  int last_side = 0;  // -1: lo replaced last, +1: hi replaced last
  std::vector<BigReal> widths;

  auto finish = [&](const BigReal& t, const RealEstimate& value, const BigReal& a, const BigReal& b) {
    ZeroRecord r;
    r.t = t;
    r.mode = mode;
    r.refined_error = (b - a).rounded(64);
    r.bracket_lo = a;
    r.bracket_hi = b;
    r.value = value;
    return r;
  };

  const BigReal floor_width = ldexp(max(max(abs(lo), abs(hi)), BigReal(1L, prec)), -static_cast<long>(prec) + 8);
  bool bisect_next = false;
  for (int step = 0; step < kMaxRefineSteps; ++step) {
    BigReal width = hi - lo;
    const bool lo_best = abs(f_lo.value) <= abs(f_hi.value);
    const RealEstimate& best = lo_best ? f_lo : f_hi;
    if (width <= tol && abs(best.value) <= best.abs_error * 1000L) {
      return finish(lo_best ? lo : hi, best, lo, hi);
    }
    if (width <= floor_width) {
      throw ToleranceError("refine_zero: bracket at " + lo.to_string(20) + " cannot shrink further while |f| = " +
                           abs(best.value).to_string(4) + " exceeds 1000 x its error " + best.abs_error.to_string(4));
    }

    widths.push_back(width.rounded(64));
    if (widths.size() > 3 && widths.back() > widths[widths.size() - 4] / 2L) bisect_next = true;

    BigReal x = (lo + hi) / 2L;
    if (!bisect_next) {
      BigReal secant = hi - w_hi * (hi - lo) / (w_hi - w_lo);
      if (secant > lo && secant < hi) x = std::move(secant);
    }
    bisect_next = false;

    RealEstimate fx = guarded(f, x);
    if (!sign_is_clear(fx)) {
      // x is a zero to working accuracy; confirm with a bracket of width tol.
      BigReal half = min(tol, width) / 2L;
      BigReal a = max(x - half, lo);
      BigReal b = min(x + half, hi);
      RealEstimate fa = a == lo ? f_lo : guarded(f, a);
      RealEstimate fb = b == hi ? f_hi : guarded(f, b);
      if (sign_is_clear(fa) && sign_is_clear(fb) && fa.value.sign() * fb.value.sign() < 0) {
        return finish(x, fx, a, b);
      }
      throw ToleranceError("refine_zero: sign of f is unresolved around t=" + x.to_string(20) +
                           "; raise the precision");
    }

    if (fx.value.sign() == f_lo.value.sign()) {
      lo = x;
      f_lo = fx;
      w_lo = fx.value;
      if (last_side == -1) w_hi /= 2L;
      last_side = -1;
    } else {
      hi = x;
      f_hi = fx;
      w_hi = fx.value;
      if (last_side == 1) w_lo /= 2L;
      last_side = 1;
    }
  }
  throw ToleranceError("refine_zero: no convergence after " + std::to_string(kMaxRefineSteps) + " steps");
}

ZeroRecord refine_zero(const Bracket& bracket, const Mode& mode, const BigReal& tol, const ZFunction& Z) {
  return refine_zero(bracket, tol, [&](const BigReal& t) { return Z(t, mode); }, mode);
}

int order_from_derivatives(const std::vector<ComplexEstimate>& d, const BigReal& location_error) {
  if (d.size() < 2) throw PreconditionError("order_from_derivatives: need at least two derivatives");
  for (std::size_t j = 0; j < d.size(); ++j) {
    BigReal noise = d[j].abs_error * 16L;
    if (j + 1 < d.size()) noise += location_error.rounded(64) * abs(d[j + 1].value).rounded(64) * 4L;
    BigReal mag = abs(d[j].value).rounded(64);
    const bool zero = mag <= noise;
    const bool nonzero = mag > noise * 1000L;
    if (zero) continue;
    if (!nonzero) {
      throw AmbiguityError("order_from_derivatives: |d_" + std::to_string(j) + "| = " + mag.to_string(4) +
                           " lies inside the noise band [" + noise.to_string(4) + ", 1000x]");
    }
    if (j == 0) throw AmbiguityError("order_from_derivatives: the function does not vanish at the point");
    return static_cast<int>(j);
  }
  throw AmbiguityError("order_from_derivatives: all " + std::to_string(d.size()) +
                       " derivatives are indistinguishable from zero");
}

int classify_order(const BigReal& t0, const BigReal& location_error, const Mode& mode, const ZFunction& Z,
                   int max_order) {
  if (max_order < 1) throw PreconditionError("classify_order: max_order must be positive");
  const auto& engine = Z.engine();
  const mpfr_prec_t prec = engine.ctx().working();
  BigComplex s0(BigReal(static_cast<long>(engine.spec().weight_k), prec) / 2L, t0.rounded(prec));
  BigReal g = abs(gamma_factor_eval(s0, engine.spec(), engine.ctx()).value).rounded(64);
  BigReal target = Z.config().target_abs_error.rounded(64) * g;
  auto d = derivatives(engine, s0, max_order + 1, mode, target);
  return order_from_derivatives(d, location_error);
}

int classify_order(const ZeroRecord& zero, const ZFunction& Z, int max_order) {
  return classify_order(zero.t, zero.refined_error, zero.mode, Z, max_order);
}

int classify_order(const AnalyticFunction& f, const BigComplex& s0, const BigReal& location_error,
                   const PrecisionContext& ctx, int max_order) {
  if (max_order < 1) throw PreconditionError("classify_order: max_order must be positive");
  auto d = cauchy_derivatives(f, s0, max_order + 1, BigReal(0.5, ctx.working()), 32 * (max_order + 2), ctx);
  return order_from_derivatives(d, location_error);
}

std::vector<ZeroComparisonRow> compare_zero_lists(const std::vector<BigReal>& first,
                                                  const std::vector<BigReal>& second, const BigReal& match_window) {
  struct Pair {
    std::size_t i, j;
    BigReal dist;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) {
      BigReal dist = abs(first[i] - second[j]);
      if (dist <= match_window) pairs.push_back({i, j, std::move(dist)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
  std::vector<int> match_first(first.size(), -1);
  std::vector<bool> used_second(second.size(), false);
  for (const auto& p : pairs) {
    if (match_first[p.i] >= 0 || used_second[p.j]) continue;
    match_first[p.i] = static_cast<int>(p.j);
    used_second[p.j] = true;
  }

  std::vector<ZeroComparisonRow> rows;
  for (std::size_t i = 0; i < first.size(); ++i) {
    ZeroComparisonRow row;
    row.first = first[i];
    if (match_first[i] >= 0) {
      row.second = second[static_cast<std::size_t>(match_first[i])];
      row.difference = first[i] - *row.second;
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < second.size(); ++j) {
    if (!used_second[j]) rows.push_back({std::nullopt, second[j], std::nullopt});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ZeroComparisonRow& a, const ZeroComparisonRow& b) {
    const BigReal& x = a.first ? *a.first : *a.second;
    const BigReal& y = b.first ? *b.first : *b.second;
    return x < y;
  });
  return rows;
}

}  // namespace lfapprox
