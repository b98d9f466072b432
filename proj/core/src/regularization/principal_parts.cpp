#include "lfapprox/regularization/principal_parts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lfapprox/errors.hpp"

namespace lfapprox {

namespace {

constexpr int kMaxCirclePoints = 1 << 14;

BigReal infinite() { return BigReal(std::numeric_limits<double>::infinity(), 64); }

BigReal pole_tolerance(const PrecisionContext& ctx) { return BigReal::exp2i(-ctx.bits() / 2, 64); }

PrecisionContext sampling_context(const PrecisionContext& ctx) {
  return PrecisionContext(static_cast<int>(ctx.working()), ctx.guard_bits());
}

// Finite-place poles with |Im| <= T plus gamma poles 0, -1, .., -gamma_max.
std::vector<Pole> collect_poles(const TruncatedEulerProduct& euler, const BigReal& T, long gamma_max) {
  std::vector<Pole> out;
  for (const auto& f : euler.factors()) {
    auto lattice = make_pole_lattice(f);
    if (lattice.base_ordinates.empty()) continue;
    auto poles = enumerate_poles(lattice, T);
    out.insert(out.end(), poles.begin(), poles.end());
  }
  const mpfr_prec_t prec = euler.ctx().working();
  for (long n = 0; n <= gamma_max; ++n) {
    Pole g;
    g.location = BigComplex(BigReal(-n, prec), BigReal(0L, prec));
    g.p = 0;
    out.push_back(std::move(g));
  }
  return out;
}

BigReal max_spacing(const TruncatedEulerProduct& euler) {
  const mpfr_prec_t prec = euler.ctx().working();
  BigReal out(1L, 64);
  for (const auto& f : euler.factors()) {
    BigReal spacing = BigReal::pi(prec) * 2L / log(BigReal(f.p, prec));
    if (spacing > out) out = spacing.rounded(64);
  }
  return out;
}

// Groups poles closer than tol (transitively) after sorting by ordinate.
std::vector<std::vector<Pole>> cluster_poles(std::vector<Pole> poles, const BigReal& tol) {
  std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
    if (a.location.im() != b.location.im()) return a.location.im() < b.location.im();
    return a.location.re() < b.location.re();
  });
  std::vector<int> parent(poles.size());
  for (std::size_t i = 0; i < poles.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (poles[j].location.im() - poles[i].location.im() > tol) break;
      if (distance(poles[i].location, poles[j].location) <= tol) parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
    }
  }
  std::vector<std::vector<Pole>> groups;
  std::vector<int> slot(poles.size(), -1);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    int root = find(static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(poles[i]);
  }
  return groups;
}

BigComplex cluster_center(const std::vector<Pole>& members) {
  BigComplex sum(members.front().location.precision());
  for (const auto& m : members) sum += m.location;
  return sum / static_cast<long>(members.size());
}

PrincipalPart part_for_cluster(const TruncatedEulerProduct& sampler, const std::vector<Pole>& members,
                               const std::vector<Pole>& all_poles, const PrecisionContext& ctx) {
  BigComplex center = cluster_center(members);
  BigReal spread(0L, 64);
  for (const auto& m : members) spread = max(spread, distance(m.location, center).rounded(64));

  BigReal nearest = infinite();
  for (const auto& q : all_poles) {
    bool inside = std::any_of(members.begin(), members.end(),
                              [&](const Pole& m) { return m.location == q.location && m.p == q.p; });
    if (inside) continue;
    BigReal d = distance(q.location, center).rounded(64);
    if (d < nearest) nearest = d;
  }
  BigReal radius = min(nearest / 8L, BigReal(0.25, 64));
  if (radius <= spread * 4L || radius < BigReal::exp2i(-ctx.bits() / 4, 64)) {
    throw SeparationError("no integration circle separates the pole cluster at " + center.to_string(20) +
                          " (spread " + spread.to_string(4) + ", nearest other pole at " + nearest.to_string(4) + ")");
  }

  int order_hint = 0;
  for (const auto& m : members) order_hint += m.order;
  AnalyticFunction f = [&sampler](const BigComplex& s) { return sampler.eval(s); };
  PrincipalPart part = laurent_coefficients(f, center, radius, order_hint + 1, 32 * (order_hint + 2), ctx);
  if (part.order == 0) {
    throw SeparationError("principal part at " + center.to_string(20) + " is below the noise floor");
  }
  part.members = members;
  return part;
}

}  // namespace

BigReal PrincipalPart::magnitude() const {
  BigReal out(0L, 64);
  for (const auto& c : coeffs) out += abs(c).rounded(64);
  return out;
}

ComplexEstimate PrincipalPart::eval(const BigComplex& s) const {
  const mpfr_prec_t prec = std::max(s.precision(), pole.precision());
  BigComplex inv = BigReal(1L, prec) / (s - pole);
  BigReal inv_abs = abs(inv).rounded(64);
  // Horner in 1/(s - pole): ((rho_-order inv + rho_-order+1) inv + ...) inv.
  BigComplex acc(prec);
  BigReal err(0L, 64);
  BigReal scale(1L, 64);
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    scale *= inv_abs;
    err += coeff_errors[j] * scale;
  }
  for (const auto& c : coeffs) acc = (acc + c) * inv;
  err += ldexp(magnitude() * scale, -static_cast<long>(prec) + 4);
  return {std::move(acc), std::move(err)};
}

PrincipalPart laurent_coefficients(const AnalyticFunction& f, const BigComplex& center, const BigReal& radius,
                                   int max_order, int initial_points, const PrecisionContext& ctx) {
  if (max_order < 1) throw PreconditionError("laurent_coefficients: max_order must be at least 1");
  if (!(radius.sign() > 0)) throw PreconditionError("laurent_coefficients: radius must be positive");
  if (initial_points < 4 * (max_order + 1)) {
    throw PreconditionError("laurent_coefficients: need at least 4*(max_order+1) points");
  }
  const mpfr_prec_t prec = ctx.working();
  BigReal r = radius.rounded(prec);
  BigComplex c = center.rounded(prec);
  BigReal two_pi = BigReal::pi(prec) * 2L;

  std::vector<BigComplex> sums(max_order + 1, BigComplex(prec));  // sum_j f_j w_j^m
  BigReal max_abs(0L, 64);
  BigReal max_err(0L, 64);
  auto add_points = [&](int start, int stride, int total) {
    for (int j = start; j < total; j += stride) {
      BigReal sn, cs;
      sin_cos(two_pi * static_cast<long>(j) / static_cast<long>(total), sn, cs);
      BigComplex w(cs, sn);
      ComplexEstimate v = f(c + w * r);
      max_abs = max(max_abs, abs(v.value).rounded(64));
      max_err = max(max_err, v.abs_error.rounded(64));
      BigComplex term = v.value.rounded(prec);
      for (int m = 1; m <= max_order; ++m) {
        term *= w;
        sums[m] += term;
      }
    }
  };

  int points = initial_points;
  add_points(0, 1, points);
  std::vector<BigComplex> moments(max_order + 1, BigComplex(prec));
  for (int m = 1; m <= max_order; ++m) moments[m] = sums[m] / static_cast<long>(points);

  std::vector<BigReal> change(max_order + 1, BigReal(0L, 64));
  while (true) {
    if (points * 2 > kMaxCirclePoints) {
      throw ConvergenceError("laurent_coefficients: no convergence with " + std::to_string(points) +
                             " points around " + center.to_string(20));
    }
    add_points(1, 2, points * 2);
    points *= 2;
    BigReal worst(0L, 64);
    for (int m = 1; m <= max_order; ++m) {
      BigComplex next = sums[m] / static_cast<long>(points);
      change[m] = abs(next - moments[m]).rounded(64);
      worst = max(worst, change[m]);
      moments[m] = std::move(next);
    }
    BigReal goal = max(ldexp(max_abs, -ctx.bits() + 8), max_err * 4L);
    if (worst <= goal) break;
  }

  // rho^(-m) = r^m moment_m.
  PrincipalPart part;
  part.pole = c;
  part.radius = r.rounded(64);
  part.points = points;
  BigReal noise_base = max_err + ldexp(max_abs, -static_cast<long>(prec) + 8);
  std::vector<BigComplex> rho(max_order + 1, BigComplex(prec));
  std::vector<BigReal> rho_err(max_order + 1, BigReal(0L, 64));
  BigReal rm(1L, prec);
  int order = 0;
  for (int m = 1; m <= max_order; ++m) {
    rm *= r;
    rho[m] = moments[m] * rm;
    BigReal rm64 = rm.rounded(64);
    rho_err[m] = (change[m] + noise_base) * rm64;
    if (abs(rho[m]).rounded(64) > rho_err[m] * 16L) order = m;
  }
  part.order = order;
  for (int m = order; m >= 1; --m) {
    part.coeffs.push_back(rho[m].rounded(ctx.working()));
    part.coeff_errors.push_back(rho_err[m]);
  }
  return part;
}

PrincipalPart laurent_principal_part(const BigComplex& s_star, int order_hint, int N, const CoefficientTable& table,
                                     const EigenformSpec& spec, const PrecisionContext& ctx) {
  if (order_hint < 1) throw PreconditionError("laurent_principal_part: order_hint must be positive");
  TruncatedEulerProduct sampler(N, table, spec, sampling_context(ctx));
  TruncatedEulerProduct euler(N, table, spec, ctx);
  BigReal window = abs(s_star.im()).rounded(64) + max_spacing(euler) * 2L + 1L;
  long gamma_max = std::max(2L, static_cast<long>(std::ceil(abs(s_star).to_double())) + 2);
  auto all = collect_poles(euler, window, gamma_max);

  BigReal tol = pole_tolerance(ctx);
  std::vector<Pole> members;
  for (const auto& q : all) {
    if (distance(q.location, s_star) <= tol) members.push_back(q);
  }
  if (members.empty()) {
    throw PreconditionError("laurent_principal_part: no pole of Lambda_N^Euler within 2^(-bits/2) of " +
                            s_star.to_string(20));
  }
  PrincipalPart part = part_for_cluster(sampler, members, all, ctx);
  if (part.order > std::max(order_hint, 2 * N)) {
    throw ToleranceError("principal part at " + s_star.to_string(20) + " has order " + std::to_string(part.order) +
                         " above the hint " + std::to_string(order_hint));
  }
  return part;
}

BigReal default_truncation(const EigenformSpec& spec, const BigReal& target, const PrecisionContext& ctx) {
  if (!(target.sign() > 0)) throw PreconditionError("default_truncation: target must be positive");
  PrecisionContext low = ctx.with_bits(64);
  BigReal goal = ldexp(target.rounded(64), -8);
  BigReal sigma(static_cast<long>(spec.weight_k - 1), 64);
  sigma /= 2L;
  for (long T = 1; T <= 100000; ++T) {
    auto g = gamma_factor_eval(BigComplex(sigma, BigReal(T, 64)), spec, low);
    if (abs(g.value) <= goal) return BigReal(T, 64);
  }
  throw SearchError("default_truncation: gamma factor does not decay below the target");
}

PrincipalPartSum::PrincipalPartSum(int N, const BigReal& T_trunc, const CoefficientTable& table,
                                   const EigenformSpec& spec, const PrecisionContext& ctx)
    : euler_(N, table, spec, ctx), sampler_(N, table, spec, sampling_context(ctx)), T_(T_trunc.rounded(64)) {
  if (N < 1) throw PreconditionError("principal parts need N >= 1");
  if (!(T_.sign() > 0)) throw PreconditionError("truncation height must be positive");

  const BigReal spacing = max_spacing(euler_);
  gamma_count_ = floor(T_).to_long() + 1;
  auto all = collect_poles(euler_, T_ + spacing + 1L, gamma_count_);
  auto clusters = cluster_poles(all, pole_tolerance(ctx));

  for (const auto& members : clusters) {
    BigComplex center = cluster_center(members);
    bool gamma_pole = members.front().p == 0 && members.size() == 1;
    if (gamma_pole) {
      if (-center.re().to_long() >= gamma_count_) continue;
    } else if (abs(center.im()) > T_) {
      continue;
    }
    parts_.push_back(part_for_cluster(sampler_, members, all, ctx));
  }

  // Tail data: outermost band of finite poles on each side, gamma residue decay.
  top_magnitude_[0] = BigReal(0L, 64);
  top_magnitude_[1] = BigReal(0L, 64);
  BigReal band = T_ - spacing;
  BigReal gamma_prev(0L, 64);
  gamma_last_ = BigReal(0L, 64);
  for (const auto& part : parts_) {
    bool gamma_pole = part.members.size() == 1 && part.members.front().p == 0;
    if (gamma_pole) {
      long n = -part.pole.re().to_long();
      if (n == gamma_count_ - 1) gamma_last_ = part.magnitude();
      if (n == gamma_count_ - 2) gamma_prev = part.magnitude();
      continue;
    }
    int side = part.pole.im().sign() >= 0 ? 0 : 1;
    BigReal height = abs(part.pole.im()).rounded(64);
    if (height < band) continue;
    // Carried up to |Im| = T with the exp(-pi |t| / 2) decay of the gamma factor.
    BigReal projected = part.magnitude() * exp((height - T_) * BigReal::pi(64) / 2L);
    top_magnitude_[side] = max(top_magnitude_[side], projected);
  }
  gamma_ratio_ = gamma_prev.is_zero() ? BigReal(0.5, 64) : gamma_last_ / gamma_prev;

  const mpfr_prec_t prec = ctx.working();
  pole_density_ = BigReal(0L, 64);
  for (const auto& f : euler_.factors()) {
    long families = (f.alpha1.is_zero() ? 0 : 1) + (f.alpha2.is_zero() ? 0 : 1);
    pole_density_ += (log(BigReal(f.p, prec)) * families / (BigReal::pi(prec) * 2L)).rounded(64);
  }
}

BigReal PrincipalPartSum::tail_estimate(const BigComplex& s) const {
  const BigReal floor_dist = pole_tolerance(ctx());
  BigReal sigma_star(static_cast<long>(spec().weight_k - 1), 64);
  sigma_star /= 2L;
  BigReal re_gap = abs(s.re().rounded(64) - sigma_star);
  BigReal two_over_pi = BigReal(2L, 64) / BigReal::pi(64);

  BigReal tail(0L, 64);
  for (int side = 0; side < 2; ++side) {
    BigReal im = s.im().rounded(64);
    BigReal gap = T_ - (side == 0 ? im : -im);
    BigReal dist = max(max(gap, re_gap), floor_dist);
    tail += top_magnitude_[side] * pole_density_ * two_over_pi * 2L / dist;
  }
  if (gamma_ratio_ >= 1L) return infinite();
  BigReal next_pole(-gamma_count_, 64);
  BigReal dist = max(abs(s.rounded(64) - BigComplex(next_pole)), floor_dist);
  tail += gamma_last_ * gamma_ratio_ / (BigReal(1L, 64) - gamma_ratio_) / dist;
  return tail;
}

RegularizedEstimate PrincipalPartSum::eval(const BigComplex& s) const {
  const mpfr_prec_t prec = ctx().working();
  BigComplex z = s.rounded(prec);
  BigReal tol = pole_tolerance(ctx());
  BigComplex sum(prec);
  BigReal err(0L, 64);
  for (const auto& part : parts_) {
    if (distance(z, part.pole) < tol) {
      throw PoleError("Lambda_N^pp: s=" + s.to_string(20) + " is within 2^(-bits/2) of the pole " +
                      part.pole.to_string(20));
    }
    ComplexEstimate v = part.eval(z);
    sum += v.value;
    err += v.abs_error;
  }
  BigReal tail = tail_estimate(s);
  BigComplex value = sum.rounded(ctx().output());
  err += tail + rounding_error(value, ctx().bits());
  return {std::move(value), std::move(err), std::move(tail)};
}

RegularizedEstimate PrincipalPartSum::ingoing(const BigComplex& s) const {
  const mpfr_prec_t prec = ctx().working();
  ComplexEstimate e = sampler_.eval(s.rounded(prec));
  RegularizedEstimate pp = eval(s);
  BigComplex value = (e.value - pp.value).rounded(ctx().output());
  BigReal err = e.abs_error + pp.abs_error + rounding_error(value, ctx().bits());
  return {std::move(value), std::move(err), std::move(pp.truncation_tail)};
}

RegularizedEstimate PrincipalPartSum::lambda_N(const BigComplex& s) const {
  const mpfr_prec_t prec = ctx().working();
  BigComplex z = s.rounded(prec);
  BigComplex reflected = BigReal(static_cast<long>(spec().weight_k), prec) - z;
  RegularizedEstimate a = ingoing(z);
  RegularizedEstimate b = ingoing(reflected);
  BigComplex value = spec().sign() > 0 ? a.value + b.value : a.value - b.value;
  value = value.rounded(ctx().output());
  BigReal err = a.abs_error + b.abs_error + rounding_error(value, ctx().bits());
  BigReal tail = a.truncation_tail + b.truncation_tail;
  return {std::move(value), std::move(err), std::move(tail)};
}

RegularizedEstimate principal_part_sum(const BigComplex& s, int N, const BigReal& T_trunc,
                                       const CoefficientTable& table, const EigenformSpec& spec,
                                       const PrecisionContext& ctx) {
  return PrincipalPartSum(N, T_trunc, table, spec, ctx).eval(s);
}

RegularizedEstimate lambda_N_regularized(const BigComplex& s, int N, const BigReal& T_trunc,
                                         const CoefficientTable& table, const EigenformSpec& spec,
                                         const PrecisionContext& ctx) {
  return PrincipalPartSum(N, T_trunc, table, spec, ctx).lambda_N(s);
}

LaurentGrowthReport laurent_growth_probe(const PrincipalPartSum& pp, long p, const BigReal& window) {
  LaurentGrowthReport report;
  report.p = p;
  report.window = window.rounded(64);
  const PrecisionContext& ctx = pp.ctx();
  const mpfr_prec_t prec = ctx.working();
  BigReal log_p = log(BigReal(p, prec));
  double best_exponent = -std::numeric_limits<double>::infinity();
  for (const auto& part : pp.parts()) {
    if (part.members.size() != 1 || part.members.front().p != p || part.order != 1) continue;
    if (abs(part.pole.im()) > window) continue;
    auto g = gamma_factor_eval(part.pole, pp.spec(), ctx);
    double normalized = (abs(part.residue()) * log_p / abs(g.value)).to_double();
    ++report.poles;
    if (normalized > report.max_normalized) {
      report.max_normalized = normalized;
      report.max_at = part.pole.im().to_double();
    }
    double radius = abs(part.pole).to_double();
    if (radius > std::exp(1.0)) best_exponent = std::max(best_exponent, std::log(normalized) / std::log(radius));
  }
  report.growth_exponent = std::isfinite(best_exponent) ? best_exponent : 0.0;
  return report;
}

}  // namespace lfapprox
