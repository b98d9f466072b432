#include "lfapprox/approximation/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"
#include "lfapprox/numerics/gamma.hpp"

namespace lfapprox {

std::string Mode::label() const { return full ? std::string("full") : "N=" + std::to_string(N); }

void ApproxConfig::validate() const {
  if (!(target_abs_error.sign() > 0)) throw PreconditionError("target error must be positive");
  if (N < 1) throw PreconditionError("N must be >= 1");
  if (n_cutoff_override && *n_cutoff_override < 0) throw PreconditionError("cutoff override must be nonnegative");
}

namespace {

// Everything about s that every term of the series shares.
class TermEvaluator {
 public:
  TermEvaluator(const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx)
      : prec_(ctx.working()),
        pole_bits_(ctx.bits() / 2),
        sign_(spec.sign()),
        s_(s.rounded(prec_)),
        ks_(BigReal(static_cast<long>(spec.weight_k), prec_) - s_),
        step_(BigReal::pi(prec_) * 2L / sqrt(BigReal(spec.level_C, prec_))) {
    // Gamma(s) is shared by every n in the series regime; hold it with
    // extra bits so cancellation there does not force recomputation.
    BigReal a1 = step_;
    if (detail::incomplete_gamma_uses_series(s_, a1, pole_bits_)) {
      gamma_s_ = detail::gamma_at(s_, prec_ + 128, pole_bits_);
    }
    if (detail::incomplete_gamma_uses_series(ks_, a1, pole_bits_)) {
      gamma_ks_ = detail::gamma_at(ks_, prec_ + 128, pole_bits_);
    }
  }

  ComplexEstimate term(long n) const {
    BigReal a = step_ * n;
    BigReal log_a = log(a);
    ComplexEstimate g1 =
        detail::upper_incomplete_gamma_at(s_, a, prec_, pole_bits_, gamma_s_ ? &*gamma_s_ : nullptr);
    ComplexEstimate g2 =
        detail::upper_incomplete_gamma_at(ks_, a, prec_, pole_bits_, gamma_ks_ ? &*gamma_ks_ : nullptr);
    BigComplex w1 = exp(-(s_ * log_a));
    BigComplex w2 = exp(-(ks_ * log_a));
    BigComplex first = w1 * g1.value;
    BigComplex second = w2 * g2.value;
    BigComplex value = sign_ > 0 ? first + second : first - second;
    BigReal err = abs(w1).rounded(64) * g1.abs_error + abs(w2).rounded(64) * g2.abs_error +
                  ldexp((abs(first) + abs(second)).rounded(64), -static_cast<long>(prec_) + 4);
    return {std::move(value), std::move(err)};
  }

 private:
  mpfr_prec_t prec_;
  long pole_bits_;
  long sign_;
  BigComplex s_;
  BigComplex ks_;
  BigReal step_;
  std::optional<BigComplex> gamma_s_;
  std::optional<BigComplex> gamma_ks_;
};

struct BoundShape {
  double sigma;
  double k;
  double sqrt_c;
  double threshold;  // max(m(sigma), m(k - sigma))
};

BoundShape bound_shape(const BigComplex& s, const EigenformSpec& spec) {
  BoundShape b{};
  b.sigma = s.re().to_double();
  b.k = spec.weight_k;
  b.sqrt_c = std::sqrt(static_cast<double>(spec.level_C));
  b.threshold = std::max(decay_threshold(b.sigma), decay_threshold(b.k - b.sigma));
  return b;
}

// n^((k+1)/2) 2 e^(-a/2) (a^-sigma + a^(sigma-k)) in a wide exponent range.
BigReal tail_term(long n, const BoundShape& b) {
  const mpfr_prec_t prec = 64;
  BigReal nn(n, prec);
  BigReal a = BigReal::pi(prec) * 2L * nn / b.sqrt_c;
  BigReal log_a = log(a);
  BigReal coeff = exp(log(nn) * ((b.k + 1.0) / 2.0) - a / 2L) * 2L;
  return coeff * (exp(log_a * (-b.sigma)) + exp(log_a * (b.sigma - b.k)));
}

}  // namespace

ComplexEstimate lambda_term(const BigComplex& s, long n, const EigenformSpec& spec, const PrecisionContext& ctx) {
  if (n < 1) throw PreconditionError("lambda_term: n must be >= 1");
  ComplexEstimate t = TermEvaluator(s, spec, ctx).term(n);
  BigComplex value = t.value.rounded(ctx.output());
  BigReal err = t.abs_error + rounding_error(value, ctx.bits());
  return {std::move(value), std::move(err)};
}

BigReal tail_bound(long n_start, const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx) {
  (void)ctx;
  BoundShape b = bound_shape(s, spec);
  double a_start = 2.0 * M_PI * static_cast<double>(n_start) / b.sqrt_c;
  if (n_start < 1 || !(a_start > b.threshold)) {
    throw RegimeError("tail_bound: 2 pi n_start/sqrt(C) = " + std::to_string(a_start) +
                      " must exceed max(m(sigma), m(k-sigma)) = " + std::to_string(b.threshold));
  }
  // Term ratios are at most (1 + 1/n)^e e^(-pi/sqrt C) <= rho once
  // n >= 2 e sqrt(C)/pi.
  double e = (b.k + 1.0) / 2.0 + std::max({0.0, -b.sigma, b.sigma - b.k});
  long n0 = std::max(n_start, static_cast<long>(std::ceil(2.0 * e * b.sqrt_c / M_PI)));
  BigReal rho = exp(BigReal(-M_PI / (2.0 * b.sqrt_c), 64));

  BigReal total(0L, 64);
  for (long n = n_start; n < n0; ++n) total += tail_term(n, b);
  total += tail_term(n0, b) / (BigReal(1L, 64) - rho);
  // Absorb the 64-bit rounding of the sum.
  return total * (1.0 + std::ldexp(1.0, -40));
}

long certified_tail_start(const BigComplex& s, const EigenformSpec& spec, const BigReal& target,
                          const PrecisionContext& ctx) {
  if (!(target.sign() > 0)) throw PreconditionError("target error must be positive");
  BoundShape b = bound_shape(s, spec);
  long lo = static_cast<long>(std::floor(b.threshold * b.sqrt_c / (2.0 * M_PI))) + 1;
  while (!(2.0 * M_PI * static_cast<double>(lo) / b.sqrt_c > b.threshold)) ++lo;
  BigReal goal = target.rounded(64) / 2L;
  auto ok = [&](long n) { return tail_bound(n, s, spec, ctx) <= goal; };
  if (ok(lo)) return lo;
  long hi = lo;
  do {
    lo = hi;
    hi *= 2;
    if (hi > (1L << 40)) throw ConvergenceError("certified_tail_start: no cutoff found");
  } while (!ok(hi));
  // lo fails, hi passes.
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

BigReal first_term_bound(int N, const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx) {
  (void)ctx;
  if (N < 0) throw PreconditionError("first_term_bound: N must be >= 0");
  BoundShape b = bound_shape(s, spec);
  long p = nth_prime(N + 1);
  const mpfr_prec_t prec = 64;
  BigReal pp(p, prec);
  BigReal a = BigReal::pi(prec) * 2L * pp / b.sqrt_c;
  if (!(a > b.threshold)) {
    throw RegimeError("first_term_bound: 2 pi p_{N+1}/sqrt(C) = " + a.to_string(8) +
                      " does not exceed max(m(sigma), m(k-sigma)) = " + std::to_string(b.threshold));
  }
  BigReal log_a = log(a);
  BigReal head = exp(-(BigReal::pi(prec) * pp / b.sqrt_c) + log(pp) * ((b.k - 1.0) / 2.0)) * 4L;
  return head * (exp(log_a * (-b.sigma)) + exp(log_a * (b.sigma - b.k)));
}

BigReal rosser_first_term_bound(int N, const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx) {
  (void)ctx;
  if (N < 5) throw RegimeError("rosser_first_term_bound: needs N >= 5, got " + std::to_string(N));
  BoundShape b = bound_shape(s, spec);
  const mpfr_prec_t prec = 64;
  BigReal n(static_cast<long>(N + 1), prec);
  BigReal log_n = log(n);
  BigReal p_lo = n * log_n;
  BigReal p_hi = n * (log_n + log(log_n));
  BigReal two_pi_over = BigReal::pi(prec) * 2L / b.sqrt_c;
  if (!(p_lo * two_pi_over > b.threshold)) {
    throw RegimeError("rosser_first_term_bound: lower prime estimate is below the decay threshold");
  }
  BigReal head = exp(-(BigReal::pi(prec) * p_lo / b.sqrt_c) + log(p_hi) * ((b.k - 1.0) / 2.0)) * 4L;
  BigReal a_left = (b.sigma >= 0.0 ? p_lo : p_hi) * two_pi_over;
  BigReal a_right = (b.sigma - b.k <= 0.0 ? p_lo : p_hi) * two_pi_over;
  return head * (exp(log(a_left) * (-b.sigma)) + exp(log(a_right) * (b.sigma - b.k)));
}

// --------------------------------------------------------------- SeriesEngine

SeriesEngine::SeriesEngine(const CoefficientTable& table, const EigenformSpec& spec, const PrecisionContext& ctx)
    : table_(table), spec_(spec), ctx_(ctx) {}

const SubseriesMask& SeriesEngine::mask(int N) const {
  std::lock_guard lock(mask_mutex_);
  auto& slot = masks_[N];
  if (!slot) slot = std::make_unique<SubseriesMask>(table_.n_max(), N);
  return *slot;
}

long SeriesEngine::cutoff(const BigComplex& s, const BigReal& target, std::optional<long> cutoff_override) const {
  if (cutoff_override) return *cutoff_override;
  return certified_tail_start(s, spec_, target, ctx_) - 1;
}

std::vector<ComplexEstimate> SeriesEngine::run(const BigComplex& s, const std::vector<Request>& requests,
                                               const BigReal& target, std::optional<long> cutoff_override) const {
  const long last = cutoff(s, target, cutoff_override);
  if (last > static_cast<long>(table_.n_max())) {
    throw CutoffError("series needs coefficients up to n=" + std::to_string(last) + " but the table stops at " +
                      std::to_string(table_.n_max()) + "; regenerate with a larger nmax");
  }
  // A caller-chosen cutoff may sit below the decay regime; the partial sum
  // is still returned, with an unbounded error.
  BigReal tail(std::numeric_limits<double>::infinity(), 64);
  try {
    tail = tail_bound(last + 1, s, spec_, ctx_);
  } catch (const RegimeError&) {
    if (!cutoff_override) throw;
  }

  std::vector<const SubseriesMask*> masks;
  for (const auto& r : requests) masks.push_back(r.weight == Weight::all ? nullptr : &mask(r.N));

  const mpfr_prec_t prec = ctx_.working();
  const std::size_t count = requests.size();
  std::vector<BigComplex> sums(count, BigComplex(prec));
  std::vector<BigReal> errs(count, BigReal(0L, 64));
  std::vector<BigReal> mags(count, BigReal(0L, 64));

  TermEvaluator terms(s, spec_, ctx_);
  for (long n = 1; n <= last; ++n) {
    const Coefficient& coeff = table_[static_cast<std::size_t>(n)];
    if (coeff.is_zero()) continue;
    std::vector<bool> uses(count, false);
    bool any = false;
    for (std::size_t i = 0; i < count; ++i) {
      bool smooth = masks[i] == nullptr || masks[i]->is_smooth(static_cast<std::size_t>(n));
      uses[i] = requests[i].weight == Weight::complement ? !smooth : smooth;
      any = any || uses[i];
    }
    if (!any) continue;
    ComplexEstimate t = terms.term(n);
    BigReal a_n = coeff.to_real(prec);
    BigComplex weighted = t.value * a_n;
    BigReal abs_a = abs(a_n).rounded(64);
    BigReal term_err = abs_a * t.abs_error;
    BigReal term_mag = abs(weighted).rounded(64);
    for (std::size_t i = 0; i < count; ++i) {
      if (!uses[i]) continue;
      sums[i] += weighted;
      errs[i] += term_err;
      mags[i] += term_mag;
    }
  }

  std::vector<ComplexEstimate> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    BigComplex value = sums[i].rounded(ctx_.output());
    BigReal err = errs[i] + ldexp(mags[i], -static_cast<long>(prec) + 4) + tail + rounding_error(value, ctx_.bits());
    out.push_back({std::move(value), std::move(err)});
  }
  return out;
}

ComplexEstimate SeriesEngine::evaluate(const BigComplex& s, const Mode& mode, const BigReal& target,
                                       std::optional<long> cutoff_override) const {
  return evaluate(s, std::vector<Mode>{mode}, target, cutoff_override).front();
}

std::vector<ComplexEstimate> SeriesEngine::evaluate(const BigComplex& s, const std::vector<Mode>& modes,
                                                    const BigReal& target,
                                                    std::optional<long> cutoff_override) const {
  std::vector<Request> requests;
  for (const auto& m : modes) {
    if (!m.full && m.N < 1) throw PreconditionError("approximation mode needs N >= 1");
    requests.push_back(m.full ? Request{Weight::all, 0} : Request{Weight::smooth, m.N});
  }
  return run(s, requests, target, cutoff_override);
}

ComplexEstimate SeriesEngine::error_series(const BigComplex& s, int N, const BigReal& target,
                                           std::optional<long> cutoff_override) const {
  if (N < 1) throw PreconditionError("error_series needs N >= 1");
  return run(s, {Request{Weight::complement, N}}, target, cutoff_override).front();
}

ComplexEstimate lambda_full(const BigComplex& s, const CoefficientTable& table, const EigenformSpec& spec,
                            const ApproxConfig& cfg, const PrecisionContext& ctx) {
  cfg.validate();
  return SeriesEngine(table, spec, ctx).evaluate(s, Mode::full_mode(), cfg.target_abs_error, cfg.n_cutoff_override);
}

ComplexEstimate lambda_N(const BigComplex& s, const CoefficientTable& table, const EigenformSpec& spec,
                         const ApproxConfig& cfg, const PrecisionContext& ctx) {
  cfg.validate();
  return SeriesEngine(table, spec, ctx).evaluate(s, Mode::approx(cfg.N), cfg.target_abs_error, cfg.n_cutoff_override);
}

ComplexEstimate error_series(const BigComplex& s, const CoefficientTable& table, const EigenformSpec& spec, int N,
                             const ApproxConfig& cfg, const PrecisionContext& ctx) {
  cfg.validate();
  return SeriesEngine(table, spec, ctx).error_series(s, N, cfg.target_abs_error, cfg.n_cutoff_override);
}

}  // namespace lfapprox
