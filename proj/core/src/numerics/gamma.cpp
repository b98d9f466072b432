#include "lfapprox/numerics/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <gmpxx.h>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "lfapprox/errors.hpp"

namespace lfapprox {

namespace {

// Stirling coefficients B_2j / (2j (2j-1)), j = 1, 2, ..., as exact
// rationals. Grown on demand under a lock; never shrinks.
class StirlingCoefficients {
 public:
  static StirlingCoefficients& instance() {
    static StirlingCoefficients table;
    return table;
  }

  // Coefficient j (1-based) rounded to prec, plus log2 of its magnitude.
  const std::vector<BigReal>& reals(size_t count, mpfr_prec_t prec) {
    thread_local std::map<mpfr_prec_t, std::vector<BigReal>> cache;
    auto& vec = cache[prec];
    if (vec.size() < count) {
      std::vector<mpq_class> exact = rationals(count);
      for (size_t j = vec.size(); j < count; ++j) {
        BigReal r(prec);
        mpfr_set_q(r.raw(), exact[j].get_mpq_t(), MPFR_RNDN);
        vec.push_back(std::move(r));
      }
    }
    return vec;
  }

  double log2_magnitude(size_t j) {
    std::lock_guard lock(mutex_);
    grow(j + 1);
    return log2_[j];
  }

 private:
  std::vector<mpq_class> rationals(size_t count) {
    std::lock_guard lock(mutex_);
    grow(count);
    return std::vector<mpq_class>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(count));
  }

  // Bernoulli numbers from sum_{i=0}^{n} C(n+1, i) B_i = 0.
  void grow(size_t count) {
    size_t need = 2 * count + 1;
    while (bernoulli_.size() < need) {
      size_t n = bernoulli_.size();
      if (n == 0) {
        bernoulli_.emplace_back(1);
        continue;
      }
      if (n > 1 && n % 2 == 1) {
        bernoulli_.emplace_back(0);
        continue;
      }
      mpq_class acc = 0;
      mpz_class binom = 1;  // C(n+1, 0)
      for (size_t i = 0; i < n; ++i) {
        acc += mpq_class(binom) * bernoulli_[i];
        binom = binom * static_cast<unsigned long>(n + 1 - i) / static_cast<unsigned long>(i + 1);
      }
      mpq_class b = -acc / mpq_class(binom);
      b.canonicalize();
      bernoulli_.push_back(b);
    }
    while (coeffs_.size() < count) {
      size_t j = coeffs_.size() + 1;
      mpq_class c = bernoulli_[2 * j] / mpq_class(static_cast<long>((2 * j) * (2 * j - 1)));
      c.canonicalize();
      BigReal mag(c.get_num(), 64);
      BigReal den(c.get_den(), 64);
      log2_.push_back(abs(mag).log2_abs() - den.log2_abs());
      coeffs_.push_back(c);
    }
  }

  std::mutex mutex_;
  std::vector<mpq_class> bernoulli_;
  std::vector<mpq_class> coeffs_;
  std::vector<double> log2_;
};

bool near_gamma_pole(const BigComplex& s, long tolerance_bits) {
  if (s.re() > 0.5) return false;
  BigReal n = round(s.re());
  if (n.sign() > 0) return false;
  BigReal dist = hypot(s.re() - n, s.im());
  return dist.log2_abs() < -static_cast<double>(tolerance_bits);
}

// log Gamma(w) by Stirling's series; requires Re(w) large enough for the
// remainder to fall below 2^-prec.
BigComplex log_gamma_stirling(const BigComplex& w, mpfr_prec_t prec) {
  auto& table = StirlingCoefficients::instance();
  BigReal absw = abs(w);
  double log2w = absw.log2_abs();
  double theta = std::fabs(arg(w).to_double());
  double log2sec = -std::log2(std::cos(theta / 2.0));
  double target = -static_cast<double>(prec) + std::min(0.0, log2w) - 2.0;

  // Terms needed: the remainder after M terms is bounded by
  // |c_{M+1}| |w|^-(2M+1) sec(theta/2)^(2M+2).
  size_t terms = 0;
  for (size_t j = 0;; ++j) {
    double bound = table.log2_magnitude(j) - static_cast<double>(2 * j + 1) * log2w +
                   static_cast<double>(2 * j + 2) * log2sec;
    if (bound < target) {
      terms = j;
      break;
    }
    if (j > 4 * static_cast<size_t>(prec) + 64) {
      throw PrecisionError("Stirling series did not reach 2^-" + std::to_string(prec) + " at |w|=" +
                           absw.to_string(6));
    }
  }

  BigComplex winv = BigReal(1L, prec) / w;
  BigComplex winv2 = winv * winv;
  BigComplex power = winv;
  BigComplex series(prec);
  const auto& coeffs = table.reals(terms, prec);
  for (size_t j = 0; j < terms; ++j) {
    series += power * coeffs[j];
    power *= winv2;
  }
  BigReal half(0.5, prec);
  BigComplex main = (w - half) * log(w) - w;
  BigReal half_log_2pi = log(BigReal::pi(prec) * 2L) / 2L;
  return main + half_log_2pi + series;
}

BigComplex gamma_right_half(const BigComplex& z, mpfr_prec_t prec) {
  // Shift threshold: the smallest Stirling term is about e^(-2 pi |w|).
  const double shift_target = 0.16 * static_cast<double>(prec) + 12.0;
  double re = z.re().to_double();
  long shift = re >= shift_target ? 0 : static_cast<long>(std::ceil(shift_target - re));
  mpfr_prec_t inner = prec + 16;
  BigComplex zz = z.rounded(inner);
  BigComplex w = zz + shift;
  BigComplex result = exp(log_gamma_stirling(w, inner));
  if (shift > 0) {
    BigComplex product = zz;
    for (long i = 1; i < shift; ++i) product *= (zz + i);
    result /= product;
  }
  return result.rounded(prec);
}

}  // namespace

BigReal distance_to_gamma_pole(const BigComplex& s) {
  BigReal n = round(s.re());
  if (n.sign() > 0) n = BigReal(0L, s.precision());
  return hypot(s.re() - n, s.im());
}

namespace detail {

BigComplex gamma_at(const BigComplex& s, mpfr_prec_t prec, long pole_tolerance_bits) {
  if (!s.is_finite()) throw PreconditionError("gamma: non-finite argument");
  if (near_gamma_pole(s, pole_tolerance_bits)) {
    throw PoleError("gamma: argument " + s.to_string(20) + " is within 2^-" + std::to_string(pole_tolerance_bits) +
                    " of a pole");
  }
  BigComplex z = s.rounded(prec);
  if (z.re() >= 0.5) return gamma_right_half(z, prec);

  // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)), with sin(pi z)
  // reduced by the nearest integer so the zero of sin is resolved exactly.
  mpfr_prec_t inner = prec + 16;
  BigComplex zz = z.rounded(inner);
  BigReal n = round(zz.re());
  BigComplex frac(zz.re() - n, zz.im());
  BigReal pi = BigReal::pi(inner);
  BigComplex sin_pi = sin(frac * pi);
  if ((n.to_long() & 1L) != 0) sin_pi = -sin_pi;
  BigComplex reflected = gamma_right_half(BigComplex(1L - zz.re(), -zz.im()), inner);
  return (pi / (sin_pi * reflected)).rounded(prec);
}

bool incomplete_gamma_uses_series(const BigComplex& s, const BigReal& a, long pole_tolerance_bits) {
  if (a >= abs(s) + 1L) return false;
  return !near_gamma_pole(s, pole_tolerance_bits);
}

namespace {

ComplexEstimate incomplete_gamma_cf(const BigComplex& s, const BigReal& a, mpfr_prec_t prec) {
  // Gamma(s, a) = e^-a a^s / (a + 1 - s - 1(1-s)/(a + 3 - s - 2(2-s)/(a + 5 - s - ...)))
  const long budget = 400L * static_cast<long>(prec) + 20000L;
  BigComplex ss = s.rounded(prec);
  BigReal aa = a.rounded(prec);
  BigReal tiny = BigReal::exp2i(-8L * static_cast<long>(prec), prec);
  BigComplex b = (aa + 1L) - ss;
  BigComplex f = b;
  if (f.is_zero()) f = BigComplex(tiny);
  BigComplex c = f;
  BigComplex d(prec);
  const double stop = -static_cast<double>(prec) - 1.0;
  long i = 1;
  for (; i <= budget; ++i) {
    BigComplex an = (ss - i) * i;  // -i (i - s)
    b.re() += 2L;
    d = b + an * d;
    if (d.is_zero()) d = BigComplex(tiny);
    c = b + an / c;
    if (c.is_zero()) c = BigComplex(tiny);
    d = BigReal(1L, prec) / d;
    BigComplex delta = c * d;
    f *= delta;
    BigComplex dev = delta - 1L;
    if (std::max(dev.re().log2_abs(), dev.im().log2_abs()) < stop) break;
  }
  if (i > budget) {
    throw ConvergenceError("incomplete gamma continued fraction did not converge within " + std::to_string(budget) +
                           " iterations for s=" + s.to_string(12) + ", a=" + a.to_string(12));
  }
  BigComplex value = exp(ss * log(aa) - aa) / f;
  BigReal err = ldexp(abs(value).rounded(64), -static_cast<long>(prec)) * static_cast<long>(4 + i / 8);
  return {std::move(value), std::move(err)};
}

// gamma(s, a) = a^s e^-a sum_{n>=0} a^n / (s (s+1) ... (s+n)).
ComplexEstimate lower_incomplete_series(const BigComplex& s, const BigReal& a, mpfr_prec_t prec) {
  BigComplex ss = s.rounded(prec);
  BigReal aa = a.rounded(prec);
  BigComplex term = BigReal(1L, prec) / ss;
  BigComplex sum = term;
  BigReal max_term = abs(term).rounded(64);
  const double a_d = aa.to_double();
  const long budget = 40L * static_cast<long>(prec) + 8L * static_cast<long>(a_d) + 1000L;
  long n = 1;
  for (; n <= budget; ++n) {
    term = term * aa / (ss + n);
    sum += term;
    BigReal mag = abs(term).rounded(64);
    if (mag > max_term) max_term = mag;
    if (static_cast<double>(n) > a_d &&
        mag.log2_abs() < abs(sum).rounded(64).log2_abs() - static_cast<double>(prec) - 2.0) {
      break;
    }
  }
  if (n > budget) {
    throw ConvergenceError("lower incomplete gamma series did not converge for s=" + s.to_string(12));
  }
  BigComplex prefactor = exp(ss * log(aa) - aa);
  BigComplex value = prefactor * sum;
  BigReal err = ldexp(abs(prefactor).rounded(64) * max_term, -static_cast<long>(prec)) * (n + 4L);
  return {std::move(value), std::move(err)};
}

}  // namespace

ComplexEstimate upper_incomplete_gamma_at(const BigComplex& s, const BigReal& a, mpfr_prec_t prec,
                                          long pole_tolerance_bits, const BigComplex* gamma_s) {
  if (!(a.sign() > 0)) throw PreconditionError("upper_incomplete_gamma: a must be positive");
  if (!incomplete_gamma_uses_series(s, a, pole_tolerance_bits)) return incomplete_gamma_cf(s, a, prec);

  // Gamma(s) - gamma(s, a); raise the precision by the number of bits that
  // cancel and try again.
  mpfr_prec_t p = prec;
  for (int attempt = 0; attempt < 4; ++attempt) {
    BigComplex full = (gamma_s != nullptr && gamma_s->precision() >= p) ? gamma_s->rounded(p)
                                                                        : gamma_at(s, p, pole_tolerance_bits);
    ComplexEstimate lower = lower_incomplete_series(s, a, p);
    BigComplex value = full - lower.value;
    double scale = std::max(abs(full).rounded(64).log2_abs(), abs(lower.value).rounded(64).log2_abs());
    double loss = scale - abs(value).rounded(64).log2_abs();
    if (!std::isfinite(loss)) loss = static_cast<double>(p);
    if (loss <= 8.0 || p >= prec + static_cast<mpfr_prec_t>(loss) + 8) {
      BigReal err = lower.abs_error + ldexp(BigReal(1L, 64), static_cast<long>(std::ceil(scale)) - p + 2);
      return {value.rounded(prec), std::move(err)};
    }
    p = prec + static_cast<mpfr_prec_t>(std::ceil(loss)) + 16;
  }
  return incomplete_gamma_cf(s, a, prec);
}

}  // namespace detail

ComplexEstimate gamma(const BigComplex& s, const PrecisionContext& ctx) {
  BigComplex value = detail::gamma_at(s, ctx.working(), ctx.bits() / 2).rounded(ctx.output());
  BigReal err = rounding_error(value, ctx.bits());
  return {std::move(value), std::move(err)};
}

ComplexEstimate upper_incomplete_gamma(const BigComplex& s, const BigReal& a, const PrecisionContext& ctx) {
  ComplexEstimate r = detail::upper_incomplete_gamma_at(s, a, ctx.working(), ctx.bits() / 2);
  BigComplex value = r.value.rounded(ctx.output());
  BigReal err = r.abs_error + rounding_error(value, ctx.bits());
  return {std::move(value), std::move(err)};
}

double decay_threshold(double sigma) {
  // h(t) = (sigma - 1) log t - t / 2 must be negative on (m, inf).
  auto h = [sigma](double t) { return (sigma - 1.0) * std::log(t) - t / 2.0; };
  if (sigma == 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  if (sigma > 1.0) {
    double peak = 2.0 * (sigma - 1.0);
    if (h(peak) < 0.0) return 0.0;
    lo = peak;
    hi = std::max(2.0 * peak, 1.0);
    while (h(hi) >= 0.0) hi *= 2.0;
  } else {
    // h decreases from +inf; find the single root.
    lo = 1e-300;
    while (h(hi) >= 0.0) hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (h(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi * (1.0 + 1e-12) + 1e-12;
}

AnalyticFunction exact_function(std::function<BigComplex(const BigComplex&)> f, int bits) {
  return [f = std::move(f), bits](const BigComplex& s) -> ComplexEstimate {
    BigComplex v = f(s);
    BigReal err = rounding_error(v, bits);
    return {std::move(v), std::move(err)};
  };
}

std::vector<ComplexEstimate> cauchy_derivatives(const AnalyticFunction& f, const BigComplex& s0, int max_order,
                                                const BigReal& radius, int points, const PrecisionContext& ctx) {
  if (max_order < 0) throw PreconditionError("cauchy_derivative: order must be nonnegative");
  if (points < 8 * (max_order + 1)) {
    throw PreconditionError("cauchy_derivative: need at least 8*(order+1) points, got " + std::to_string(points));
  }
  if (!(radius.sign() > 0)) throw PreconditionError("cauchy_derivative: radius must be positive");

  const mpfr_prec_t prec = ctx.working();
  const int max_points = points << 12;
  BigReal r = radius.rounded(prec);
  BigComplex center = s0.rounded(prec);
  BigReal two_pi = BigReal::pi(prec) * 2L;

  // samples[j] = f(s0 + r e^(2 pi i j / M)) for the current M.
  std::vector<BigComplex> samples;
  BigReal max_abs(0L, 64);
  BigReal max_err(0L, 64);
  auto sample = [&](int j, int m) {
    BigReal angle = two_pi * static_cast<long>(j) / static_cast<long>(m);
    BigReal sn, cs;
    sin_cos(angle, sn, cs);
    ComplexEstimate v = f(center + BigComplex(r * cs, r * sn));
    BigReal mag = abs(v.value).rounded(64);
    if (mag > max_abs) max_abs = mag;
    if (v.abs_error > max_err) max_err = v.abs_error.rounded(64);
    return std::move(v.value);
  };

  auto transform = [&](int m) {
    // D_k = k! / (M r^k) sum_j f_j w^(-jk), w = e^(2 pi i / M).
    std::vector<BigComplex> out;
    BigReal factorial(1L, prec);
    BigReal rpow(1L, prec);
    for (int k = 0; k <= max_order; ++k) {
      if (k > 0) {
        factorial *= static_cast<long>(k);
        rpow *= r;
      }
      BigComplex acc(prec);
      for (int j = 0; j < m; ++j) {
        long idx = (static_cast<long>(j) * k) % m;
        BigReal angle = -(two_pi * idx) / static_cast<long>(m);
        BigReal sn, cs;
        sin_cos(angle, sn, cs);
        acc += samples[static_cast<size_t>(j)] * BigComplex(cs, sn);
      }
      out.push_back(acc * (factorial / (rpow * static_cast<long>(m))));
    }
    return out;
  };

  int m = points;
  samples.reserve(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) samples.push_back(sample(j, m));
  std::vector<BigComplex> previous = transform(m);

  while (true) {
    if (2 * m > max_points) {
      throw ConvergenceError("cauchy_derivative: no agreement after doubling to " + std::to_string(m) + " points");
    }
    std::vector<BigComplex> doubled;
    doubled.reserve(static_cast<size_t>(2 * m));
    for (int j = 0; j < m; ++j) {
      doubled.push_back(std::move(samples[static_cast<size_t>(j)]));
      doubled.push_back(sample(2 * j + 1, 2 * m));
    }
    samples = std::move(doubled);
    m *= 2;
    std::vector<BigComplex> current = transform(m);

    bool converged = true;
    std::vector<ComplexEstimate> result;
    BigReal factorial(1L, 64);
    BigReal rpow(1L, 64);
    BigReal r64 = r.rounded(64);
    for (int k = 0; k <= max_order; ++k) {
      if (k > 0) {
        factorial *= static_cast<long>(k);
        rpow *= r64;
      }
      BigReal scale = factorial / rpow;
      BigReal floor_noise = ldexp(max_abs * scale, -ctx.bits());
      BigReal input_noise = max_err * scale;
      BigReal diff = abs(current[static_cast<size_t>(k)] - previous[static_cast<size_t>(k)]).rounded(64);
      if (diff > floor_noise + input_noise * 4L) converged = false;
      result.push_back({current[static_cast<size_t>(k)].rounded(ctx.output()), diff + floor_noise + input_noise});
    }
    if (converged) return result;
    previous = std::move(current);
  }
}

ComplexEstimate cauchy_derivative(const AnalyticFunction& f, const BigComplex& s0, int order, const BigReal& radius,
                                  int points, const PrecisionContext& ctx) {
  auto all = cauchy_derivatives(f, s0, order, radius, points, ctx);
  return std::move(all.back());
}

}  // namespace lfapprox
