#include "lfapprox/numerics/big_complex.hpp"

#include <ostream>

namespace lfapprox {

std::string BigComplex::to_string(int digits) const {
  std::string im = im_.to_string(digits);
  if (im.empty() || im[0] != '-') im = "+" + im;
  return re_.to_string(digits) + im + "i";
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  *this = *this * rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  *this = *this / rhs;
  return *this;
}

BigComplex& BigComplex::operator+=(const BigReal& rhs) {
  re_ += rhs;
  if (rhs.precision() > im_.precision()) im_.set_precision_round(rhs.precision());
  return *this;
}

BigComplex& BigComplex::operator-=(const BigReal& rhs) {
  re_ -= rhs;
  if (rhs.precision() > im_.precision()) im_.set_precision_round(rhs.precision());
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

BigComplex& BigComplex::operator*=(long rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(long rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  mpfr_prec_t prec = std::max(a.precision(), b.precision());
  BigReal re(prec), im(prec);
  // re = a.re*b.re - a.im*b.im, im = a.re*b.im + a.im*b.re; fused via fmms/fmma.
  mpfr_fmms(re.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmma(im.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
  return BigComplex(std::move(re), std::move(im));
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  mpfr_prec_t prec = std::max(a.precision(), b.precision());
  BigReal den(prec), re(prec), im(prec);
  mpfr_fmma(den.raw(), b.re_.raw(), b.re_.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmma(re.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmms(im.raw(), a.im_.raw(), b.re_.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
  re /= den;
  im /= den;
  return BigComplex(std::move(re), std::move(im));
}

BigComplex operator/(const BigReal& a, const BigComplex& b) {
  mpfr_prec_t prec = std::max(a.precision(), b.precision());
  BigReal den(prec);
  mpfr_fmma(den.raw(), b.re_.raw(), b.re_.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
  BigReal scale = a / den;
  return BigComplex(b.re_ * scale, -(b.im_ * scale));
}

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << z.to_string(static_cast<int>(os.precision()));
}

BigReal abs(const BigComplex& z) { return hypot(z.re(), z.im()); }

BigReal norm(const BigComplex& z) {
  BigReal out(z.precision());
  mpfr_fmma(out.raw(), z.re().raw(), z.re().raw(), z.im().raw(), z.im().raw(), MPFR_RNDN);
  return out;
}

BigReal arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re(), -z.im()); }

BigComplex exp(const BigComplex& z) {
  BigReal mag = exp(z.re());
  BigReal s, c;
  sin_cos(z.im(), s, c);
  return BigComplex(mag * c, mag * s);
}

BigComplex log(const BigComplex& z) { return BigComplex(log(abs(z)), arg(z)); }

BigComplex sqrt(const BigComplex& z) {
  mpfr_prec_t prec = z.precision();
  if (z.is_zero()) return BigComplex(prec);
  // Stable form: w = sqrt((|z| + |re|)/2), then split by the sign of re.
  BigReal w = sqrt((abs(z) + abs(z.re())) / 2L);
  if (z.re().sign() >= 0) {
    return BigComplex(w, z.im() / (2L * w));
  }
  BigReal im = w;
  if (z.im().sign() < 0) im = -im;
  return BigComplex(abs(z.im()) / (2L * w), im);
}

BigComplex sin(const BigComplex& z) {
  BigReal s, c, sh, ch;
  sin_cos(z.re(), s, c);
  sinh_cosh(z.im(), sh, ch);
  return BigComplex(s * ch, c * sh);
}

BigComplex cos(const BigComplex& z) {
  BigReal s, c, sh, ch;
  sin_cos(z.re(), s, c);
  sinh_cosh(z.im(), sh, ch);
  return BigComplex(c * ch, -(s * sh));
}

BigComplex pow_from_log(const BigReal& log_base, const BigComplex& z) { return exp(z * log_base); }

BigComplex powi(const BigComplex& z, unsigned n) {
  BigComplex result(BigReal(1L, z.precision()));
  BigComplex base = z;
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return result;
}

BigReal distance(const BigComplex& a, const BigComplex& b) { return abs(a - b); }

}  // namespace lfapprox
