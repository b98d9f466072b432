#pragma once

#include <algorithm>
#include <iosfwd>
#include <string>
#include <utility>

#include "lfapprox/numerics/big_real.hpp"

namespace lfapprox {

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(re_.precision()) {}
  BigComplex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  static BigComplex i(mpfr_prec_t prec) { return BigComplex(0.0, 1.0, prec); }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }

  mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }
  BigComplex rounded(mpfr_prec_t prec) const { return BigComplex(re_.rounded(prec), im_.rounded(prec)); }

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  // "re+imi" with the given significant digits.
  std::string to_string(int digits = 0) const;

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);
  BigComplex& operator+=(const BigReal& rhs);
  BigComplex& operator-=(const BigReal& rhs);
  BigComplex& operator*=(const BigReal& rhs);
  BigComplex& operator/=(const BigReal& rhs);
  BigComplex& operator*=(long rhs);
  BigComplex& operator/=(long rhs);

  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator+(BigComplex a, const BigReal& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigReal& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  friend BigComplex operator+(const BigReal& a, BigComplex b) { return b += a; }
  friend BigComplex operator*(const BigReal& a, BigComplex b) { return b *= a; }
  friend BigComplex operator-(const BigReal& a, const BigComplex& b) { return BigComplex(a - b.re_, -b.im_); }
  friend BigComplex operator/(const BigReal& a, const BigComplex& b);
  friend BigComplex operator+(BigComplex a, long b) {
    a.re_ += b;
    return a;
  }
  friend BigComplex operator-(BigComplex a, long b) {
    a.re_ -= b;
    return a;
  }
  friend BigComplex operator-(long a, const BigComplex& b) { return BigComplex(a - b.re_, -b.im_); }
  friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
  friend BigComplex operator*(long a, BigComplex b) { return b *= a; }
  friend BigComplex operator/(BigComplex a, long b) { return a /= b; }

  // A double would silently narrow to long through the overloads above.
  friend BigComplex operator+(BigComplex, double) = delete;
  friend BigComplex operator-(BigComplex, double) = delete;
  friend BigComplex operator*(BigComplex, double) = delete;
  friend BigComplex operator/(BigComplex, double) = delete;

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  BigReal re_;
  BigReal im_;
};

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

BigReal abs(const BigComplex& z);
BigReal norm(const BigComplex& z);  // |z|^2
BigReal arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
// Principal branch, arg in (-pi, pi].
BigComplex log(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
// base^z for real base > 0, given log(base).
BigComplex pow_from_log(const BigReal& log_base, const BigComplex& z);
// z^n for integer n >= 0 by repeated squaring.
BigComplex powi(const BigComplex& z, unsigned n);
// Distance |a - b|.
BigReal distance(const BigComplex& a, const BigComplex& b);

}  // namespace lfapprox
