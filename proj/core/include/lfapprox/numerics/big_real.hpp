#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace lfapprox {

// Arbitrary-precision real number owning an mpfr_t. Every value carries its
// own mantissa precision; binary operations produce a result at the larger of
// the operand precisions, rounded to nearest.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 64);
  BigReal(double v, mpfr_prec_t prec);
  BigReal(long v, mpfr_prec_t prec);
  BigReal(int v, mpfr_prec_t prec) : BigReal(static_cast<long>(v), prec) {}
  BigReal(const mpz_class& v, mpfr_prec_t prec);

  // Parses a decimal literal ("-1.25e-3"). Throws ParseError.
  static BigReal from_string(std::string_view text, mpfr_prec_t prec);
  static BigReal pi(mpfr_prec_t prec);
  static BigReal log2_const(mpfr_prec_t prec);
  // 2^e exactly.
  static BigReal exp2i(long e, mpfr_prec_t prec);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  // Copy rounded to a new precision.
  BigReal rounded(mpfr_prec_t prec) const;
  void set_precision_round(mpfr_prec_t prec);

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
  // Binary exponent e with |x| in [2^(e-1), 2^e); LONG_MIN for zero.
  long exponent2() const;
  // log2|x| as a double; -inf for zero.
  double log2_abs() const;

  // Decimal rendering with the given number of significant digits
  // (0 selects enough digits to round-trip the mantissa).
  std::string to_string(int digits = 0) const;
  // Fixed-point rendering with `decimals` digits after the point.
  std::string to_fixed(int decimals) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);
  BigReal& operator*=(double rhs);

  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(long a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, double b);
  friend BigReal operator*(double a, const BigReal& b) { return b * a; }
  friend BigReal operator+(const BigReal& a, double b);
  friend BigReal operator+(double a, const BigReal& b) { return b + a; }
  friend BigReal operator-(const BigReal& a, double b);
  friend BigReal operator-(double a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, double b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, double b);
  friend bool operator==(const BigReal& a, double b) { return mpfr_cmp_d(a.value_, b) == 0; }

 private:
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
void sin_cos(const BigReal& x, BigReal& s, BigReal& c);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
void sinh_cosh(const BigReal& x, BigReal& sh, BigReal& ch);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal hypot(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal floor(const BigReal& x);
BigReal round(const BigReal& x);
// x * 2^e exactly.
BigReal ldexp(const BigReal& x, long e);
const BigReal& max(const BigReal& a, const BigReal& b);
const BigReal& min(const BigReal& a, const BigReal& b);

}  // namespace lfapprox
