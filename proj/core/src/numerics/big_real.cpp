#include "lfapprox/numerics/big_real.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "lfapprox/errors.hpp"

namespace lfapprox {

namespace {

mpfr_prec_t join(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigReal::BigReal(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(double v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigReal::BigReal(long v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}

BigReal BigReal::from_string(std::string_view text, mpfr_prec_t prec) {
  BigReal out(prec);
  std::string owned(text);
  char* end = nullptr;
  if (!owned.empty()) mpfr_strtofr(out.value_, owned.c_str(), &end, 10, MPFR_RNDN);
  if (owned.empty() || end != owned.c_str() + owned.size() || !out.is_finite()) {
    throw ParseError("not a decimal number: '" + owned + "'");
  }
  return out;
}

BigReal BigReal::pi(mpfr_prec_t prec) {
  BigReal out(prec);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::log2_const(mpfr_prec_t prec) {
  BigReal out(prec);
  mpfr_const_log2(out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::exp2i(long e, mpfr_prec_t prec) {
  BigReal out(1L, prec);
  mpfr_mul_2si(out.value_, out.value_, e, MPFR_RNDN);
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  // Steal the limb storage; the moved-from object keeps a null limb pointer
  // which the destructor and assignment operators recognise.
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (value_[0]._mpfr_d == nullptr) {
    mpfr_init2(value_, other.precision());
  } else if (precision() != other.precision()) {
    mpfr_set_prec(value_, other.precision());
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this == &other) return *this;
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
  return *this;
}

BigReal::~BigReal() {
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
}

BigReal BigReal::rounded(mpfr_prec_t prec) const {
  BigReal out(prec);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

void BigReal::set_precision_round(mpfr_prec_t prec) { mpfr_prec_round(value_, prec, MPFR_RNDN); }

long BigReal::exponent2() const {
  if (is_zero() || !is_finite()) return LONG_MIN;
  return mpfr_get_exp(value_);
}

double BigReal::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, value_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string BigReal::to_string(int digits) const {
  if (!is_finite()) {
    if (mpfr_nan_p(value_)) return "nan";
    return sign() < 0 ? "-inf" : "inf";
  }
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398)) + 1;
  }
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

std::string BigReal::to_fixed(int decimals) const {
  int n = mpfr_snprintf(nullptr, 0, "%.*Rf", decimals, value_);
  std::vector<char> buf(static_cast<size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", decimals, value_);
  return std::string(buf.data());
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(double rhs) {
  mpfr_mul_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out(join(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out(join(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out(join(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal out(join(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator+(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_add_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_sub_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_mul_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_div_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_sub(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_div(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator*(const BigReal& a, double b) {
  BigReal out(a.precision());
  mpfr_mul_d(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator+(const BigReal& a, double b) {
  BigReal out(a.precision());
  mpfr_add_d(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(const BigReal& a, double b) {
  BigReal out(a.precision());
  mpfr_sub_d(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

BigReal operator-(double a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_d_sub(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

BigReal operator/(const BigReal& a, double b) {
  BigReal out(a.precision());
  mpfr_div_d(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, double b) {
  if (mpfr_nan_p(a.value_) || std::isnan(b)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  return os << x.to_string(static_cast<int>(os.precision()));
}

#define LFAPPROX_UNARY(name, fn)               \
  BigReal name(const BigReal& x) {             \
    BigReal out(x.precision());                \
    fn(out.raw(), x.raw(), MPFR_RNDN);         \
    return out;                                \
  }

LFAPPROX_UNARY(abs, mpfr_abs)
LFAPPROX_UNARY(sqrt, mpfr_sqrt)
LFAPPROX_UNARY(exp, mpfr_exp)
LFAPPROX_UNARY(log, mpfr_log)
LFAPPROX_UNARY(sin, mpfr_sin)
LFAPPROX_UNARY(cos, mpfr_cos)
LFAPPROX_UNARY(sinh, mpfr_sinh)
LFAPPROX_UNARY(cosh, mpfr_cosh)

#undef LFAPPROX_UNARY

void sin_cos(const BigReal& x, BigReal& s, BigReal& c) {
  s = BigReal(x.precision());
  c = BigReal(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

void sinh_cosh(const BigReal& x, BigReal& sh, BigReal& ch) {
  sh = BigReal(x.precision());
  ch = BigReal(x.precision());
  mpfr_sinh_cosh(sh.raw(), ch.raw(), x.raw(), MPFR_RNDN);
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal out(std::max(x.precision(), y.precision()));
  mpfr_atan2(out.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigReal hypot(const BigReal& x, const BigReal& y) {
  BigReal out(std::max(x.precision(), y.precision()));
  mpfr_hypot(out.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal out(std::max(x.precision(), y.precision()));
  mpfr_pow(out.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return out;
}

BigReal floor(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_floor(out.raw(), x.raw());
  return out;
}

BigReal round(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_round(out.raw(), x.raw());
  return out;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal out(x.precision());
  mpfr_mul_2si(out.raw(), x.raw(), e, MPFR_RNDN);
  return out;
}

const BigReal& max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }
const BigReal& min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }

}  // namespace lfapprox
