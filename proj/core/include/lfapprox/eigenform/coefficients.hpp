#pragma once

#include <cstddef>
#include <gmpxx.h>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lfapprox/eigenform/form.hpp"
#include "lfapprox/numerics/big_real.hpp"
#include "lfapprox/numerics/precision.hpp"

namespace lfapprox {

// A Fourier coefficient: an exact integer, or a decimal string parsed at the
// precision of each use.
class Coefficient {
 public:
  Coefficient() : value_(mpz_class(0)) {}
  Coefficient(mpz_class v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static Coefficient decimal(std::string text);

  bool is_exact() const { return std::holds_alternative<mpz_class>(value_); }
  const mpz_class& exact() const { return std::get<mpz_class>(value_); }
  bool is_zero() const;
  BigReal to_real(mpfr_prec_t prec) const;
  // Decimal text as written to files.
  std::string to_string() const;

  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.value_ == b.value_; }

 private:
  std::variant<mpz_class, std::string> value_;
};

// a_1 .. a_nmax, indexed from 1.
using CoefficientSequence = std::vector<Coefficient>;

class CoefficientTable {
 public:
  enum class Source { eta_product, file };

  // Throws NormalizationError if a_1 != 1, PreconditionError if empty.
  CoefficientTable(CoefficientSequence coeffs, Source source);

  std::size_t n_max() const { return coeffs_.size(); }
  Source source() const { return source_; }
  const Coefficient& operator[](std::size_t n) const { return coeffs_.at(n - 1); }
  const CoefficientSequence& sequence() const { return coeffs_; }
  bool all_exact() const;
  // The first n entries.
  CoefficientTable prefix(std::size_t n) const;

 private:
  CoefficientSequence coeffs_;
  Source source_;
};

// Largest n_max delta_coefficients accepts by default.
inline constexpr long kDefaultCoefficientBudget = 100000;
// Above this the fixed-width accumulation used by the expansion could no
// longer hold tau(n) exactly.
inline constexpr long kMaxDeltaCoefficients = 1000000;

// tau(1..n_max) from q * prod_{m>=1} (1 - q^m)^24. Throws ResourceError when
// n_max exceeds the budget (or kMaxDeltaCoefficients).
CoefficientTable delta_coefficients(long n_max, long budget = kDefaultCoefficientBudget);

// Header carried by cache files: "# eigenform k=<k> C=<C> P=<P> nmax=<n>".
struct CoefficientHeader {
  int weight_k = 0;
  long level_C = 0;
  int sign_P = 0;
  long n_max = 0;
  std::string to_string() const;
  bool matches(const EigenformSpec& spec) const;
};

// "n value" pairs, '#' comments, blank lines skipped. Throws ParseError on a
// malformed line or a gap in the indices, NormalizationError if a_1 != 1.
CoefficientTable parse_coefficients(std::istream& in, const std::string& origin = "<stream>");
CoefficientTable load_coefficients(const std::string& path, const EigenformSpec& spec);
std::optional<CoefficientHeader> read_coefficient_header(const std::string& path);

void write_coefficients(std::ostream& out, const CoefficientTable& table, const EigenformSpec& spec);
// Throws IoError.
void write_coefficients(const std::string& path, const CoefficientTable& table, const EigenformSpec& spec);

// Flags the p_N-smooth integers in 1..n_max.
class SubseriesMask {
 public:
  SubseriesMask(std::size_t n_max, int N);

  int N() const { return N_; }
  long p_N() const { return p_N_; }
  std::size_t n_max() const { return smooth_.size(); }
  bool is_smooth(std::size_t n) const { return smooth_.at(n - 1); }

 private:
  int N_;
  long p_N_;
  std::vector<bool> smooth_;
};

// b_n = a_n on p_N-smooth n, else 0.
CoefficientSequence smooth_subseries(const CoefficientTable& table, int N);
// c_n = a_n when n has a prime factor > p_N, else 0.
CoefficientSequence complement_series(const CoefficientTable& table, int N);

struct HeckeViolation {
  enum class Kind { multiplicative, prime_power, ramanujan_bound };
  Kind kind;
  // multiplicative: (m, n) with gcd 1; prime_power: (p, r) for the
  // recursion producing a_{p^(r+1)}; ramanujan_bound: (p, 0).
  long first;
  long second;
  std::string detail;
};

struct HeckeReport {
  std::size_t n_max = 0;
  std::vector<HeckeViolation> violations;
  bool empty() const { return violations.empty(); }
  bool contains(HeckeViolation::Kind kind, long first, long second) const;
};

// Checks a_mn = a_m a_n for coprime m, n, the prime-power recursion and
// |a_p| <= 2 p^((k-1)/2) on the whole table. Exact tables are compared
// exactly, others to 2^(-bits+8) relative.
HeckeReport hecke_consistency_check(const CoefficientTable& table, const EigenformSpec& spec,
                                    const PrecisionContext& ctx = PrecisionContext());

}  // namespace lfapprox
