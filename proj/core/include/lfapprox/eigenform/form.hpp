#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lfapprox/numerics/big_complex.hpp"
#include "lfapprox/numerics/precision.hpp"

namespace lfapprox {

// Nebentypus values chi(r) for r mod C. Values are kept as decimal strings
// and parsed at whatever precision a caller asks for.
class CharacterTable {
 public:
  // The principal character mod C: 1 on units, 0 elsewhere.
  static CharacterTable principal(long modulus);
  // values[r] = (re, im) for r = 0..modulus-1.
  static CharacterTable from_values(long modulus, std::vector<std::pair<std::string, std::string>> values);

  long modulus() const { return modulus_; }
  bool is_principal() const { return principal_; }

  BigComplex at(long n, mpfr_prec_t prec) const;
  // Exact test for chi(n) = 0.
  bool vanishes_at(long n) const;

  // Checks chi(r) = 0 iff gcd(r, C) > 1, |chi(r)| = 1 otherwise, and
  // chi(ab) = chi(a) chi(b), all to 2^(-bits+8). Throws ToleranceError.
  void validate(const PrecisionContext& ctx) const;

 private:
  long modulus_ = 1;
  bool principal_ = true;
  std::vector<std::pair<std::string, std::string>> values_;
};

// Weight, level, functional-equation sign exponent and character of a
// Hecke eigenform. The sign is stored as the exponent P in (-1)^P.
struct EigenformSpec {
  int weight_k = 12;
  long level_C = 1;
  int sign_P = 0;
  CharacterTable chi = CharacterTable::principal(1);

  static EigenformSpec delta();

  // Throws PreconditionError on a malformed spec; validates chi.
  void validate(const PrecisionContext& ctx) const;

  // (-1)^P
  long sign() const { return sign_P == 0 ? 1 : -1; }
};

}  // namespace lfapprox
