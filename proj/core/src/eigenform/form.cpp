#include "lfapprox/eigenform/form.hpp"

#include <string>

#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"

namespace lfapprox {

CharacterTable CharacterTable::principal(long modulus) {
  if (modulus < 1) throw PreconditionError("character modulus must be positive");
  CharacterTable t;
  t.modulus_ = modulus;
  t.principal_ = true;
  return t;
}

CharacterTable CharacterTable::from_values(long modulus, std::vector<std::pair<std::string, std::string>> values) {
  if (modulus < 1) throw PreconditionError("character modulus must be positive");
  if (values.size() != static_cast<std::size_t>(modulus)) {
    throw PreconditionError("character table needs " + std::to_string(modulus) + " values, got " +
                            std::to_string(values.size()));
  }
  CharacterTable t;
  t.modulus_ = modulus;
  t.principal_ = false;
  t.values_ = std::move(values);
  return t;
}

bool CharacterTable::vanishes_at(long n) const {
  if (principal_) return gcd(n, modulus_) != 1;
  const auto& v = values_[static_cast<std::size_t>(((n % modulus_) + modulus_) % modulus_)];
  return BigReal::from_string(v.first, 64).is_zero() && BigReal::from_string(v.second, 64).is_zero();
}

BigComplex CharacterTable::at(long n, mpfr_prec_t prec) const {
  if (principal_) return BigComplex(gcd(n, modulus_) == 1 ? 1.0 : 0.0, 0.0, prec);
  const auto& v = values_[static_cast<std::size_t>(((n % modulus_) + modulus_) % modulus_)];
  return BigComplex(BigReal::from_string(v.first, prec), BigReal::from_string(v.second, prec));
}

void CharacterTable::validate(const PrecisionContext& ctx) const {
  if (principal_) return;
  const mpfr_prec_t prec = ctx.working();
  const double tol = -static_cast<double>(ctx.bits()) + 8.0;
  for (long r = 0; r < modulus_; ++r) {
    BigComplex c = at(r, prec);
    if (gcd(r, modulus_) != 1) {
      if (!c.is_zero()) throw ToleranceError("chi(" + std::to_string(r) + ") must vanish: gcd with the level > 1");
      continue;
    }
    BigReal dev = abs(abs(c) - 1L);
    if (dev.log2_abs() > tol) throw ToleranceError("|chi(" + std::to_string(r) + ")| differs from 1");
  }
  for (long a = 1; a < modulus_; ++a) {
    for (long b = a; b < modulus_; ++b) {
      BigComplex prod = at(a, prec) * at(b, prec);
      BigComplex direct = at((a * b) % modulus_, prec);
      if (abs(prod - direct).log2_abs() > tol) {
        throw ToleranceError("chi is not multiplicative at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
      }
    }
  }
}

EigenformSpec EigenformSpec::delta() { return EigenformSpec{}; }

void EigenformSpec::validate(const PrecisionContext& ctx) const {
  if (weight_k < 2 || weight_k % 2 != 0) {
    throw PreconditionError("weight must be an even integer >= 2, got " + std::to_string(weight_k));
  }
  if (level_C < 1) throw PreconditionError("level must be positive");
  if (sign_P != 0 && sign_P != 1) throw PreconditionError("sign exponent P must be 0 or 1");
  if (chi.modulus() != level_C) throw PreconditionError("character modulus must equal the level");
  chi.validate(ctx);
}

}  // namespace lfapprox
