#pragma once

#include <mpfr.h>

namespace lfapprox {

// Working precision for every numeric operation. Evaluations run at
// bits + guard_bits and the public results are rounded back to bits.
class PrecisionContext {
 public:
  static constexpr int kMinBits = 64;
  static constexpr int kMinGuardBits = 16;
  static constexpr int kDefaultGuardBits = 32;

  explicit PrecisionContext(int bits = 256, int guard_bits = kDefaultGuardBits);

  int bits() const { return bits_; }
  int guard_bits() const { return guard_bits_; }
  mpfr_prec_t working() const { return bits_ + guard_bits_; }
  mpfr_prec_t output() const { return bits_; }

  // Same guard bits, different target precision.
  PrecisionContext with_bits(int bits) const { return PrecisionContext(bits, guard_bits_); }

  bool operator==(const PrecisionContext&) const = default;

 private:
  int bits_;
  int guard_bits_;
};

}  // namespace lfapprox
