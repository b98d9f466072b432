#include "lfapprox/numerics/precision.hpp"

#include <string>

#include "lfapprox/errors.hpp"

namespace lfapprox {

PrecisionContext::PrecisionContext(int bits, int guard_bits) : bits_(bits), guard_bits_(guard_bits) {
  if (bits < kMinBits) {
    throw PreconditionError("precision must be at least " + std::to_string(kMinBits) + " bits, got " +
                            std::to_string(bits));
  }
  if (guard_bits < kMinGuardBits) {
    throw PreconditionError("guard bits must be at least " + std::to_string(kMinGuardBits) + ", got " +
                            std::to_string(guard_bits));
  }
}

}  // namespace lfapprox
