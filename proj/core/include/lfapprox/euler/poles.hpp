#pragma once

#include <optional>
#include <vector>

#include "lfapprox/euler/local_factor.hpp"

namespace lfapprox {

// Poles of L_p: s = log(alpha_j)/log p + 2 pi i n / log p. The base ordinate
// of each family uses the principal logarithm, so it lies in
// (-pi/log p, pi/log p].
struct PoleLattice {
  long p = 0;
  BigReal log_p;
  BigReal spacing;              // 2 pi / log p
  std::vector<BigReal> real_parts;      // one per family
  std::vector<BigReal> base_ordinates;  // I_1, I_2 (families with a nonzero root)
  bool double_poles = false;    // both families land on the same points
  PrecisionContext ctx;
};

struct Pole {
  BigComplex location;
  int order = 1;
  long p = 0;   // 0 marks a pole of the gamma factor
  int family = 0;
};

PoleLattice make_pole_lattice(const LocalFactor& f);

// All lattice points with |Im| <= T, ascending in Im. Merged families are
// reported once with order 2.
std::vector<Pole> enumerate_poles(const PoleLattice& lattice, const BigReal& T);
std::vector<Pole> enumerate_poles(const LocalFactor& f, const BigReal& T);

struct PoleCoincidence {
  Pole first;
  Pole second;
  std::size_t first_lattice = 0;
  std::size_t second_lattice = 0;
  BigReal distance;
};

// Pairs of poles from different lattices (by position in the list) within
// tol of each other and with |Im| <= T. Throws PreconditionError when tol is
// below 2^(-bits/2) of the lattices' precision.
std::vector<PoleCoincidence> detect_coincident_poles(const std::vector<PoleLattice>& lattices, const BigReal& T,
                                                     const BigReal& tol);

}  // namespace lfapprox
