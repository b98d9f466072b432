#include "lfapprox/euler/poles.hpp"

#include <algorithm>
#include <string>

#include "lfapprox/errors.hpp"

namespace lfapprox {

PoleLattice make_pole_lattice(const LocalFactor& f) {
  const mpfr_prec_t prec = f.ctx.working();
  PoleLattice lat;
  lat.p = f.p;
  lat.ctx = f.ctx;
  lat.log_p = log(BigReal(f.p, prec));
  lat.spacing = BigReal::pi(prec) * 2L / lat.log_p;
  for (const BigComplex* alpha : {&f.alpha1, &f.alpha2}) {
    if (alpha->is_zero()) continue;
    lat.real_parts.push_back(log(abs(*alpha)) / lat.log_p);
    lat.base_ordinates.push_back(arg(*alpha) / lat.log_p);
  }
  if (lat.base_ordinates.size() == 2) {
    BigReal d = (lat.base_ordinates[0] - lat.base_ordinates[1]) / lat.spacing;
    BigReal offset = abs(d - round(d)) * lat.spacing;
    BigReal dre = abs(lat.real_parts[0] - lat.real_parts[1]);
    BigReal tol = BigReal::exp2i(-f.ctx.bits() / 2, 64);
    lat.double_poles = offset < tol && dre < tol;
  }
  return lat;
}

std::vector<Pole> enumerate_poles(const PoleLattice& lattice, const BigReal& T) {
  if (!(T.sign() > 0)) throw PreconditionError("enumerate_poles: T must be positive");
  const mpfr_prec_t prec = lattice.ctx.working();
  std::vector<Pole> out;
  std::size_t families = lattice.double_poles ? 1 : lattice.base_ordinates.size();
  for (std::size_t j = 0; j < families; ++j) {
    const BigReal& base = lattice.base_ordinates[j];
    BigReal lo = (-T.rounded(prec) - base) / lattice.spacing;
    BigReal hi = (T.rounded(prec) - base) / lattice.spacing;
    long n_lo = -floor(-lo).to_long();
    long n_hi = floor(hi).to_long();
    for (long n = n_lo; n <= n_hi; ++n) {
      Pole pole;
      pole.location = BigComplex(lattice.real_parts[j], base + lattice.spacing * n);
      pole.order = lattice.double_poles ? 2 : 1;
      pole.p = lattice.p;
      pole.family = static_cast<int>(j);
      out.push_back(std::move(pole));
    }
  }
  std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) {
    if (a.location.im() != b.location.im()) return a.location.im() < b.location.im();
    return a.family < b.family;
  });
  return out;
}

std::vector<Pole> enumerate_poles(const LocalFactor& f, const BigReal& T) {
  return enumerate_poles(make_pole_lattice(f), T);
}

std::vector<PoleCoincidence> detect_coincident_poles(const std::vector<PoleLattice>& lattices, const BigReal& T,
                                                     const BigReal& tol) {
  std::vector<std::vector<Pole>> poles;
  poles.reserve(lattices.size());
  for (const auto& lat : lattices) {
    BigReal floor_tol = BigReal::exp2i(-lat.ctx.bits() / 2, 64);
    if (tol < floor_tol) {
      throw PreconditionError("coincidence tolerance is below 2^(-bits/2) for p=" + std::to_string(lat.p));
    }
    poles.push_back(enumerate_poles(lat, T));
  }

  std::vector<PoleCoincidence> out;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      const auto& b_list = poles[j];
      for (const Pole& a : poles[i]) {
        BigReal lo = a.location.im() - tol;
        auto it = std::lower_bound(b_list.begin(), b_list.end(), lo,
                                   [](const Pole& p, const BigReal& v) { return p.location.im() < v; });
        for (; it != b_list.end() && it->location.im() <= a.location.im() + tol; ++it) {
          BigReal dist = distance(a.location, it->location);
          if (dist <= tol) out.push_back({a, *it, i, j, dist});
        }
      }
    }
  }
  return out;
}

}  // namespace lfapprox
