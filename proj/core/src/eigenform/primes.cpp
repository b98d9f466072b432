#include "lfapprox/eigenform/primes.hpp"

#include <cmath>
#include <string>

#include "lfapprox/errors.hpp"

namespace lfapprox {

std::vector<long> primes_up_to(long limit) {
  std::vector<long> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (long p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (long m = p * p; m <= limit; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return out;
}

long nth_prime(int N) {
  if (N < 1) throw PreconditionError("nth_prime: N must be >= 1, got " + std::to_string(N));
  double n = N;
  long bound = N < 6 ? 15 : static_cast<long>(n * (std::log(n) + std::log(std::log(n)))) + 3;
  auto primes = primes_up_to(bound);
  return primes.at(static_cast<std::size_t>(N - 1));
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int32_t> smallest_prime_factors(long limit) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(std::max(limit, 1L)) + 1, 0);
  for (long p = 2; p <= limit; ++p) {
    if (spf[static_cast<std::size_t>(p)] != 0) continue;
    for (long m = p; m <= limit; m += p) {
      if (spf[static_cast<std::size_t>(m)] == 0) spf[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(p);
    }
  }
  return spf;
}

long largest_prime_factor(long n, const std::vector<std::int32_t>& spf) {
  long largest = 1;
  while (n > 1) {
    long p = spf.at(static_cast<std::size_t>(n));
    largest = p;
    while (n % p == 0) n /= p;
  }
  return largest;
}

long gcd(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace lfapprox
