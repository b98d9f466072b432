#pragma once

#include <cstdint>
#include <vector>

namespace lfapprox {

// All primes p <= limit, ascending.
std::vector<long> primes_up_to(long limit);

// p_N with p_1 = 2. Throws PreconditionError for N < 1.
long nth_prime(int N);

bool is_prime(long n);

// spf[n] = smallest prime factor of n for 2 <= n <= limit (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_prime_factors(long limit);

// Largest prime factor of n (1 for n = 1), using a precomputed table.
long largest_prime_factor(long n, const std::vector<std::int32_t>& spf);

long gcd(long a, long b);

}  // namespace lfapprox
