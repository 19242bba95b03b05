#pragma once

#include <cstdint>
#include <vector>

#include "bracelet/ring.hpp"

// Brute-force references that share no code with the series engine.
namespace bracelet::oracles {

/// Largest n accepted by the enumeration oracles.
inline constexpr int kEnumerationBudget = 60;

/// Number of partitions of n, by explicit enumeration of nonincreasing part
/// sequences. Throws std::out_of_range for n < 0 or n > kEnumerationBudget.
std::uint64_t count_partitions_bruteforce(int n);

/// Partitions of n with no part divisible by ell (ell >= 2), by enumeration.
std::uint64_t count_l_regular_bruteforce(int ell, int n);

/// p(0..order) from Euler's pentagonal recurrence
/// p(n) = sum_{k>=1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
std::vector<BigInt> partition_euler_recurrence(std::size_t order);

/// Trial division.
bool is_prime(std::int64_t n);

/// (a/p) by Euler's criterion a^{(p-1)/2} mod p. Throws std::invalid_argument
/// unless p is an odd prime.
int legendre_symbol(std::int64_t a, std::int64_t p);

}  // namespace bracelet::oracles
