#include "bracelet/oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bracelet::oracles {

namespace {

void check_budget(int n) {
  if (n < 0 || n > kEnumerationBudget) {
    throw std::out_of_range("enumeration budget is 0 <= n <= " +
                            std::to_string(kEnumerationBudget) + ", got " + std::to_string(n));
  }
}

// Walks every nonincreasing sequence of admissible parts summing to `remaining`
// whose parts are at most `largest`.
std::uint64_t enumerate(int remaining, int largest, int forbidden_divisor) {
  if (remaining == 0) return 1;
  std::uint64_t count = 0;
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    if (forbidden_divisor != 0 && part % forbidden_divisor == 0) continue;
    count += enumerate(remaining - part, part, forbidden_divisor);
  }
  return count;
}

}  // namespace

std::uint64_t count_partitions_bruteforce(int n) {
  check_budget(n);
  return enumerate(n, n, 0);
}

std::uint64_t count_l_regular_bruteforce(int ell, int n) {
  if (ell < 2) throw std::invalid_argument("ell must be at least 2");
  check_budget(n);
  return enumerate(n, n, ell);
}

std::vector<BigInt> partition_euler_recurrence(std::size_t order) {
  std::vector<BigInt> p(order + 1);
  p[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    BigInt sum = 0;
    for (std::size_t k = 1;; ++k) {
      const std::size_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const std::size_t g2 = k * (3 * k + 1) / 2;
      BigInt term = p[n - g1];
      if (g2 <= n) term += p[n - g2];
      if (k % 2 == 1) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    p[n] = sum;
  }
  return p;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int legendre_symbol(std::int64_t a, std::int64_t p) {
  if (p < 3 || !is_prime(p)) {
    throw std::invalid_argument("Legendre symbol needs an odd prime, got " + std::to_string(p));
  }
  const auto modulus = static_cast<std::uint64_t>(p);
  const Residue r = reduce(a, modulus);
  if (r == 0) return 0;
  const Residue e = mod_pow(r, (modulus - 1) / 2, modulus);
  return e == 1 ? 1 : -1;
}

}  // namespace bracelet::oracles
