#include "bracelet/ring.hpp"

#include <stdexcept>

namespace bracelet {

CoefficientRing CoefficientRing::mod(std::uint64_t m) {
  if (m < 2) {
    throw std::invalid_argument("modulus must be at least 2, got " + std::to_string(m));
  }
  if (m > kMaxModulus) {
    throw std::invalid_argument("modulus " + std::to_string(m) + " exceeds 2^62");
  }
  return CoefficientRing{m};
}

std::string CoefficientRing::name() const {
  return is_exact() ? std::string{"ZZ"} : "Z/" + std::to_string(modulus_);
}

Residue mod_pow(Residue base, std::uint64_t exponent, std::uint64_t m) noexcept {
  Residue result = 1 % m;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1U) result = mod_mul(result, base, m);
    base = mod_mul(base, base, m);
    exponent >>= 1U;
  }
  return result;
}

Residue reduce(std::int64_t value, std::uint64_t m) noexcept {
  if (value >= 0) return static_cast<Residue>(value) % m;
  // -(value + 1) avoids overflow at INT64_MIN.
  const auto magnitude = static_cast<std::uint64_t>(-(value + 1)) + 1;
  return mod_neg(magnitude % m, m);
}

Residue reduce(const BigInt& value, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  // mpz_fdiv_ui returns the non-negative remainder for positive divisors.
  return mpz_fdiv_ui(value.get_mpz_t(), static_cast<unsigned long>(m));
}

std::optional<Residue> mod_inverse(Residue a, std::uint64_t m) noexcept {
  // Extended Euclid on signed 128-bit values.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<Residue>(inv);
}

BigInt to_bigint(std::uint64_t value) {
  return BigInt{static_cast<unsigned long>(value)};
}

}  // namespace bracelet
