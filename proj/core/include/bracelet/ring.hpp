#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace bracelet {

using BigInt = mpz_class;
using Residue = std::uint64_t;

/// Coefficient ring of a truncated series: either the exact integers or
/// Z/MZ with canonical representatives in [0, M).
class CoefficientRing {
 public:
  /// Largest modulus accepted; keeps a + b below 2^64 for residues.
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  static CoefficientRing exact() noexcept { return CoefficientRing{0}; }

  /// Throws std::invalid_argument unless 2 <= m <= kMaxModulus.
  static CoefficientRing mod(std::uint64_t m);

  bool is_exact() const noexcept { return modulus_ == 0; }
  bool is_mod2() const noexcept { return modulus_ == 2; }

  /// 0 for the exact ring.
  std::uint64_t modulus() const noexcept { return modulus_; }

  /// "ZZ" or "Z/5".
  std::string name() const;

  friend bool operator==(CoefficientRing, CoefficientRing) = default;

 private:
  explicit CoefficientRing(std::uint64_t m) noexcept : modulus_(m) {}

  std::uint64_t modulus_;
};

// Residue arithmetic. Arguments are canonical representatives mod m.

inline Residue mod_add(Residue a, Residue b, std::uint64_t m) noexcept {
  const Residue s = a + b;
  return s >= m ? s - m : s;
}

inline Residue mod_sub(Residue a, Residue b, std::uint64_t m) noexcept {
  return a >= b ? a - b : a + (m - b);
}

inline Residue mod_neg(Residue a, std::uint64_t m) noexcept {
  return a == 0 ? 0 : m - a;
}

inline Residue mod_mul(Residue a, Residue b, std::uint64_t m) noexcept {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % m);
}

Residue mod_pow(Residue base, std::uint64_t exponent, std::uint64_t m) noexcept;

/// Canonical representative of a signed machine integer.
Residue reduce(std::int64_t value, std::uint64_t m) noexcept;

/// Canonical representative of an arbitrary-precision integer.
Residue reduce(const BigInt& value, std::uint64_t m);

/// Inverse of a mod m, or nullopt when gcd(a, m) != 1.
std::optional<Residue> mod_inverse(Residue a, std::uint64_t m) noexcept;

BigInt to_bigint(std::uint64_t value);

}  // namespace bracelet
