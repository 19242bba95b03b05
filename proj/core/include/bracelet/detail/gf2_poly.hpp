#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bracelet::detail {

/// Bit-packed truncated series over GF(2): bit n of the packed words is the
/// coefficient of q^n for 0 <= n <= order. Bits above the order are kept zero.
class Gf2Poly {
 public:
  Gf2Poly() : Gf2Poly(0) {}
  explicit Gf2Poly(std::size_t order);

  std::size_t order() const noexcept { return order_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool get(std::size_t n) const noexcept {
    return (words_[n >> 6U] >> (n & 63U)) & 1U;
  }
  void set(std::size_t n, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (n & 63U);
    if (value) {
      words_[n >> 6U] |= bit;
    } else {
      words_[n >> 6U] &= ~bit;
    }
  }
  void flip(std::size_t n) noexcept { words_[n >> 6U] ^= std::uint64_t{1} << (n & 63U); }

  std::size_t popcount() const noexcept;
  bool is_zero() const noexcept;

  /// this += other, both of the same order.
  void add_in_place(const Gf2Poly& other);

  /// this *= (1 + q^m). m = 0 annihilates the series.
  void mul_one_plus_monomial(std::size_t m) noexcept;

  /// this /= (1 + q^m), m >= 1, via 1/(1+x) = (1+x)(1+x^2)(1+x^4)... mod 2.
  void div_one_plus_monomial(std::size_t m);

  /// Carryless product truncated to `order`.
  Gf2Poly multiplied(const Gf2Poly& other, std::size_t order) const;

  /// Inverse series; the constant term must be 1.
  Gf2Poly inverse() const;

  Gf2Poly truncated(std::size_t order) const;
  Gf2Poly shifted(std::size_t t) const;
  Gf2Poly inflated(std::size_t t) const;
  Gf2Poly dissected(std::size_t step, std::size_t residue, std::size_t order) const;

  /// Smallest n <= upto where the two series differ.
  std::optional<std::size_t> first_difference(const Gf2Poly& other,
                                              std::size_t upto) const noexcept;

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

 private:
  static std::size_t word_count(std::size_t order) noexcept { return order / 64 + 1; }
  void clear_tail() noexcept;

  std::size_t order_;
  std::vector<std::uint64_t> words_;
};

/// 64x64 -> 128-bit carryless multiply, returned as (low, high).
void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) noexcept;

}  // namespace bracelet::detail
