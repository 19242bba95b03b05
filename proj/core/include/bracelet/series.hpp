#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bracelet/detail/gf2_poly.hpp"
#include "bracelet/ring.hpp"

namespace bracelet {

/// Dense truncated power series c_0 + c_1 q + ... + c_N q^N over a
/// CoefficientRing. Values are immutable once built; every operation returns
/// a new series that is exact on indices 0..result.order().
///
/// Storage follows the ring: GMP integers for ZZ, canonical residues for
/// Z/M, and a bit-packed word array for Z/2.
class TruncatedSeries {
 public:
  using Storage =
      std::variant<std::vector<BigInt>, std::vector<Residue>, detail::Gf2Poly>;

  /// The zero series of the given order.
  TruncatedSeries(CoefficientRing ring, std::size_t order);

  static TruncatedSeries zero(CoefficientRing ring, std::size_t order) {
    return TruncatedSeries(ring, order);
  }
  static TruncatedSeries one(CoefficientRing ring, std::size_t order);
  static TruncatedSeries monomial(CoefficientRing ring, std::size_t order,
                                  std::size_t exponent, std::int64_t coefficient = 1);

  /// Order is coeffs.size() - 1; values are reduced into the ring.
  static TruncatedSeries from_integers(CoefficientRing ring,
                                       std::span<const std::int64_t> coeffs);
  static TruncatedSeries from_exact(std::vector<BigInt> coeffs);

  const CoefficientRing& ring() const noexcept { return ring_; }
  std::size_t order() const noexcept { return order_; }

  /// Canonical representative of c_n (in [0, M) for Z/M).
  BigInt coefficient(std::size_t n) const;
  /// c_n for a Z/M series; throws for ZZ.
  Residue residue(std::size_t n) const;
  bool is_zero_at(std::size_t n) const;
  bool is_zero() const;
  std::size_t nonzero_count() const;
  std::vector<BigInt> coefficients() const;
  std::string coefficient_string(std::size_t n) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  friend struct SeriesAccess;

  TruncatedSeries(CoefficientRing ring, std::size_t order, Storage storage)
      : ring_(ring), order_(order), data_(std::move(storage)) {}

  CoefficientRing ring_;
  std::size_t order_;
  Storage data_;
};

struct EqualityResult {
  bool equal = true;
  std::optional<std::size_t> first_mismatch;
  explicit operator bool() const noexcept { return equal; }
};

// Binary operations require equal rings (std::invalid_argument otherwise) and
// truncate to the smaller order.

TruncatedSeries add(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries subtract(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries negate(const TruncatedSeries& x);
TruncatedSeries scale(const TruncatedSeries& x, std::int64_t factor);
TruncatedSeries multiply(const TruncatedSeries& x, const TruncatedSeries& y);

/// Requires a unit constant term (+-1 over ZZ, gcd(c_0, M) = 1 over Z/M);
/// throws std::domain_error otherwise.
TruncatedSeries invert(const TruncatedSeries& x);

/// x / y, computed by the division recurrence; y must have a unit constant term.
TruncatedSeries divide(const TruncatedSeries& x, const TruncatedSeries& y);

/// result[n] = x[step * n + residue], order floor((x.order - residue) / step).
/// Throws std::invalid_argument when step == 0 or residue > x.order().
TruncatedSeries dissect(const TruncatedSeries& x, std::size_t step, std::size_t residue);

/// Substitution q -> q^t (t >= 1); order preserved.
TruncatedSeries inflate(const TruncatedSeries& x, std::size_t t);

/// Multiplication by q^t; order preserved, the top t coefficients fall off.
TruncatedSeries shift(const TruncatedSeries& x, std::size_t t);

TruncatedSeries truncate(const TruncatedSeries& x, std::size_t order);

/// Treats x as a polynomial and pads it with zeros up to `order` (truncates
/// if `order` is smaller). Only meaningful when the caller knows the dropped
/// tail is zero, as with a finite sum.
TruncatedSeries zero_extend(const TruncatedSeries& x, std::size_t order);

/// Coefficientwise reduction of a ZZ series into Z/M.
TruncatedSeries reduce_mod(const TruncatedSeries& x, std::uint64_t modulus);

/// Compares indices 0..upto; throws if upto exceeds either order.
EqualityResult equal_upto(const TruncatedSeries& x, const TruncatedSeries& y,
                          std::size_t upto);

/// x * (1 + sign q^m), sign = +-1. Costs O(order - m).
TruncatedSeries multiply_binomial(TruncatedSeries x, int sign, std::size_t m);

/// x / (1 + sign q^m), sign = +-1, m >= 1.
TruncatedSeries divide_binomial(TruncatedSeries x, int sign, std::size_t m);

inline TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
  return add(x, y);
}
inline TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) {
  return subtract(x, y);
}
inline TruncatedSeries operator-(const TruncatedSeries& x) { return negate(x); }
inline TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
  return multiply(x, y);
}

}  // namespace bracelet
