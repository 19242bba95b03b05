#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bracelet/series.hpp"

namespace bracelet {

/// (sign * q^offset; q^step)_inf ^ exponent, i.e. prod_{j>=0} (1 + sign q^{offset + j*step})^exponent.
/// sign = -1 is the ordinary (q^a; q^b)_inf, sign = +1 is (-q^a; q^b)_inf.
struct PochhammerFactor {
  int sign = -1;
  std::int64_t offset = 1;
  std::int64_t step = 1;
  std::int64_t exponent = 1;

  /// Throws std::invalid_argument unless sign = +-1, offset >= 1 and step >= 1.
  void validate() const;

  /// "(q^2;q^2)^-1", "(-q;q)".
  std::string to_string() const;

  friend bool operator==(const PochhammerFactor&, const PochhammerFactor&) = default;
};

/// A formal eta-quotient. The empty product is the constant series 1.
struct ProductSpec {
  std::vector<PochhammerFactor> factors;

  ProductSpec& times(int sign, std::int64_t offset, std::int64_t step, std::int64_t exponent = 1) {
    factors.push_back({sign, offset, step, exponent});
    return *this;
  }

  /// Factors joined by '*', or "1" for the empty product.
  std::string to_string() const;

  /// Inverse of to_string(): "(q^2;q^2)*(q;q)^-1", "(-q^5;q^5)^-1", "1".
  static ProductSpec parse(std::string_view text);

  friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

/// A prime p >= 5 with the constants of the p-dissection of f(-q).
class PrimeContext {
 public:
  /// Throws std::invalid_argument unless p is a prime >= 5.
  static PrimeContext make(std::int64_t p);

  std::int64_t p() const noexcept { return p_; }
  /// (p^2 - 1) / 24.
  std::int64_t delta() const noexcept { return delta_; }
  /// The integral one of (p - 1)/6 and (-p - 1)/6.
  std::int64_t t() const noexcept { return t_; }
  /// (-1)^t.
  int epsilon() const noexcept { return epsilon_; }
  int epsilon_power(std::int64_t alpha) const noexcept {
    return (alpha % 2 == 0) ? 1 : epsilon_;
  }

 private:
  PrimeContext(std::int64_t p, std::int64_t delta, std::int64_t t, int epsilon)
      : p_(p), delta_(delta), t_(t), epsilon_(epsilon) {}

  std::int64_t p_, delta_, t_;
  int epsilon_;
};

// Product expansions. Every builder takes the target ring; ZZ by default.
// Z/2 builds run on the bit-packed backend, so orders in the 10^5 range are cheap.

TruncatedSeries pochhammer_series(const PochhammerFactor& factor, std::size_t order,
                                  CoefficientRing ring = CoefficientRing::exact());
TruncatedSeries product_series(const ProductSpec& spec, std::size_t order,
                               CoefficientRing ring = CoefficientRing::exact());

// Generating-function specs.
ProductSpec partition_spec();
ProductSpec l_regular_spec(std::int64_t ell);
ProductSpec broken_diamond_spec(std::int64_t k);
/// (-q;q) / ((q;q)^{k-1} (-q^k;q^k)).
ProductSpec bracelet_spec(std::int64_t k);
/// (q^2;q^2) / ((q;q)^k (-q^k;q^k)), the same series written without (-q;q).
ProductSpec bracelet_rewritten_spec(std::int64_t k);

/// sum p(n) q^n.
TruncatedSeries gen_partition(std::size_t order, CoefficientRing ring = CoefficientRing::exact());
/// sum b_ell(n) q^n; ell >= 2.
TruncatedSeries gen_l_regular(std::int64_t ell, std::size_t order,
                              CoefficientRing ring = CoefficientRing::exact());
/// sum Delta_k(n) q^n; k >= 1.
TruncatedSeries gen_broken_diamond(std::int64_t k, std::size_t order,
                                   CoefficientRing ring = CoefficientRing::exact());
/// sum B_k(n) q^n (k dots bracelet partitions); k >= 3.
TruncatedSeries gen_bracelet(std::int64_t k, std::size_t order,
                             CoefficientRing ring = CoefficientRing::exact());

/// Ramanujan's theta function f(a, b) at a = sx q^x, b = sy q^y, summed over all
/// n in Z with exponent x n(n+1)/2 + y n(n-1)/2 <= order. Requires x + y >= 1.
TruncatedSeries theta_f(std::int64_t x, std::int64_t y, int sx, int sy, std::size_t order,
                        CoefficientRing ring = CoefficientRing::exact());

/// Both sides of the triple product at z = sz q^t, t in {0, 1}.
TruncatedSeries jacobi_sum_side(std::int64_t t, int sz, std::size_t order);
TruncatedSeries jacobi_product_side(std::int64_t t, int sz, std::size_t order);
/// True iff the two sides agree to `order`. Throws std::invalid_argument for
/// t outside {0, 1}, where the product leaves the power-series ring.
bool jacobi_triple_check(std::int64_t t, int sz, std::size_t order);

/// a(q) = (q^10, q^15; q^25) / (q^5, q^20; q^25) and b(q) = 1 / a(q).
ProductSpec ramanujan_a_spec();
ProductSpec ramanujan_b_spec();
TruncatedSeries ramanujan_a(std::size_t order);
TruncatedSeries ramanujan_b(std::size_t order);
/// (q^25; q^25)(a(q) - q - q^2 b(q)), which equals (q;q).
TruncatedSeries quintic_dissection_rhs(std::size_t order,
                                       CoefficientRing ring = CoefficientRing::exact());

struct DissectionComponent {
  std::int64_t residue;  ///< class mod p of every exponent in the component
  TruncatedSeries series;
};

/// Splits f(-q) = (q;q) into its p residue classes from the closed-form
/// terms (-1)^j q^{(3j^2+j)/2} f(-q^{(3p^2+(6j+1)p)/2}, -q^{(3p^2-(6j+1)p)/2})
/// for |j| <= (p-1)/2, j != t, plus epsilon q^delta f(-q^{p^2}). Element r
/// of the result holds class r; components are full-length series.
std::vector<DissectionComponent> p_dissection_f(const PrimeContext& ctx, std::size_t order,
                                                CoefficientRing ring = CoefficientRing::exact());

/// Residue classes mod p of (3j^2+j)/2 over |j| <= (p-1)/2, j != t.
std::vector<std::int64_t> pentagonal_classes(const PrimeContext& ctx);

/// True iff delta mod p lies outside pentagonal_classes(ctx).
bool delta_class_is_isolated(const PrimeContext& ctx);

}  // namespace bracelet
