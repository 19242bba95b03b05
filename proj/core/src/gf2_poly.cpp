#include "bracelet/detail/gf2_poly.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace bracelet::detail {

void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) noexcept {
#if defined(__PCLMUL__)
  const __m128i product =
      _mm_clmulepi64_si128(_mm_set_epi64x(0, static_cast<long long>(a)),
                           _mm_set_epi64x(0, static_cast<long long>(b)), 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(product));
  hi = static_cast<std::uint64_t>(_mm_extract_epi64(product, 1));
#else
  // 4-bit window over b; table entries are at most 67 bits wide.
  using u128 = unsigned __int128;
  u128 table[16];
  table[0] = 0;
  table[1] = a;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1U;
    table[i + 1] = table[i] ^ a;
  }
  u128 acc = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    acc = (acc << 4U) ^ table[(b >> static_cast<unsigned>(shift)) & 15U];
  }
  lo = static_cast<std::uint64_t>(acc);
  hi = static_cast<std::uint64_t>(acc >> 64U);
#endif
}

Gf2Poly::Gf2Poly(std::size_t order) : order_(order), words_(word_count(order), 0) {}

void Gf2Poly::clear_tail() noexcept {
  const std::size_t used = (order_ + 1) & 63U;
  if (used != 0) words_.back() &= (std::uint64_t{1} << used) - 1;
}

std::size_t Gf2Poly::popcount() const noexcept {
  std::size_t total = 0;
  for (const auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool Gf2Poly::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void Gf2Poly::add_in_place(const Gf2Poly& other) {
  if (other.order_ != order_) throw std::invalid_argument("Gf2Poly order mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
}

void Gf2Poly::mul_one_plus_monomial(std::size_t m) noexcept {
  if (m == 0) {
    std::fill(words_.begin(), words_.end(), 0);
    return;
  }
  if (m > order_) return;
  const std::size_t q = m >> 6U;
  const unsigned r = static_cast<unsigned>(m & 63U);
  // Descending so every source word is read before it is overwritten.
  for (std::size_t w = words_.size(); w-- > q;) {
    std::uint64_t src = words_[w - q] << r;
    if (r != 0 && w - q >= 1) src |= words_[w - q - 1] >> (64U - r);
    words_[w] ^= src;
  }
  clear_tail();
}

void Gf2Poly::div_one_plus_monomial(std::size_t m) {
  if (m == 0) throw std::domain_error("division by 1 + q^0 = 0 over GF(2)");
  for (std::size_t s = m; s <= order_; s <<= 1U) {
    mul_one_plus_monomial(s);
    if (s > order_ / 2) break;
  }
}

Gf2Poly Gf2Poly::multiplied(const Gf2Poly& other, std::size_t order) const {
  Gf2Poly result(order);
  const std::size_t rw = result.words_.size();
  const std::size_t wa = std::min(words_.size(), rw);
  const std::size_t wb = std::min(other.words_.size(), rw);
  for (std::size_t i = 0; i < wa; ++i) {
    const std::uint64_t a = words_[i];
    if (a == 0) continue;
    const std::size_t jmax = std::min(wb, rw - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      const std::uint64_t b = other.words_[j];
      if (b == 0) continue;
      std::uint64_t lo = 0;
      std::uint64_t hi = 0;
      clmul64(a, b, lo, hi);
      result.words_[i + j] ^= lo;
      if (i + j + 1 < rw) result.words_[i + j + 1] ^= hi;
    }
  }
  result.clear_tail();
  return result;
}

Gf2Poly Gf2Poly::inverse() const {
  if (!get(0)) throw std::domain_error("constant term is not a unit mod 2");
  // Newton step in characteristic 2: r <- x * r^2, and r^2 = r(q^2).
  Gf2Poly r(0);
  r.set(0, true);
  std::size_t precision = 1;  // r is exact modulo q^precision
  while (precision < order_ + 1) {
    const std::size_t next = std::min(2 * precision, order_ + 1);
    const Gf2Poly square = r.truncated(next - 1).inflated(2);
    r = truncated(next - 1).multiplied(square, next - 1);
    precision = next;
  }
  return r;
}

Gf2Poly Gf2Poly::truncated(std::size_t order) const {
  Gf2Poly result(order);
  const std::size_t n = std::min(words_.size(), result.words_.size());
  std::copy_n(words_.begin(), n, result.words_.begin());
  result.clear_tail();
  return result;
}

Gf2Poly Gf2Poly::shifted(std::size_t t) const {
  Gf2Poly result(order_);
  if (t > order_) return result;
  const std::size_t q = t >> 6U;
  const unsigned r = static_cast<unsigned>(t & 63U);
  for (std::size_t w = q; w < words_.size(); ++w) {
    std::uint64_t v = words_[w - q] << r;
    if (r != 0 && w - q >= 1) v |= words_[w - q - 1] >> (64U - r);
    result.words_[w] = v;
  }
  result.clear_tail();
  return result;
}

Gf2Poly Gf2Poly::inflated(std::size_t t) const {
  Gf2Poly result(order_);
  for (std::size_t n = 0; n * t <= order_; ++n) {
    if (get(n)) result.set(n * t, true);
  }
  return result;
}

Gf2Poly Gf2Poly::dissected(std::size_t step, std::size_t residue, std::size_t order) const {
  Gf2Poly result(order);
  for (std::size_t n = 0; n <= order; ++n) {
    if (get(step * n + residue)) result.set(n, true);
  }
  return result;
}

std::optional<std::size_t> Gf2Poly::first_difference(const Gf2Poly& other,
                                                     std::size_t upto) const noexcept {
  const std::size_t last_word = upto >> 6U;
  for (std::size_t w = 0; w <= last_word; ++w) {
    std::uint64_t diff = words_[w] ^ other.words_[w];
    if (w == last_word && ((upto + 1) & 63U) != 0) {
      diff &= (std::uint64_t{1} << ((upto + 1) & 63U)) - 1;
    }
    if (diff != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(diff));
  }
  return std::nullopt;
}

}  // namespace bracelet::detail
