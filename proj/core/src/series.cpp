#include "bracelet/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace bracelet {

using detail::Gf2Poly;
using BigVec = std::vector<BigInt>;
using ResVec = std::vector<Residue>;

struct SeriesAccess {
  static TruncatedSeries::Storage& data(TruncatedSeries& s) { return s.data_; }
  static const TruncatedSeries::Storage& data(const TruncatedSeries& s) { return s.data_; }
  static TruncatedSeries make(CoefficientRing ring, std::size_t order,
                              TruncatedSeries::Storage storage) {
    return TruncatedSeries(ring, order, std::move(storage));
  }
};

namespace {

const BigVec& exact_of(const TruncatedSeries& s) {
  return std::get<BigVec>(SeriesAccess::data(s));
}
BigVec& exact_of(TruncatedSeries& s) { return std::get<BigVec>(SeriesAccess::data(s)); }
const ResVec& residues_of(const TruncatedSeries& s) {
  return std::get<ResVec>(SeriesAccess::data(s));
}
ResVec& residues_of(TruncatedSeries& s) { return std::get<ResVec>(SeriesAccess::data(s)); }
const Gf2Poly& bits_of(const TruncatedSeries& s) {
  return std::get<Gf2Poly>(SeriesAccess::data(s));
}
Gf2Poly& bits_of(TruncatedSeries& s) { return std::get<Gf2Poly>(SeriesAccess::data(s)); }

enum class Backend { Exact, Residues, Bits };

Backend backend(const CoefficientRing& ring) {
  if (ring.is_exact()) return Backend::Exact;
  return ring.is_mod2() ? Backend::Bits : Backend::Residues;
}

void require_same_ring(const TruncatedSeries& x, const TruncatedSeries& y, const char* op) {
  if (x.ring() != y.ring()) {
    throw std::invalid_argument(std::string(op) + ": ring mismatch (" + x.ring().name() +
                                " vs " + y.ring().name() + ")");
  }
}

// Nonzero entries (index, value) of a residue vector up to `order`.
std::vector<std::pair<std::size_t, Residue>> sparse_entries(const ResVec& v,
                                                            std::size_t order) {
  std::vector<std::pair<std::size_t, Residue>> out;
  for (std::size_t i = 0; i <= order; ++i) {
    if (v[i] != 0) out.emplace_back(i, v[i]);
  }
  return out;
}

std::vector<std::size_t> nonzero_indices(const BigVec& v, std::size_t order) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(v[i]) != 0) out.push_back(i);
  }
  return out;
}

// True when `terms` products of residues below m fit in a u64 accumulator.
bool fits_u64(std::uint64_t m, std::size_t terms) {
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(m - 1) * (m - 1) * (terms == 0 ? 1 : terms);
  return bound < (static_cast<unsigned __int128>(1) << 64U);
}

// sum_{(k, c) in sparse, 1 <= k <= n} c * values[n - k]  (mod m); entries with
// k == 0 are skipped.
template <bool Small>
Residue tail_sum(const std::vector<std::pair<std::size_t, Residue>>& sparse,
                 const ResVec& values, std::size_t n, std::uint64_t m) {
  if constexpr (Small) {
    std::uint64_t acc = 0;
    for (const auto& [k, c] : sparse) {
      if (k > n) break;
      if (k == 0) continue;
      acc += c * values[n - k];
    }
    return acc % m;
  } else {
    Residue acc = 0;
    for (const auto& [k, c] : sparse) {
      if (k > n) break;
      if (k == 0) continue;
      acc = mod_add(acc, mod_mul(c, values[n - k], m), m);
    }
    return acc;
  }
}

template <bool Small>
void convolve_residues(const std::vector<std::pair<std::size_t, Residue>>& sparse,
                       const ResVec& dense, std::uint64_t m, ResVec& out) {
  const std::size_t order = out.size() - 1;
  for (std::size_t n = 0; n <= order; ++n) {
    if constexpr (Small) {
      std::uint64_t acc = 0;
      for (const auto& [k, c] : sparse) {
        if (k > n) break;
        acc += c * dense[n - k];
      }
      out[n] = acc % m;
    } else {
      Residue acc = 0;
      for (const auto& [k, c] : sparse) {
        if (k > n) break;
        acc = mod_add(acc, mod_mul(c, dense[n - k], m), m);
      }
      out[n] = acc;
    }
  }
}

template <bool Small>
void divide_residues(const ResVec& num, const std::vector<std::pair<std::size_t, Residue>>& den,
                     Residue inv0, std::uint64_t m, ResVec& out) {
  const std::size_t order = out.size() - 1;
  for (std::size_t n = 0; n <= order; ++n) {
    Residue v = mod_sub(num[n], tail_sum<Small>(den, out, n, m), m);
    out[n] = inv0 == 1 ? v : mod_mul(v, inv0, m);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncatedSeries

namespace {

TruncatedSeries::Storage blank_storage(const CoefficientRing& ring, std::size_t order) {
  switch (backend(ring)) {
    case Backend::Exact:
      return BigVec(order + 1);
    case Backend::Bits:
      return Gf2Poly(order);
    case Backend::Residues:
      break;
  }
  return ResVec(order + 1, 0);
}

}  // namespace

TruncatedSeries::TruncatedSeries(CoefficientRing ring, std::size_t order)
    : ring_(ring), order_(order), data_(blank_storage(ring, order)) {}

TruncatedSeries TruncatedSeries::one(CoefficientRing ring, std::size_t order) {
  return monomial(ring, order, 0, 1);
}

TruncatedSeries TruncatedSeries::monomial(CoefficientRing ring, std::size_t order,
                                          std::size_t exponent, std::int64_t coefficient) {
  TruncatedSeries s(ring, order);
  if (exponent > order) return s;
  switch (backend(ring)) {
    case Backend::Exact:
      exact_of(s)[exponent] = BigInt{static_cast<long>(coefficient)};
      break;
    case Backend::Residues:
      residues_of(s)[exponent] = reduce(coefficient, ring.modulus());
      break;
    case Backend::Bits:
      bits_of(s).set(exponent, (coefficient & 1) != 0);
      break;
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_integers(CoefficientRing ring,
                                               std::span<const std::int64_t> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("from_integers: empty coefficient list");
  TruncatedSeries s(ring, coeffs.size() - 1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    switch (backend(ring)) {
      case Backend::Exact:
        exact_of(s)[n] = BigInt{static_cast<long>(coeffs[n])};
        break;
      case Backend::Residues:
        residues_of(s)[n] = reduce(coeffs[n], ring.modulus());
        break;
      case Backend::Bits:
        bits_of(s).set(n, (coeffs[n] & 1) != 0);
        break;
    }
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_exact(std::vector<BigInt> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("from_exact: empty coefficient list");
  const std::size_t order = coeffs.size() - 1;
  return TruncatedSeries(CoefficientRing::exact(), order, std::move(coeffs));
}

BigInt TruncatedSeries::coefficient(std::size_t n) const {
  if (n > order_) {
    throw std::out_of_range("coefficient index " + std::to_string(n) + " exceeds order " +
                            std::to_string(order_));
  }
  switch (backend(ring_)) {
    case Backend::Exact:
      return std::get<BigVec>(data_)[n];
    case Backend::Residues:
      return to_bigint(std::get<ResVec>(data_)[n]);
    case Backend::Bits:
      break;
  }
  return BigInt{std::get<Gf2Poly>(data_).get(n) ? 1 : 0};
}

Residue TruncatedSeries::residue(std::size_t n) const {
  if (ring_.is_exact()) throw std::logic_error("residue() on an exact series");
  if (n > order_) {
    throw std::out_of_range("coefficient index " + std::to_string(n) + " exceeds order " +
                            std::to_string(order_));
  }
  if (ring_.is_mod2()) return std::get<Gf2Poly>(data_).get(n) ? 1 : 0;
  return std::get<ResVec>(data_)[n];
}

bool TruncatedSeries::is_zero_at(std::size_t n) const {
  if (ring_.is_exact()) return sgn(coefficient(n)) == 0;
  return residue(n) == 0;
}

bool TruncatedSeries::is_zero() const { return nonzero_count() == 0; }

std::size_t TruncatedSeries::nonzero_count() const {
  switch (backend(ring_)) {
    case Backend::Exact: {
      const auto& v = std::get<BigVec>(data_);
      return static_cast<std::size_t>(
          std::count_if(v.begin(), v.end(), [](const BigInt& c) { return sgn(c) != 0; }));
    }
    case Backend::Residues: {
      const auto& v = std::get<ResVec>(data_);
      return static_cast<std::size_t>(
          std::count_if(v.begin(), v.end(), [](Residue c) { return c != 0; }));
    }
    case Backend::Bits:
      break;
  }
  return std::get<Gf2Poly>(data_).popcount();
}

std::vector<BigInt> TruncatedSeries::coefficients() const {
  std::vector<BigInt> out;
  out.reserve(order_ + 1);
  for (std::size_t n = 0; n <= order_; ++n) out.push_back(coefficient(n));
  return out;
}

std::string TruncatedSeries::coefficient_string(std::size_t n) const {
  if (ring_.is_exact()) return coefficient(n).get_str();
  return std::to_string(residue(n));
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.ring_ == b.ring_ && a.order_ == b.order_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------
// Arithmetic

TruncatedSeries add(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "add");
  const std::size_t order = std::min(x.order(), y.order());
  TruncatedSeries r(x.ring(), order);
  switch (backend(x.ring())) {
    case Backend::Exact: {
      const auto &a = exact_of(x), &b = exact_of(y);
      auto& out = exact_of(r);
      for (std::size_t n = 0; n <= order; ++n) out[n] = a[n] + b[n];
      break;
    }
    case Backend::Residues: {
      const auto &a = residues_of(x), &b = residues_of(y);
      auto& out = residues_of(r);
      const auto m = x.ring().modulus();
      for (std::size_t n = 0; n <= order; ++n) out[n] = mod_add(a[n], b[n], m);
      break;
    }
    case Backend::Bits: {
      auto& out = bits_of(r);
      out = bits_of(x).truncated(order);
      out.add_in_place(bits_of(y).truncated(order));
      break;
    }
  }
  return r;
}

TruncatedSeries negate(const TruncatedSeries& x) {
  TruncatedSeries r = x;
  switch (backend(x.ring())) {
    case Backend::Exact:
      for (auto& c : exact_of(r)) c = -c;
      break;
    case Backend::Residues:
      for (auto& c : residues_of(r)) c = mod_neg(c, x.ring().modulus());
      break;
    case Backend::Bits:
      break;
  }
  return r;
}

TruncatedSeries subtract(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "subtract");
  return add(x, negate(y));
}

TruncatedSeries scale(const TruncatedSeries& x, std::int64_t factor) {
  TruncatedSeries r = x;
  switch (backend(x.ring())) {
    case Backend::Exact: {
      const BigInt f{static_cast<long>(factor)};
      for (auto& c : exact_of(r)) c *= f;
      break;
    }
    case Backend::Residues: {
      const auto m = x.ring().modulus();
      const Residue f = reduce(factor, m);
      for (auto& c : residues_of(r)) c = mod_mul(c, f, m);
      break;
    }
    case Backend::Bits:
      if ((factor & 1) == 0) r = TruncatedSeries(x.ring(), x.order());
      break;
  }
  return r;
}

TruncatedSeries multiply(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "multiply");
  const std::size_t order = std::min(x.order(), y.order());
  TruncatedSeries r(x.ring(), order);
  switch (backend(x.ring())) {
    case Backend::Exact: {
      const auto nx = nonzero_indices(exact_of(x), order);
      const auto ny = nonzero_indices(exact_of(y), order);
      // Outer loop runs over the sparser operand.
      const bool x_outer = nx.size() <= ny.size();
      const auto& outer_idx = x_outer ? nx : ny;
      const auto& outer = x_outer ? exact_of(x) : exact_of(y);
      const auto& inner = x_outer ? exact_of(y) : exact_of(x);
      auto& out = exact_of(r);
      for (const std::size_t k : outer_idx) {
        const BigInt& c = outer[k];
        for (std::size_t n = k; n <= order; ++n) {
          if (sgn(inner[n - k]) != 0) mpz_addmul(out[n].get_mpz_t(), c.get_mpz_t(), inner[n - k].get_mpz_t());
        }
      }
      break;
    }
    case Backend::Residues: {
      const auto m = x.ring().modulus();
      auto sx = sparse_entries(residues_of(x), order);
      auto sy = sparse_entries(residues_of(y), order);
      const bool x_outer = sx.size() <= sy.size();
      const auto& sparse = x_outer ? sx : sy;
      const auto& dense = x_outer ? residues_of(y) : residues_of(x);
      auto& out = residues_of(r);
      if (fits_u64(m, sparse.size())) {
        convolve_residues<true>(sparse, dense, m, out);
      } else {
        convolve_residues<false>(sparse, dense, m, out);
      }
      break;
    }
    case Backend::Bits:
      bits_of(r) = bits_of(x).multiplied(bits_of(y), order);
      break;
  }
  return r;
}

TruncatedSeries divide(const TruncatedSeries& x, const TruncatedSeries& y) {
  require_same_ring(x, y, "divide");
  const std::size_t order = std::min(x.order(), y.order());
  TruncatedSeries r(x.ring(), order);
  switch (backend(x.ring())) {
    case Backend::Exact: {
      const auto& den = exact_of(y);
      const int c0 = cmp(den[0], 0) == 0 ? 0 : (den[0] == 1 ? 1 : (den[0] == -1 ? -1 : 0));
      if (c0 == 0) {
        throw std::domain_error("constant term " + den[0].get_str() + " is not a unit in ZZ");
      }
      const auto idx = nonzero_indices(den, order);
      const auto& num = exact_of(x);
      auto& out = exact_of(r);
      BigInt acc;
      for (std::size_t n = 0; n <= order; ++n) {
        acc = num[n];
        for (const std::size_t k : idx) {
          if (k > n) break;
          if (k == 0) continue;
          mpz_submul(acc.get_mpz_t(), den[k].get_mpz_t(), out[n - k].get_mpz_t());
        }
        if (c0 < 0) acc = -acc;
        out[n] = acc;
      }
      break;
    }
    case Backend::Residues: {
      const auto m = x.ring().modulus();
      const auto& den = residues_of(y);
      const auto inv0 = mod_inverse(den[0], m);
      if (!inv0) {
        throw std::domain_error("constant term " + std::to_string(den[0]) +
                                " is not a unit in " + x.ring().name());
      }
      const auto sparse = sparse_entries(den, order);
      auto& out = residues_of(r);
      if (fits_u64(m, sparse.size())) {
        divide_residues<true>(residues_of(x), sparse, *inv0, m, out);
      } else {
        divide_residues<false>(residues_of(x), sparse, *inv0, m, out);
      }
      break;
    }
    case Backend::Bits: {
      const auto& den = bits_of(y);
      if (!den.get(0)) throw std::domain_error("constant term 0 is not a unit in Z/2");
      bits_of(r) = bits_of(x).multiplied(den.truncated(order).inverse(), order);
      break;
    }
  }
  return r;
}

TruncatedSeries invert(const TruncatedSeries& x) {
  return divide(TruncatedSeries::one(x.ring(), x.order()), x);
}

// ---------------------------------------------------------------------------
// Index maps

TruncatedSeries dissect(const TruncatedSeries& x, std::size_t step, std::size_t residue) {
  if (step == 0) throw std::invalid_argument("dissect: step must be at least 1");
  if (residue > x.order()) {
    throw std::invalid_argument("dissect: residue " + std::to_string(residue) +
                                " exceeds series order " + std::to_string(x.order()));
  }
  const std::size_t order = (x.order() - residue) / step;
  TruncatedSeries r(x.ring(), order);
  switch (backend(x.ring())) {
    case Backend::Exact:
      for (std::size_t n = 0; n <= order; ++n) exact_of(r)[n] = exact_of(x)[step * n + residue];
      break;
    case Backend::Residues:
      for (std::size_t n = 0; n <= order; ++n) {
        residues_of(r)[n] = residues_of(x)[step * n + residue];
      }
      break;
    case Backend::Bits:
      bits_of(r) = bits_of(x).dissected(step, residue, order);
      break;
  }
  return r;
}

TruncatedSeries inflate(const TruncatedSeries& x, std::size_t t) {
  if (t == 0) throw std::invalid_argument("inflate: factor must be at least 1");
  TruncatedSeries r(x.ring(), x.order());
  switch (backend(x.ring())) {
    case Backend::Exact:
      for (std::size_t n = 0; n * t <= x.order(); ++n) exact_of(r)[n * t] = exact_of(x)[n];
      break;
    case Backend::Residues:
      for (std::size_t n = 0; n * t <= x.order(); ++n) {
        residues_of(r)[n * t] = residues_of(x)[n];
      }
      break;
    case Backend::Bits:
      bits_of(r) = bits_of(x).inflated(t);
      break;
  }
  return r;
}

TruncatedSeries shift(const TruncatedSeries& x, std::size_t t) {
  TruncatedSeries r(x.ring(), x.order());
  switch (backend(x.ring())) {
    case Backend::Exact:
      for (std::size_t n = t; n <= x.order(); ++n) exact_of(r)[n] = exact_of(x)[n - t];
      break;
    case Backend::Residues:
      for (std::size_t n = t; n <= x.order(); ++n) residues_of(r)[n] = residues_of(x)[n - t];
      break;
    case Backend::Bits:
      bits_of(r) = bits_of(x).shifted(t);
      break;
  }
  return r;
}

TruncatedSeries truncate(const TruncatedSeries& x, std::size_t order) {
  if (order > x.order()) {
    throw std::invalid_argument("truncate: order " + std::to_string(order) +
                                " exceeds series order " + std::to_string(x.order()));
  }
  TruncatedSeries r(x.ring(), order);
  switch (backend(x.ring())) {
    case Backend::Exact:
      std::copy_n(exact_of(x).begin(), order + 1, exact_of(r).begin());
      break;
    case Backend::Residues:
      std::copy_n(residues_of(x).begin(), order + 1, residues_of(r).begin());
      break;
    case Backend::Bits:
      bits_of(r) = bits_of(x).truncated(order);
      break;
  }
  return r;
}

TruncatedSeries zero_extend(const TruncatedSeries& x, std::size_t order) {
  if (order < x.order()) return truncate(x, order);
  TruncatedSeries r(x.ring(), order);
  switch (backend(x.ring())) {
    case Backend::Exact:
      std::copy(exact_of(x).begin(), exact_of(x).end(), exact_of(r).begin());
      break;
    case Backend::Residues:
      std::copy(residues_of(x).begin(), residues_of(x).end(), residues_of(r).begin());
      break;
    case Backend::Bits: {
      const auto src = bits_of(x).words();
      auto& dst = bits_of(r);
      for (std::size_t n = 0; n <= x.order(); ++n) {
        if ((src[n >> 6U] >> (n & 63U)) & 1U) dst.set(n, true);
      }
      break;
    }
  }
  return r;
}

TruncatedSeries reduce_mod(const TruncatedSeries& x, std::uint64_t modulus) {
  const auto ring = CoefficientRing::mod(modulus);
  if (!x.ring().is_exact()) {
    throw std::invalid_argument("reduce_mod: source series must be over ZZ, got " +
                                x.ring().name());
  }
  TruncatedSeries r(ring, x.order());
  const auto& src = exact_of(x);
  if (ring.is_mod2()) {
    auto& bits = bits_of(r);
    for (std::size_t n = 0; n <= x.order(); ++n) {
      if (mpz_odd_p(src[n].get_mpz_t())) bits.set(n, true);
    }
  } else {
    auto& out = residues_of(r);
    for (std::size_t n = 0; n <= x.order(); ++n) out[n] = reduce(src[n], modulus);
  }
  return r;
}

EqualityResult equal_upto(const TruncatedSeries& x, const TruncatedSeries& y,
                          std::size_t upto) {
  require_same_ring(x, y, "equal_upto");
  if (upto > x.order() || upto > y.order()) {
    throw std::invalid_argument("equal_upto: index " + std::to_string(upto) +
                                " exceeds series order " +
                                std::to_string(std::min(x.order(), y.order())));
  }
  std::optional<std::size_t> mismatch;
  switch (backend(x.ring())) {
    case Backend::Exact:
      for (std::size_t n = 0; n <= upto && !mismatch; ++n) {
        if (exact_of(x)[n] != exact_of(y)[n]) mismatch = n;
      }
      break;
    case Backend::Residues:
      for (std::size_t n = 0; n <= upto && !mismatch; ++n) {
        if (residues_of(x)[n] != residues_of(y)[n]) mismatch = n;
      }
      break;
    case Backend::Bits:
      mismatch = bits_of(x).first_difference(bits_of(y), upto);
      break;
  }
  return EqualityResult{!mismatch.has_value(), mismatch};
}

// ---------------------------------------------------------------------------
// Binomial kernels

namespace {

void require_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("binomial sign must be +1 or -1");
}

}  // namespace

TruncatedSeries multiply_binomial(TruncatedSeries x, int sign, std::size_t m) {
  require_sign(sign);
  if (m == 0) return scale(x, 1 + sign);
  if (m > x.order()) return x;
  const std::size_t order = x.order();
  switch (backend(x.ring())) {
    case Backend::Exact: {
      auto& c = exact_of(x);
      for (std::size_t n = order; n >= m; --n) {
        if (sign > 0) {
          c[n] += c[n - m];
        } else {
          c[n] -= c[n - m];
        }
      }
      break;
    }
    case Backend::Residues: {
      auto& c = residues_of(x);
      const auto mod = x.ring().modulus();
      for (std::size_t n = order; n >= m; --n) {
        c[n] = sign > 0 ? mod_add(c[n], c[n - m], mod) : mod_sub(c[n], c[n - m], mod);
      }
      break;
    }
    case Backend::Bits:
      bits_of(x).mul_one_plus_monomial(m);
      break;
  }
  return x;
}

TruncatedSeries divide_binomial(TruncatedSeries x, int sign, std::size_t m) {
  require_sign(sign);
  if (m == 0) throw std::invalid_argument("divide_binomial: exponent must be at least 1");
  if (m > x.order()) return x;
  const std::size_t order = x.order();
  switch (backend(x.ring())) {
    case Backend::Exact: {
      auto& c = exact_of(x);
      for (std::size_t n = m; n <= order; ++n) {
        if (sign > 0) {
          c[n] -= c[n - m];
        } else {
          c[n] += c[n - m];
        }
      }
      break;
    }
    case Backend::Residues: {
      auto& c = residues_of(x);
      const auto mod = x.ring().modulus();
      for (std::size_t n = m; n <= order; ++n) {
        c[n] = sign > 0 ? mod_sub(c[n], c[n - m], mod) : mod_add(c[n], c[n - m], mod);
      }
      break;
    }
    case Backend::Bits:
      bits_of(x).div_one_plus_monomial(m);
      break;
  }
  return x;
}

}  // namespace bracelet
