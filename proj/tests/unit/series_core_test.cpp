#include <gtest/gtest.h>

#include <random>

#include "bracelet/detail/gf2_poly.hpp"
#include "bracelet/qseries.hpp"
#include "bracelet/series.hpp"
#include "properties.hpp"
#include "reference.hpp"

namespace {

using namespace bracelet;

TruncatedSeries ints(CoefficientRing ring, std::vector<std::int64_t> c) {
  return TruncatedSeries::from_integers(ring, c);
}

const auto ZZ = CoefficientRing::exact();
const auto Z2 = CoefficientRing::mod(2);
const auto Z5 = CoefficientRing::mod(5);

TEST(CoefficientRing, RejectsSmallAndHugeModuli) {
  EXPECT_THROW(CoefficientRing::mod(0), std::invalid_argument);
  EXPECT_THROW(CoefficientRing::mod(1), std::invalid_argument);
  EXPECT_THROW(CoefficientRing::mod((std::uint64_t{1} << 62) + 1), std::invalid_argument);
  EXPECT_NO_THROW(CoefficientRing::mod(std::uint64_t{1} << 62));
  EXPECT_EQ(ZZ.name(), "ZZ");
  EXPECT_EQ(Z5.name(), "Z/5");
}

TEST(CoefficientRing, ModInverse) {
  EXPECT_EQ(mod_inverse(3, 7), 5u);
  EXPECT_FALSE(mod_inverse(5, 25).has_value());
  EXPECT_EQ(reduce(std::int64_t{-1}, 5), 4u);
}

TEST(TruncatedSeries, StoresCanonicalResidues) {
  const auto x = ints(Z5, {-1, 7, 10, -12});
  EXPECT_EQ(x.order(), 3u);
  EXPECT_EQ(x.residue(0), 4u);
  EXPECT_EQ(x.residue(1), 2u);
  EXPECT_EQ(x.residue(2), 0u);
  EXPECT_EQ(x.residue(3), 3u);
  EXPECT_THROW((void)x.coefficient(4), std::out_of_range);
  EXPECT_THROW((void)ints(ZZ, {1}).residue(0), std::logic_error);
}

TEST(SeriesAdd, Examples) {
  EXPECT_EQ(ints(ZZ, {1, -1, 0}) + ints(ZZ, {0, 1, 0}), TruncatedSeries::one(ZZ, 2));
  const auto x = ints(ZZ, {3, 1, 4, 1, 5});
  EXPECT_EQ(x + TruncatedSeries::zero(ZZ, 4), x);
  EXPECT_TRUE((ints(Z2, {1, 1, 0}) + ints(Z2, {1, 1, 0})).is_zero());
}

TEST(SeriesAdd, TruncatesToSmallerOrderAndChecksRing) {
  EXPECT_EQ((ints(ZZ, {1, 2, 3}) + ints(ZZ, {1, 1})).order(), 1u);
  EXPECT_THROW(ints(ZZ, {1}) + ints(Z5, {1}), std::invalid_argument);
  EXPECT_THROW(ints(Z2, {1}) * ints(Z5, {1}), std::invalid_argument);
}

TEST(SeriesMul, TelescopingAndIdentity) {
  std::mt19937_64 rng(7);
  for (const auto ring : {ZZ, Z2, Z5}) {
    const std::size_t n = 130;
    std::vector<std::int64_t> geo(n + 1, 1);
    std::vector<std::int64_t> lin(n + 1, 0);
    lin[0] = 1;
    lin[1] = -1;
    EXPECT_EQ(ints(ring, lin) * ints(ring, geo), TruncatedSeries::one(ring, n)) << ring.name();
    const auto x = properties::random_series(rng, ring, n);
    EXPECT_EQ(x * TruncatedSeries::one(ring, n), x);
  }
}

TEST(SeriesMul, EulerTimesDistinctPartsIsEulerAtQSquared) {
  const std::size_t n = 100;
  const auto lhs = product_series(ProductSpec{}.times(-1, 1, 1), n) *
                   product_series(ProductSpec{}.times(1, 1, 1), n);
  const auto rhs = reference::eta_quotient({{-1, 2, 2, 1}}, n);
  EXPECT_EQ(lhs.coefficients(), rhs);
}

TEST(SeriesMul, SparseAndDenseAgreeOverEveryBackend) {
  std::mt19937_64 rng(42);
  for (const auto ring : {ZZ, Z2, Z5, CoefficientRing::mod((std::uint64_t{1} << 62) - 57)}) {
    for (const double density : {0.01, 0.2, 1.0}) {
      std::vector<std::int64_t> a = properties::random_coeffs(rng, 700, density);
      std::vector<std::int64_t> b = properties::random_coeffs(rng, 700, 1.0);
      const auto prod = ints(ring, a) * ints(ring, b);
      reference::Coeffs ra(a.begin(), a.end()), rb(b.begin(), b.end());
      const auto expected = reference::convolve(ra, rb, 700);
      for (std::size_t i = 0; i <= 700; ++i) {
        const auto want = ring.is_exact() ? expected[i]
                                          : mpz_class(reference::mod_of(expected[i], ring.modulus()));
        ASSERT_EQ(prod.coefficient(i), want) << ring.name() << " density " << density << " at " << i;
      }
    }
  }
}

TEST(SeriesInvert, Examples) {
  const auto geo = invert(ints(ZZ, {1, -1, 0, 0, 0, 0}));
  for (std::size_t i = 0; i <= 5; ++i) EXPECT_EQ(geo.coefficient(i), 1);
  EXPECT_EQ(invert(TruncatedSeries::one(Z5, 9)), TruncatedSeries::one(Z5, 9));

  const auto partitions = invert(product_series(ProductSpec{}.times(-1, 1, 1), 20));
  const std::int64_t p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627};
  for (std::size_t i = 0; i <= 20; ++i) EXPECT_EQ(partitions.coefficient(i), p[i]);
}

TEST(SeriesInvert, RejectsNonUnits) {
  EXPECT_THROW(invert(ints(ZZ, {2, 1})), std::domain_error);
  EXPECT_THROW(invert(ints(CoefficientRing::mod(25), {5, 1})), std::domain_error);
  EXPECT_THROW(invert(ints(Z2, {0, 1})), std::domain_error);
  EXPECT_THROW(divide(ints(ZZ, {1, 1}), ints(ZZ, {0, 1})), std::domain_error);
  EXPECT_NO_THROW(invert(ints(CoefficientRing::mod(25), {7, 1})));
}

TEST(SeriesDissect, Examples) {
  const auto geo = ints(ZZ, std::vector<std::int64_t>(21, 1));
  const auto d = dissect(geo, 2, 1);
  EXPECT_EQ(d.order(), 9u);
  EXPECT_EQ(d, ints(ZZ, std::vector<std::int64_t>(10, 1)));
  EXPECT_EQ(dissect(geo, 1, 0), geo);

  const auto euler = product_series(ProductSpec{}.times(-1, 1, 1), 50);
  EXPECT_TRUE(dissect(euler, 5, 3).is_zero());
}

TEST(SeriesDissect, EdgeCases) {
  const auto x = ints(ZZ, {1, 2, 3, 4, 5});
  EXPECT_THROW(dissect(x, 0, 0), std::invalid_argument);
  EXPECT_THROW(dissect(x, 2, 5), std::invalid_argument);
  const auto last = dissect(x, 3, 4);
  EXPECT_EQ(last.order(), 0u);
  EXPECT_EQ(last.coefficient(0), 5);
}

TEST(SeriesInflate, Examples) {
  EXPECT_EQ(inflate(ints(ZZ, {1, -1, 0}), 2), ints(ZZ, {1, 0, -1}));
  const auto x = ints(Z5, {1, 2, 3});
  EXPECT_EQ(inflate(x, 1), x);
  EXPECT_THROW(inflate(x, 0), std::invalid_argument);

  const auto euler10 = product_series(ProductSpec{}.times(-1, 1, 1), 10);
  const auto inflated = truncate(inflate(zero_extend(euler10, 50), 25), 50);
  std::vector<std::int64_t> want(51, 0);
  want[0] = 1;
  want[25] = -1;
  want[50] = -1;
  EXPECT_EQ(inflated, ints(ZZ, want));
}

TEST(SeriesShift, Examples) {
  EXPECT_EQ(shift(TruncatedSeries::one(ZZ, 3), 1), ints(ZZ, {0, 1, 0, 0}));
  const auto x = ints(ZZ, {4, 5, 6});
  EXPECT_EQ(shift(x, 0), x);
  const auto geo = invert(ints(ZZ, {1, -1, 0, 0, 0, 0}));
  EXPECT_EQ(shift(geo, 2), ints(ZZ, {0, 0, 1, 1, 1, 1}));
}

TEST(SeriesReduceMod, Examples) {
  EXPECT_EQ(reduce_mod(ints(ZZ, {1, -1}), 2), ints(Z2, {1, 1}));
  EXPECT_TRUE(reduce_mod(TruncatedSeries::zero(ZZ, 10), 7).is_zero());
  const auto p = reduce_mod(invert(product_series(ProductSpec{}.times(-1, 1, 1), 19)), 5);
  for (const std::size_t i : {4u, 9u, 14u, 19u}) EXPECT_TRUE(p.is_zero_at(i)) << i;
  EXPECT_THROW(reduce_mod(ints(ZZ, {1}), 1), std::invalid_argument);
  EXPECT_THROW(reduce_mod(ints(Z5, {1}), 5), std::invalid_argument);
}

TEST(SeriesEqualUpto, ReportsFirstMismatch) {
  const auto x = ints(ZZ, {1, 2, 3, 4});
  EXPECT_TRUE(equal_upto(x, x, 3));
  const auto y = ints(ZZ, {1, 2, 3, 9});
  EXPECT_TRUE(equal_upto(x, y, 2));
  const auto r = equal_upto(x, y, 3);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.first_mismatch, 3u);
  EXPECT_THROW(equal_upto(x, y, 4), std::invalid_argument);
  EXPECT_THROW(equal_upto(x, ints(Z5, {1, 2, 3, 4}), 2), std::invalid_argument);

  const auto euler = product_series(ProductSpec{}.times(-1, 1, 1), 500);
  EXPECT_TRUE(equal_upto(euler, TruncatedSeries::from_exact(reference::euler_pentagonal(500)), 500));
}

TEST(Gf2Poly, BinomialKernelsRoundTrip) {
  std::mt19937_64 rng(3);
  for (const std::size_t order : {0u, 1u, 63u, 64u, 65u, 127u, 128u, 1000u}) {
    detail::Gf2Poly x(order);
    for (std::size_t n = 0; n <= order; ++n) x.set(n, rng() & 1U);
    for (std::size_t m = 1; m <= order + 70; m += 13) {
      auto y = x;
      y.mul_one_plus_monomial(m);
      y.div_one_plus_monomial(m);
      ASSERT_EQ(y, x) << "order " << order << " m " << m;
    }
  }
  detail::Gf2Poly z(10);
  EXPECT_THROW(z.div_one_plus_monomial(0), std::domain_error);
}

TEST(Gf2Poly, CarrylessWordProductMatchesBitLoop) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = rng(), b = rng();
    std::uint64_t lo = 0, hi = 0;
    detail::clmul64(a, b, lo, hi);
    std::uint64_t elo = 0, ehi = 0;
    for (int i = 0; i < 64; ++i) {
      if ((b >> i) & 1U) {
        elo ^= a << i;
        if (i != 0) ehi ^= a >> (64 - i);
      }
    }
    ASSERT_EQ(lo, elo);
    ASSERT_EQ(hi, ehi);
  }
}

TEST(SeriesProperties, RandomInstances) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto failure = properties::check_random_instance(seed);
    ASSERT_TRUE(failure.empty()) << failure;
  }
}

}  // namespace
