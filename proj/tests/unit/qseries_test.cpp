#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "bracelet/oracles.hpp"
#include "bracelet/qseries.hpp"
#include "reference.hpp"

namespace {

using namespace bracelet;

const auto ZZ = CoefficientRing::exact();

std::vector<std::int64_t> head(const TruncatedSeries& s, std::size_t n) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.coefficient(i).get_si());
  return out;
}

TEST(ProductSpec, RoundTripsThroughText) {
  const auto spec = ProductSpec{}.times(-1, 2, 2).times(1, 5, 5, -1).times(-1, 1, 1, -3);
  EXPECT_EQ(spec.to_string(), "(q^2;q^2)*(-q^5;q^5)^-1*(q;q)^-3");
  EXPECT_EQ(ProductSpec::parse(spec.to_string()), spec);
  EXPECT_EQ(ProductSpec::parse("1"), ProductSpec{});
  EXPECT_EQ(ProductSpec{}.to_string(), "1");
  EXPECT_THROW(ProductSpec::parse("(q;q"), std::invalid_argument);
  EXPECT_THROW(ProductSpec::parse("(q^0;q)"), std::invalid_argument);
}

TEST(PochhammerFactor, Validates) {
  EXPECT_THROW((PochhammerFactor{2, 1, 1, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((PochhammerFactor{-1, 0, 1, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((PochhammerFactor{-1, 1, 0, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((PochhammerFactor{1, 3, 7, -4}.validate()));
}

TEST(PochhammerSeries, MatchesSchoolbookExpansion) {
  for (const auto& f : {PochhammerFactor{-1, 1, 1, 1}, PochhammerFactor{1, 2, 3, 1},
                        PochhammerFactor{-1, 3, 5, -2}, PochhammerFactor{1, 1, 1, -1}}) {
    const auto got = pochhammer_series(f, 80);
    const auto want = reference::eta_quotient(
        {{f.sign, std::size_t(f.offset), std::size_t(f.step), int(f.exponent)}}, 80);
    EXPECT_EQ(got.coefficients(), want) << f.to_string();
  }
}

TEST(ProductSeries, ModularBuildsMatchReducedExactBuilds) {
  const auto spec = bracelet_spec(7);
  const auto exact = product_series(spec, 300);
  for (const std::uint64_t m : {2u, 3u, 5u, 49u, 1024u}) {
    EXPECT_EQ(product_series(spec, 300, CoefficientRing::mod(m)), reduce_mod(exact, m)) << m;
  }
}

TEST(PrimeContext, Constants) {
  struct Row {
    std::int64_t p, delta, t;
    int epsilon;
  };
  for (const auto& r : {Row{5, 1, -1, -1}, Row{7, 2, 1, -1}, Row{11, 5, -2, 1}, Row{13, 7, 2, 1}}) {
    const auto ctx = PrimeContext::make(r.p);
    EXPECT_EQ(ctx.delta(), r.delta) << r.p;
    EXPECT_EQ(ctx.t(), r.t) << r.p;
    EXPECT_EQ(ctx.epsilon(), r.epsilon) << r.p;
    EXPECT_EQ(ctx.epsilon_power(2), 1);
    EXPECT_EQ(ctx.epsilon_power(3), r.epsilon);
  }
  EXPECT_THROW(PrimeContext::make(3), std::invalid_argument);
  EXPECT_THROW(PrimeContext::make(9), std::invalid_argument);
}

TEST(Generators, PartitionAgreesWithOracles) {
  const auto p = gen_partition(1000);
  for (int n = 0; n <= 40; ++n) EXPECT_EQ(p.coefficient(n), oracles::count_partitions_bruteforce(n));
  EXPECT_EQ(p.coefficients(), oracles::partition_euler_recurrence(1000));
  EXPECT_EQ(p.coefficient(100), mpz_class("190569292"));
}

TEST(Generators, LRegularAgreesWithEnumeration) {
  for (const int ell : {2, 3, 5}) {
    const auto b = gen_l_regular(ell, 40);
    for (int n = 0; n <= 40; ++n) {
      EXPECT_EQ(b.coefficient(n), oracles::count_l_regular_bruteforce(ell, n)) << ell << " " << n;
    }
  }
  EXPECT_THROW(gen_l_regular(1, 10), std::invalid_argument);
}

TEST(Generators, BraceletFirstValues) {
  // Frozen from the schoolbook expansion of the defining product.
  EXPECT_EQ(head(gen_bracelet(5, 20), 21),
            (std::vector<std::int64_t>{1, 5, 19, 60, 169, 435, 1050, 2400, 5250, 11060, 22562, 44740,
                                       86539, 163695, 303500, 552560, 989460, 1745025, 3034670,
                                       5209240, 8834663}));
  EXPECT_EQ(head(gen_bracelet(3, 15), 16),
            (std::vector<std::int64_t>{1, 3, 8, 18, 38, 75, 142, 258, 455, 780, 1308, 2148, 3467,
                                       5505, 8618, 13314}));
  EXPECT_EQ(gen_bracelet(25, 2).coefficient(2), 349);
  EXPECT_EQ(gen_bracelet(3, 200), gen_broken_diamond(1, 200));
  EXPECT_THROW(gen_bracelet(2, 10), std::invalid_argument);
  EXPECT_THROW(gen_broken_diamond(0, 10), std::invalid_argument);
}

TEST(Generators, BraceletDefinitionAndRewriteAgree) {
  for (const int k : {3, 4, 5, 7, 12}) {
    EXPECT_EQ(product_series(bracelet_spec(k), 300), product_series(bracelet_rewritten_spec(k), 300))
        << k;
    EXPECT_EQ(gen_bracelet(k, 150).coefficients(), reference::bracelet(k, 150)) << k;
  }
}

TEST(Generators, LargeKModularBuildMatchesExact) {
  const auto exact = gen_bracelet(125, 400);
  EXPECT_EQ(gen_bracelet(125, 400, CoefficientRing::mod(5)), reduce_mod(exact, 5));
  EXPECT_EQ(gen_bracelet(125, 400, CoefficientRing::mod(2)), reduce_mod(exact, 2));
}

TEST(ThetaF, EulerFunctionIsThetaOfMinusQMinusQSquared) {
  EXPECT_EQ(theta_f(1, 2, -1, -1, 600), product_series(ProductSpec{}.times(-1, 1, 1), 600));
  EXPECT_EQ(theta_f(1, 2, -1, -1, 300, CoefficientRing::mod(7)),
            product_series(ProductSpec{}.times(-1, 1, 1), 300, CoefficientRing::mod(7)));
  EXPECT_THROW(theta_f(0, 0, 1, 1, 10), std::invalid_argument);
}

TEST(ThetaF, PhiIsSumOverSquares) {
  // f(q, q) is Ramanujan's phi: 1 + 2 sum q^{n^2}.
  const auto phi = theta_f(1, 1, 1, 1, 100);
  for (std::size_t n = 0; n <= 100; ++n) {
    const auto r = static_cast<std::size_t>(std::sqrt(double(n)) + 0.5);
    const int want = n == 0 ? 1 : (r * r == n ? 2 : 0);
    EXPECT_EQ(phi.coefficient(n), want) << n;
  }
}

TEST(JacobiTripleProduct, AllSupportedArguments) {
  EXPECT_TRUE(jacobi_triple_check(0, 1, 200));
  EXPECT_TRUE(jacobi_triple_check(0, -1, 200));
  EXPECT_TRUE(jacobi_triple_check(1, -1, 200));
  EXPECT_TRUE(jacobi_triple_check(1, 1, 200));
  EXPECT_TRUE(jacobi_product_side(1, -1, 50).is_zero());
  EXPECT_TRUE(jacobi_sum_side(1, -1, 50).is_zero());
  EXPECT_THROW(jacobi_triple_check(2, 1, 10), std::invalid_argument);
  EXPECT_THROW(jacobi_triple_check(-1, 1, 10), std::invalid_argument);
}

TEST(RamanujanQuintic, IdentityAndInverse) {
  const std::size_t n = 1000;
  EXPECT_EQ(quintic_dissection_rhs(n), product_series(ProductSpec{}.times(-1, 1, 1), n));
  EXPECT_EQ(ramanujan_a(n) * ramanujan_b(n), TruncatedSeries::one(ZZ, n));
}

TEST(PDissection, ReconstructsEulerFunctionAndRespectsClasses) {
  for (const std::int64_t p : {5, 7, 11, 13}) {
    const auto ctx = PrimeContext::make(p);
    const auto parts = p_dissection_f(ctx, 500);
    ASSERT_EQ(parts.size(), static_cast<std::size_t>(p));
    auto sum = TruncatedSeries::zero(ZZ, 500);
    for (std::size_t r = 0; r < parts.size(); ++r) {
      EXPECT_EQ(parts[r].residue, static_cast<std::int64_t>(r));
      for (std::size_t i = 0; i <= 500; ++i) {
        if (i % p != r) ASSERT_TRUE(parts[r].series.is_zero_at(i)) << p << " " << r << " " << i;
      }
      sum = sum + parts[r].series;
    }
    EXPECT_EQ(sum.coefficients(), reference::euler_pentagonal(500)) << p;
  }
}

TEST(PDissection, DeltaClassIsIsolated) {
  for (std::int64_t p = 5; p <= 23; ++p) {
    if (!oracles::is_prime(p)) continue;
    const auto ctx = PrimeContext::make(p);
    const auto classes = pentagonal_classes(ctx);
    const std::set<std::int64_t> distinct(classes.begin(), classes.end());
    EXPECT_EQ(distinct.count(ctx.delta() % p), 0u) << p;
    EXPECT_TRUE(delta_class_is_isolated(ctx)) << p;
  }
}

}  // namespace
