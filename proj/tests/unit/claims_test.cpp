#include <gtest/gtest.h>

#include <set>

#include "bracelet/claims.hpp"

namespace {

using namespace bracelet;

CongruenceClaim claim(const std::string& family, const ParamMap& params) {
  auto inst = instantiate(find_family(family), params);
  EXPECT_TRUE(std::holds_alternative<CongruenceClaim>(inst)) << family;
  return std::get<CongruenceClaim>(inst);
}

Progression prog(const std::string& family, const ParamMap& params) {
  return claim(family, params).progression;
}

TEST(Catalog, HasTwentyFamiliesInOrder) {
  const auto& all = builtin_claims();
  ASSERT_EQ(all.size(), 20u);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].id, "C" + std::to_string(i + 1));
  for (const auto* id : {"C1", "C2", "C3", "C4", "C5", "C10", "C11", "C20"}) {
    EXPECT_TRUE(find_family(id).imported) << id;
  }
  for (const auto* id : {"C6", "C7", "C9", "C12", "C14", "C19"}) EXPECT_FALSE(find_family(id).imported);
  EXPECT_THROW(find_family("C21"), std::invalid_argument);
}

TEST(Catalog, IdsAndDeterminism) {
  const auto& f = find_family("C15");
  const ParamMap params{{"i", 1}, {"a", 1}, {"r", 2}, {"p", 5}};
  EXPECT_EQ(claim_id(f, params), "C15[p=5,r=2,a=1,i=1]");
  const auto a = claim("C15", params), b = claim("C15", params);
  EXPECT_EQ(a.id, b.id);
  EXPECT_EQ(a.statement(), b.statement());
  EXPECT_EQ(a.progression, b.progression);
  EXPECT_EQ(a.source, b.source);
  EXPECT_EQ(claim("C1", {}).id, "C1");
}

TEST(Catalog, Mod2FamilyProgressions) {
  EXPECT_EQ(prog("C6", {{"B", 6}}), (Progression{10, 6}));
  EXPECT_EQ(prog("C12", {{"p", 17}, {"a", 1}, {"i", 6}}), (Progression{11560, 7452}));
  const Progression c13[] = {{200, 52}, {200, 132}, {1000, 692}, {1000, 892}};
  for (int f = 1; f <= 4; ++f) EXPECT_EQ(prog("C13", {{"f", f}, {"a", 1}}), c13[f - 1]) << f;
  const Progression c11[] = {{20, 5}, {20, 13}, {100, 69}, {100, 89}};
  for (int f = 1; f <= 4; ++f) EXPECT_EQ(prog("C11", {{"f", f}, {"a", 0}}), c11[f - 1]) << f;
  EXPECT_EQ(prog("C10", {{"p", 17}, {"a", 1}, {"i", 1}}), (Progression{1156, 405}));
  EXPECT_EQ(claim("C12", {{"p", 17}, {"a", 1}, {"i", 6}}).default_n_max, 2);
}

TEST(Catalog, ModPFamilyProgressions) {
  const std::int64_t c15[] = {7, 12, 17, 22};
  for (int i = 1; i <= 4; ++i) {
    EXPECT_EQ(prog("C15", {{"p", 5}, {"r", 2}, {"a", 1}, {"i", i}}), (Progression{25, c15[i - 1]}));
  }
  EXPECT_EQ(prog("C16", {{"p", 5}, {"r", 3}, {"a", 1}, {"j", 1}}), (Progression{125, 27}));
  EXPECT_EQ(prog("C16", {{"p", 5}, {"r", 3}, {"a", 1}, {"j", 3}}), (Progression{125, 77}));
  EXPECT_EQ(prog("C18", {{"p", 5}, {"a", 1}}), (Progression{50, 42}));
  EXPECT_EQ(prog("C18", {{"p", 7}, {"a", 1}}), (Progression{98, 74}));
  EXPECT_EQ(prog("C18", {{"p", 11}, {"a", 1}}), (Progression{242, 142}));

  const auto c19 = claim("C19", {{"p", 5}, {"a", 1}});
  EXPECT_EQ(c19.progression, (Progression{5, 2}));
  EXPECT_EQ(c19.source, SeriesSource::bracelet(25));
  EXPECT_EQ(c19.first_n, 1);
  EXPECT_TRUE(c19.guard_first_coefficient);
}

TEST(Catalog, SeriesCongruenceRightHandSides) {
  const auto low = claim("C14", {{"p", 5}, {"r", 1}, {"a", 1}});
  EXPECT_EQ(low.kind, ClaimKind::SeriesCongruence);
  EXPECT_EQ(low.progression, (Progression{5, 2}));
  EXPECT_EQ(low.rhs.product.to_string(), "(q^10;q^10)*(q^2;q^2)^-1");
  EXPECT_EQ(low.rhs_sign, -1);

  const auto top = claim("C14", {{"p", 5}, {"r", 3}, {"a", 2}});
  EXPECT_EQ(top.progression, (Progression{125, 52}));
  EXPECT_EQ(top.rhs.product.to_string(), "(q^10;q^10)*(q^2;q^2)^-1");
  EXPECT_EQ(top.rhs_sign, 1);
  EXPECT_EQ(claim("C14", {{"p", 5}, {"r", 3}, {"a", 1}}).rhs.product.to_string(),
            "(q^10;q^10)*(q^50;q^50)^-1");

  const auto c17 = claim("C17", {{"p", 5}, {"a", 1}, {"f", 2}});
  EXPECT_EQ(c17.progression, (Progression{10, 2}));
  EXPECT_EQ(c17.rhs, SeriesSource::eta_times_partition(5));
  EXPECT_EQ(c17.rhs_sign, -1);

  const auto c9 = claim("C9", {});
  EXPECT_EQ(c9.kind, ClaimKind::ExactIdentity);
  EXPECT_EQ(c9.modulus, 0u);
  EXPECT_TRUE(c9.ring().is_exact());
}

TEST(Catalog, StrictRangesAndVacuousCases) {
  EXPECT_THROW(instantiate(find_family("C14"), {{"p", 5}, {"r", 1}, {"a", 2}}), InstantiationError);
  EXPECT_THROW(instantiate(find_family("C15"), {{"p", 5}, {"r", 2}, {"a", 2}, {"i", 1}}),
               InstantiationError);
  EXPECT_THROW(instantiate(find_family("C16"), {{"p", 5}, {"r", 3}, {"a", 1}, {"j", 2}}),
               InstantiationError);
  EXPECT_THROW(instantiate(find_family("C3"), {{"p", 5}, {"m", 2}, {"s", 2}}), InstantiationError);
  EXPECT_THROW(instantiate(find_family("C10"), {{"p", 13}, {"a", 1}, {"i", 1}}), InstantiationError);
  EXPECT_THROW(instantiate(find_family("C18"), {{"p", 13}, {"a", 1}}), InstantiationError);
  EXPECT_THROW(instantiate(find_family("C2"), {{"p", 4}, {"r", 1}}), InstantiationError);
  EXPECT_THROW(instantiate(find_family("C6"), {{"B", 6}, {"x", 1}}), InstantiationError);
  EXPECT_THROW(instantiate(find_family("C6"), {}), InstantiationError);

  const auto c16 = instantiate(find_family("C16"), {{"p", 5}, {"r", 2}, {"a", 1}, {"j", 1}});
  ASSERT_TRUE(std::holds_alternative<VacuousClaim>(c16));
  EXPECT_EQ(std::get<VacuousClaim>(c16).id, "C16[p=5,r=2,a=1,j=1]");
  const auto c15 = instantiate(find_family("C15"), {{"p", 5}, {"r", 1}, {"a", 1}, {"i", 1}});
  EXPECT_TRUE(std::holds_alternative<VacuousClaim>(c15));
}

TEST(Catalog, OffsetsMayExceedStepWhenStatedThatWay) {
  // C10 at i = p - 1 has B > A; the offset is kept as written.
  const auto p = prog("C10", {{"p", 17}, {"a", 1}, {"i", 16}});
  EXPECT_EQ(p.step, 1156);
  EXPECT_EQ(p.offset, ((24 * 16 + 7 * 17) * 17 - 1) / 6);
  EXPECT_GT(p.offset, p.step);
}

TEST(Catalog, StatementsUseCongruenceNotation) {
  EXPECT_EQ(claim("C6", {{"B", 6}}).statement(), "B_5(10n+6) ≡ 0 (mod 2)");
  EXPECT_EQ(claim("C20", {{"p", 5}}).statement(), "p(5n+4) ≡ 0 (mod 5)");
  EXPECT_EQ(claim("C7", {}).statement(), "Σ B_5(10n+2)q^n ≡ Σ b_5(n)q^n (mod 2)");
  EXPECT_EQ(claim("C19", {{"p", 5}, {"a", 1}}).statement(), "B_25(5n+2) ≡ 0 (mod 5) for n ≥ 1");
}

TEST(Catalog, TruncationRequirements) {
  const auto c12 = claim("C12", {{"p", 17}, {"a", 1}, {"i", 6}});
  EXPECT_EQ(required_truncation(c12, 2), 11560 * 2 + 7452);
  const auto c7 = claim("C7", {});
  EXPECT_EQ(required_truncation(c7, 500), 5002);
  EXPECT_EQ(rhs_truncation(c7, 500), 500);
}

TEST(SeriesSource, ParseAndKeyRoundTrip) {
  for (const auto* text : {"partition", "lregular:5", "diamond:1", "bracelet:25", "eta-partition:5",
                           "quintic-rhs", "product:(q^2;q^2)*(q;q)^-1"}) {
    const auto s = SeriesSource::parse(text);
    EXPECT_EQ(s.key(), text);
    EXPECT_EQ(SeriesSource::parse(s.key()), s);
  }
  EXPECT_EQ(SeriesSource::parse("euler").key(), "product:(q;q)");
  EXPECT_EQ(SeriesSource::parse("bracelet:5").symbol(), "B_5");
  EXPECT_THROW(SeriesSource::parse("bracelet"), std::invalid_argument);
  EXPECT_THROW(SeriesSource::parse("bracelet:2"), std::invalid_argument);
  EXPECT_THROW(SeriesSource::parse("bracelet:x"), std::invalid_argument);
  EXPECT_THROW(SeriesSource::parse("nope"), std::invalid_argument);
}

TEST(SeriesSource, EtaTimesPartitionIsAProduct) {
  const auto direct = SeriesSource::eta_times_partition(5).expand(60, CoefficientRing::exact());
  const auto quotient = SeriesSource::parse("product:(q^5;q^5)*(q;q)^-1").expand(60, CoefficientRing::exact());
  EXPECT_EQ(direct, quotient);
}

TEST(Selectors, SplitAndParse) {
  EXPECT_EQ(split_selectors("C6, C15[p=5,r=2,a=1,i=1..4],C1"),
            (std::vector<std::string>{"C6", "C15[p=5,r=2,a=1,i=1..4]", "C1"}));
  const auto sel = parse_selector("C15[p=5,r=2,a=1,i=1..4]");
  EXPECT_EQ(sel.family, "C15");
  ASSERT_EQ(sel.grid.size(), 4u);
  EXPECT_EQ(sel.grid[3].second, (std::vector<std::int64_t>{1, 2, 3, 4}));
  EXPECT_EQ(parse_selector("C18[p=5|7|11,a=1]").grid[0].second, (std::vector<std::int64_t>{5, 7, 11}));
  EXPECT_FALSE(parse_selector("C6").has_params);
  EXPECT_THROW(parse_selector("C6[B=6"), std::invalid_argument);
  EXPECT_THROW(parse_selector("C6[B]"), std::invalid_argument);
  EXPECT_THROW(parse_selector("C6[B=x]"), std::invalid_argument);
}

TEST(Selectors, GridsSkipOutOfRangePointsButSinglePointsReportThem) {
  std::vector<std::string> skipped;
  const auto grid = expand_selector(parse_selector("C16[p=5,r=3,a=1,j=1..4]"), &skipped);
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_EQ(selected_id(grid[0]), "C16[p=5,r=3,a=1,j=1]");
  EXPECT_EQ(selected_id(grid[1]), "C16[p=5,r=3,a=1,j=3]");
  EXPECT_EQ(skipped, (std::vector<std::string>{"C16[p=5,r=3,a=1,j=2]", "C16[p=5,r=3,a=1,j=4]"}));

  const auto single = expand_selector(parse_selector("C16[p=5,r=3,a=1,j=2]"));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<InstantiationFailure>(single[0]));

  EXPECT_EQ(expand_selector(parse_selector("C6")).size(), 2u);
  EXPECT_THROW(expand_selector(parse_selector("C99")), std::invalid_argument);
}

TEST(Selectors, DefaultSelectionCoversEveryFamily) {
  const auto all = default_selection();
  std::set<std::string> families;
  for (const auto& s : all) {
    ASSERT_FALSE(std::holds_alternative<InstantiationFailure>(s)) << selected_id(s);
    families.insert(std::get<CongruenceClaim>(s).family);
  }
  EXPECT_EQ(families.size(), 20u);
}

}  // namespace
