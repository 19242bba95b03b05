#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bracelet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, CoeffsExamples) {
  EXPECT_EQ(run({"coeffs", "partition", "9"}).out, "1 1 2 3 5 7 11 15 22 30\n");
  EXPECT_EQ(run({"coeffs", "bracelet:5", "0"}).out, "1\n");
  EXPECT_EQ(run({"coeffs", "euler", "12", "--mod", "2"}).out, "1 1 1 0 0 1 0 1 0 0 0 0 1\n");
  EXPECT_EQ(run({"coeffs", "partition", "-N", "3"}).out, "1 1 2 3\n");
}

TEST(Cli, CoeffsCsvAndJson) {
  EXPECT_EQ(run({"coeffs", "partition", "3", "--format", "csv"}).out,
            "n,coefficient\n0,1\n1,1\n2,2\n3,3\n");
  const auto j = nlohmann::json::parse(run({"coeffs", "lregular:5", "4", "--format", "json"}).out);
  EXPECT_EQ(j["coefficients"], nlohmann::json::parse("[1,1,2,3,5]"));
  EXPECT_EQ(j["ring"], "ZZ");
}

TEST(Cli, DissectExamples) {
  const auto zeros = run({"dissect", "bracelet:5", "10", "6", "--mod", "2", "-N", "100"});
  ASSERT_EQ(zeros.code, 0);
  EXPECT_EQ(zeros.out.find('1'), std::string::npos);
  EXPECT_EQ(run({"dissect", "partition", "1", "0", "-N", "5"}).out, "1 1 2 3 5 7\n");
  EXPECT_EQ(run({"dissect", "bracelet:5", "10", "2", "--mod", "2", "-N", "60"}).out,
            run({"coeffs", "lregular:5", "--mod", "2", "-N", "60"}).out);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"coeffs", "nonsense", "5"}).code, 2);
  EXPECT_EQ(run({"coeffs", "partition", "5000"}).code, 2);
  EXPECT_EQ(run({"coeffs", "partition", "5", "--mod", "1"}).code, 2);
  EXPECT_EQ(run({"dissect", "partition", "0", "0"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto cap = run({"coeffs", "bracelet:5", "60000", "--mod", "2"});
  EXPECT_EQ(cap.code, 2);
  EXPECT_NE(cap.err.find("exceeds the cap"), std::string::npos);
}

TEST(Cli, VerifyTextAndExitCode) {
  const auto r = run({"verify", "--claims", "C6", "--nmax", "500"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C6[B=6]  B_5(10n+6) ≡ 0 (mod 2): PASS n≤500"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2 claims: 2 pass, 0 fail, 0 vacuous, 0 error"), std::string::npos);

  const auto bad = run({"verify", "--claims", "C16[p=5,r=3,a=1,j=2]"});
  EXPECT_EQ(bad.code, 1);
  const auto vac = run({"verify", "--claims", "C16[p=5,r=2,a=1,j=1]"});
  EXPECT_EQ(vac.code, 0);
  EXPECT_NE(vac.out.find("VACUOUS"), std::string::npos);
  const auto capped = run({"verify", "--claims", "C12", "--nmax", "50"});
  EXPECT_EQ(capped.code, 1);
  EXPECT_NE(capped.out.find("truncation exceeds cap"), std::string::npos);
}

TEST(Cli, VerifyJsonSchemaAndDeterminism) {
  const std::vector<std::string> args{"verify", "--claims", "C15[p=5,r=2,a=1,i=1..4],C1",
                                      "--format", "json"};
  auto a = nlohmann::json::parse(run(args).out);
  auto b = nlohmann::json::parse(run(args).out);
  ASSERT_EQ(a.size(), 5u);
  for (auto* doc : {&a, &b}) {
    for (auto& item : *doc) {
      for (const auto* key : {"claim_id", "params", "status", "n_checked", "truncation",
                              "counterexample", "elapsed_ms"}) {
        EXPECT_TRUE(item.contains(key)) << key;
      }
      item.erase("elapsed_ms");
    }
  }
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a[0]["claim_id"], "C1");
  EXPECT_EQ(a[1]["params"], nlohmann::json::parse(R"({"p":5,"r":2,"a":1,"i":1})"));
  EXPECT_EQ(a[1]["status"], "pass");
  EXPECT_TRUE(a[1]["counterexample"].is_null());
}

TEST(Cli, VerifyCsv) {
  const auto r = run({"verify", "--claims", "C20[p=5]", "--format", "csv"});
  EXPECT_EQ(r.out.rfind("claim_id,status,n_checked,truncation,counterexample_n,counterexample_value,elapsed_ms\n", 0), 0u);
  EXPECT_NE(r.out.find("C20[p=5],pass,201,1004,,,"), std::string::npos) << r.out;
}

TEST(Cli, SearchFindsKnownProgressions) {
  const auto r = run({"search", "5", "10", "--mod", "2,25", "--nmax", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("B_5(10n+6) ≡ 0 (mod 2)  candidate"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("B_5(10n+8) ≡ 0 (mod 2)"), std::string::npos);
  EXPECT_NE(r.out.find("B_5(10n+7) ≡ 0 (mod 25)"), std::string::npos);
  EXPECT_EQ(run({"search", "5", "1", "--mod", "2"}).out, "0 candidates\n");
  EXPECT_EQ(run({"search", "5", "1000", "--mod", "2", "--nmax", "1000"}).code, 2);
}

TEST(Cli, ClaimsListing) {
  const auto r = run({"claims"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C1 "), std::string::npos);
  EXPECT_NE(r.out.find("C20"), std::string::npos);
}

}  // namespace
