#include <gtest/gtest.h>

#include <cmath>

#include "bakerlab/params.hpp"

using namespace bakerlab;

TEST(ParamSeq, RejectsBadInput) {
  EXPECT_THROW(ParamSeq({}, {}), std::invalid_argument);
  EXPECT_THROW(ParamSeq({2, 4}, {1}), std::invalid_argument);
  EXPECT_THROW(ParamSeq({2, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(ParamSeq({-1, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(ParamSeq({2, 4}, {1, 1}), std::invalid_argument);  // n_k >= k
  EXPECT_NO_THROW(ParamSeq({2, 4}, {1, 2}));
}

TEST(ParamSeq, OneBasedAccess) {
  const ParamSeq p({2, 4, 8}, {1, 2, 3});
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.r(1), 2.0);
  EXPECT_EQ(p.n(3), 3);
  EXPECT_EQ(p.prefix(2), ParamSeq({2, 4}, {1, 2}));
}

TEST(Derive, DoublingProfile) {
  const DerivedParams d = derive(make_toy("doubling"));
  // m_k = sum_{j<k} n_j
  EXPECT_EQ(d.m_at(1), 0);
  EXPECT_EQ(d.m_at(2), 2);
  EXPECT_EQ(d.m_at(3), 6);
  EXPECT_EQ(d.m_at(4), 14);
  // s_k = r_k (1 + 1/n_k)
  EXPECT_DOUBLE_EQ(d.s_at(2), 5.0);
  EXPECT_DOUBLE_EQ(d.s_at(3), 9.0);
  // ln T_2 = ln(5^2 / (2^2)) = ln 6.25
  EXPECT_NEAR(d.logT_at(2), 1.8325814637483101304, 1e-15);
}

TEST(Validate, Paper2Accepted) {
  const ValidityReport rep = validate_growth(make_toy("paper2"));
  EXPECT_TRUE(rep.overall);
  for (const auto& c : rep.clauses) EXPECT_EQ(c.status, ClauseStatus::Pass) << c.clause << " k=" << c.k;
}

TEST(Validate, DegreeJustBelowThresholdRejected) {
  // 320 e^16 = 2843555366.56..., so 2.84e9 is not enough.
  const ValidityReport rep = validate_growth(ParamSeq({2, 4}, {1, 2'840'000'000}));
  EXPECT_FALSE(rep.overall);
  bool found = false;
  for (const auto& c : rep.clauses)
    if (c.k == 2 && c.status == ClauseStatus::Fail) {
      found = true;
      EXPECT_LT(c.lhs, c.rhs);
    }
  EXPECT_TRUE(found);
}

TEST(Validate, ToyProfilesRejectedWithDiagnostics) {
  for (const char* name : {"doubling", "steep"}) {
    const ValidityReport rep = validate_growth(make_toy(name));
    EXPECT_FALSE(rep.overall) << name;
    std::size_t failures = 0;
    for (const auto& c : rep.clauses) failures += c.status != ClauseStatus::Pass;
    EXPECT_GE(failures, 1u) << name;
  }
}

TEST(Validate, SmallFirstRadiusFails) {
  const ValidityReport rep = validate_growth(ParamSeq({1.5, 4}, {1, 2'844'000'000}));
  EXPECT_FALSE(rep.overall);
  EXPECT_EQ(rep.clauses.front().clause, "r_1 >= 2");
  EXPECT_EQ(rep.clauses.front().status, ClauseStatus::Fail);
}

TEST(Validate, HugeExponentIsUnrepresentable) {
  // r_3^{m_3} with m_3 = 1 + 2.844e9 overflows any double comparison
  const ValidityReport rep = validate_growth(ParamSeq({2, 4, 8}, {1, 2'844'000'000, 3'000'000'000}));
  EXPECT_FALSE(rep.overall);
  EXPECT_EQ(rep.clauses.back().status, ClauseStatus::UnrepresentableFail);
}

TEST(Profiles, UnknownNameThrows) { EXPECT_THROW(make_toy("nope"), std::invalid_argument); }

TEST(Profiles, HashIsStableAndDistinguishes) {
  EXPECT_EQ(params_hash(make_toy("doubling")), params_hash(make_toy("doubling")));
  EXPECT_NE(params_hash(make_toy("doubling")), params_hash(make_toy("steep")));
}
