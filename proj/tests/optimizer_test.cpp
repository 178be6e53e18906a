#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "dioph/error.hpp"
#include "dioph/optimizer.hpp"

namespace dioph::optimizer {
namespace {

BigRational R(long long p, long long q = 1) { return BigRational(p, q); }

TEST(Constraints, Shape) {
  for (const BigRational& k : {R(1), R(33, 29), R(2), R(1, 3)}) {
    EXPECT_EQ(build_constraints(k).constraints.size(), 6u);
  }
  // k = 1: constraint 5 is 2b + 2c <= 1/a.
  const auto c5 = build_constraints(R(1)).constraints[4].parts[0];
  EXPECT_EQ(c5.rhs, 0);
  EXPECT_EQ(c5.x, -1);
  EXPECT_EQ(c5.b, 2);
  EXPECT_EQ(c5.c, 2);
  // k = 33/29: constraint 6 is c <= b/4 - (1/2 - 29/66).
  const auto c6 = build_constraints(R(33, 29)).constraints[5].parts[0];
  EXPECT_EQ(c6.rhs, -(R(1, 2) - R(29, 66)));
  EXPECT_EQ(c6.b, R(-1, 4));
  EXPECT_THROW(build_constraints(R(0)), DomainError);
}

TEST(Solve, KnownPoints) {
  const auto s1 = solve(R(1));
  ASSERT_TRUE(s1.feasible);
  EXPECT_EQ(s1.inv_a, R(5, 9));
  EXPECT_EQ(s1.b, R(2, 9));
  EXPECT_EQ(s1.c, R(1, 18));
  const auto edge = solve(R(33, 29));
  ASSERT_TRUE(edge.feasible);
  EXPECT_EQ(edge.c, 0);
  const auto s2 = solve(R(2));
  EXPECT_FALSE(s2.feasible);
  EXPECT_FALSE(s2.certificate.empty());
  // The certificate really is infeasible: c >= 0, c <= b/4 - 1/4 and b <= 2/5.
  EXPECT_EQ(s2.certificate, (std::vector<std::string>{"2'", "3", "6"}));
  const auto relaxed = solve(R(2), Objective::free_c);
  ASSERT_TRUE(relaxed.feasible);
  EXPECT_EQ(relaxed.c, closed_form(R(2)).c);
  EXPECT_LT(relaxed.c, 0);
}

TEST(Solve, MatchesClosedFormOnRandomK) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long long> den(2, 100000);
  int checked = 0;
  while (checked < 50) {
    const long long q = den(rng);
    std::uniform_int_distribution<long long> num(q + 1, (33 * q - 1) / 29);
    if (q + 1 > (33 * q - 1) / 29) continue;
    const BigRational k(num(rng), q);
    ASSERT_GT(k, 1);
    ASSERT_LT(k, R(33, 29));
    const auto s = solve(k);
    const auto cf = closed_form(k);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.inv_a, cf.inv_a);
    EXPECT_EQ(s.b, cf.b);
    EXPECT_EQ(s.c, cf.c);
    // Raising c by any positive amount breaks a constraint.
    const auto rows = build_constraints(k).rows();
    for (const BigRational& eps : {R(1, 1000000), R(1, 7)}) {
      bool broken = false;
      for (const auto& r : rows) broken |= r.slack(s.inv_a, s.b, s.c + eps) < 0;
      EXPECT_TRUE(broken);
    }
    ++checked;
  }
}

TEST(VerifyClosedForm, Examples) {
  const auto one = verify_closed_form(R(1));
  EXPECT_TRUE(one.all_hold);
  for (const char* id : {"5", "6"}) {
    EXPECT_NE(std::find(one.tight.begin(), one.tight.end(), id), one.tight.end()) << id;
  }
  const auto e = verify_closed_form(R(11, 10));
  EXPECT_EQ(e.value.inv_a, R(52, 99));
  EXPECT_EQ(e.value.b, R(47, 198));
  EXPECT_EQ(e.value.c, R(11, 792));
  EXPECT_TRUE(e.all_hold);
  EXPECT_EQ(e.tight, (std::vector<std::string>{"4", "5", "6"}));
  const auto out = verify_closed_form(R(6, 5));
  EXPECT_TRUE(out.c_negative);
  EXPECT_FALSE(out.all_hold);
}

TEST(KMax, IsExactly33Over29) {
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(k_max(), R(33, 29));
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(1));
}

}  // namespace
}  // namespace dioph::optimizer
