#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "dioph/error.hpp"
#include "dioph/search.hpp"

namespace dioph {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

const PrimeTable& table() {
  static const PrimeTable t = PrimeTable::build(1'100'000);
  return t;
}

Big big_residual(const ProblemInstance& inst, const SolutionRecord& r) {
  return Big(inst.lambda1) * r.p1 + Big(inst.lambda2) * Big(r.p2) * r.p2 +
         Big(inst.lambda3) * pow(Big(r.p3), Big(inst.k)) + Big(inst.varpi);
}

// Independent oracle: trial division and a full triple loop in 50-digit floats.
std::vector<SolutionRecord> naive(const ProblemInstance& inst, double X, double thr) {
  auto prime = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  const Big lo = Big(inst.delta) * X, hi = Big(X);
  auto in = [&](std::uint64_t n, double k) {
    const Big v = pow(Big(n), Big(k));
    return v >= lo && v <= hi;
  };
  std::vector<std::uint64_t> a, b, c;
  const auto top = static_cast<std::uint64_t>(std::pow(X, 1.0 / std::min(1.0, inst.k))) + 2;
  for (std::uint64_t n = 2; n <= top; ++n) {
    if (!prime(n)) continue;
    if (in(n, 1)) a.push_back(n);
    if (in(n, 2)) b.push_back(n);
    if (in(n, inst.k)) c.push_back(n);
  }
  std::vector<SolutionRecord> out;
  for (auto p1 : a) {
    for (auto p2 : b) {
      for (auto p3 : c) {
        SolutionRecord r{p1, p2, p3, 0.0, {}};
        if (abs(big_residual(inst, r)) <= thr) out.push_back(r);
      }
    }
  }
  return out;
}

TEST(Search, ExactHit) {
  ProblemInstance inst{1, 2, -1, 2, 0, 0.01, 0.1, {}};
  const auto rep = find_solutions(inst, table(), 30, 0.0);
  ASSERT_FALSE(rep.records.empty());
  const SolutionRecord want{17, 2, 5, 0.0, {}};
  EXPECT_NE(std::find(rep.records.begin(), rep.records.end(), want), rep.records.end());
  EXPECT_EQ(residual(inst, 17, 2, 5), 0.0);
}

TEST(Search, MatchesOraclesOnRandomInstances) {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> lam(0.3, 3.0), kd(1.0, 1.2), xd(200, 2000),
      thr(0.01, 2.0), dd(0.05, 0.5), vd(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    ProblemInstance inst;
    inst.lambda1 = lam(rng);
    inst.lambda2 = (trial % 2 ? -1 : 1) * lam(rng);
    inst.lambda3 = -lam(rng);
    inst.k = trial % 5 == 0 ? 2.0 : kd(rng);
    inst.varpi = vd(rng);
    inst.delta = dd(rng);
    const double X = xd(rng), t = thr(rng);
    const auto fast = find_solutions(inst, table(), X, t, 1u << 20);
    const auto brute = brute_force_solutions(inst, table(), X, t);
    const auto ref = naive(inst, X, t);
    EXPECT_EQ(fast.records, brute.records) << "trial " << trial;
    EXPECT_EQ(fast.records, ref) << "trial " << trial;
    EXPECT_EQ(fast.count, ref.size());
  }
}

TEST(Search, SameSignHasNoSolutions) {
  ProblemInstance inst{1, 1.5, 2, 1.1, 0, 0.01, 0.1, {}};
  EXPECT_FALSE(inst.mixed_signs());
  EXPECT_EQ(find_solutions(inst, table(), 5000, 1.0).count, 0u);
}

TEST(Search, SymmetryUnderNegation) {
  ProblemInstance a{1.3, -0.7, -1.1, 1.05, 0.4, 0.01, 0.2, {}};
  ProblemInstance b = a;
  b.lambda1 = -a.lambda1;
  b.lambda2 = -a.lambda2;
  b.lambda3 = -a.lambda3;
  b.varpi = -a.varpi;
  const auto ra = find_solutions(a, table(), 3000, 0.5, 1u << 20);
  const auto rb = find_solutions(b, table(), 3000, 0.5, 1u << 20);
  ASSERT_EQ(ra.records, rb.records);
  for (std::size_t i = 0; i < ra.records.size(); ++i) {
    EXPECT_EQ(ra.records[i].residual, -rb.records[i].residual);
  }
}

TEST(Search, MonotoneInThreshold) {
  ProblemInstance inst{1, 1.7, -2.3, 1.1, 0, 0.01, 0.1, {}};
  std::uint64_t prev = 0;
  for (double t : {0.01, 0.03, 0.1, 0.3, 1.0}) {
    const auto rep = find_solutions(inst, table(), 4000, t, 1u << 20);
    EXPECT_GE(rep.count, prev);
    prev = rep.count;
  }
  EXPECT_GT(prev, 0u);
}

TEST(Search, ResidualsSurviveHighPrecision) {
  ProblemInstance inst{std::sqrt(2.0), -std::acos(-1.0), 1.0, 1.1, 0.25, 0.01, 0.1, {}};
  const auto rep = find_solutions(inst, table(), 1e6, 0.1, 200);
  ASSERT_GT(rep.records.size(), 0u);
  for (const auto& r : rep.records) {
    const Big exact = big_residual(inst, r);
    EXPECT_LE(abs(exact - Big(r.residual)), 1e-9);
  }
}

TEST(Search, CapKeepsCount) {
  ProblemInstance inst{1, 1.7, -2.3, 1.1, 0, 0.01, 0.1, {}};
  const auto full = find_solutions(inst, table(), 4000, 1.0, 1u << 20);
  const auto capped = find_solutions(inst, table(), 4000, 1.0, 3);
  EXPECT_EQ(capped.count, full.count);
  ASSERT_EQ(capped.records.size(), 3u);
  EXPECT_TRUE(capped.truncated);
  EXPECT_TRUE(std::equal(capped.records.begin(), capped.records.end(), full.records.begin()));
}

TEST(Search, ThreadInvariance) {
  ProblemInstance inst{1, -1.7, 2.3, 1.1, 0.3, 0.01, 0.1, {}};
  const auto one = find_solutions(inst, table(), 2e4, 0.2, 1u << 20, Exec{1});
  const auto four = find_solutions(inst, table(), 2e4, 0.2, 1u << 20, Exec{4});
  EXPECT_EQ(one.records, four.records);
}

TEST(Search, Guards) {
  ProblemInstance inst;
  EXPECT_THROW(brute_force_solutions(inst, table(), 2e4, 1.0), DomainError);
  EXPECT_THROW(find_solutions(inst, table(), 2e6, 1.0), TableTooSmall);
  EXPECT_THROW(find_solutions(inst, table(), 100, -1.0), DomainError);
  inst.lambda2 = 0;
  EXPECT_THROW(find_solutions(inst, table(), 100, 1.0), DomainError);
}

TEST(Search, EmptyWindowDiagnostic) {
  ProblemInstance inst{1, 1, -1, 1, 0, 0.01, 0.9, {}};
  // p2^2 in [9, 10] holds no prime square.
  const auto rep = find_solutions(inst, table(), 10, 1.0);
  EXPECT_EQ(rep.count, 0u);
  EXPECT_FALSE(rep.diagnostic.empty());
}

TEST(Search, TheoremThreshold) {
  ProblemInstance inst{1, 1, -1, 1, 0, 0.0, 0.1, {}};
  EXPECT_NEAR(theorem_threshold(inst, 1e6), std::pow(1e6, -4.0 / 72.0), 1e-15);
  EXPECT_NEAR(theorem_threshold(inst, 1e6), 0.4642, 5e-5);
  inst.k = 33.0 / 29.0;
  EXPECT_NEAR(theorem_threshold(inst, 1e6), 1.0, 1e-12);
}

TEST(Search, OwnThresholdFlags) {
  ProblemInstance inst{1, 2, -1, 2, 0, 0.01, 0.1, {}};
  auto rep = find_solutions(inst, table(), 200, 0.5);
  flag_own_thresholds(inst, rep);
  for (const auto& r : rep.records) {
    ASSERT_TRUE(r.meets_own_threshold.has_value());
    const double top = static_cast<double>(std::max({r.p1, r.p2, r.p3}));
    EXPECT_EQ(*r.meets_own_threshold, std::fabs(r.residual) <= theorem_threshold(inst, top));
  }
}

}  // namespace
}  // namespace dioph
