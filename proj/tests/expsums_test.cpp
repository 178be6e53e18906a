#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "dioph/error.hpp"
#include "dioph/expsums.hpp"
#include "dioph/quadrature.hpp"

namespace dioph {
namespace {

const PrimeTable& table() {
  static const PrimeTable t = PrimeTable::build(2'000'000);
  return t;
}

TEST(EvalS, AtZeroIsThetaWeight) {
  const Complex s = eval_S(table(), {100.0, 2.0, 0.1}, 0.0);
  EXPECT_NEAR(s.real(), std::log(11.0) + std::log(13.0), 1e-13);
  EXPECT_NEAR(s.real(), 4.9628445, 1e-6);
  EXPECT_EQ(s.imag(), 0.0);
}

TEST(EvalS, HalfTurnFlipsOddPrimes) {
  const Complex s = eval_S(table(), {10.0, 1.0, 0.1}, 0.5);
  EXPECT_NEAR(s.real(), -std::log(11.0 * 13 * 17 * 19), 1e-13);
  EXPECT_NEAR(s.real(), -10.7404962, 1e-6);
  EXPECT_NEAR(s.imag(), 0.0, 1e-15);
}

TEST(EvalS, TriangleInequalityConjugationPeriodicity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (double k : {1.0, 1.05, 2.0}) {
    const WindowSpec w{5000.0, k, 0.1};
    const double at0 = eval_S(table(), w, 0.0).real();
    for (int i = 0; i < 50; ++i) {
      const double a = dist(rng);
      const Complex s = eval_S(table(), w, a);
      EXPECT_LE(std::abs(s), at0 * (1 + 1e-14));
      const Complex sm = eval_S(table(), w, -a);
      EXPECT_NEAR(sm.real(), s.real(), 1e-10);
      EXPECT_NEAR(sm.imag(), -s.imag(), 1e-10);
      if (k == 1.0) {
        const Complex s1 = eval_S(table(), w, a + 1.0);
        EXPECT_NEAR(std::abs(s1 - s), 0.0, 1e-9);
      }
    }
  }
}

TEST(EvalS, TableTooSmallNamesLimit) {
  const auto small = PrimeTable::build(1000);
  try {
    eval_S(small, {1e4, 1.0, 0.1}, 0.1);
    FAIL();
  } catch (const TableTooSmall& e) {
    EXPECT_EQ(e.required_limit(), 20000u);
  }
}

TEST(EvalU, Counts) {
  EXPECT_NEAR(eval_U({100.0, 2.0, 0.1}, 0.0).real(), 5.0, 0.0);
  const Complex u1 = eval_U({100.0, 2.0, 0.1}, 1.0);
  EXPECT_NEAR(u1.real(), 5.0, 1e-15);
  EXPECT_NEAR(u1.imag(), 0.0, 1e-15);
  EXPECT_EQ(eval_U({100.0, 1.5, 0.1}, 0.0).real(), 13.0);
}

TEST(EvalU, PrimeExcessBound) {
  // |S - U| <= sum |l(n) - 1| pointwise.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (double k : {1.0, 1.1, 2.0}) {
    const WindowSpec w{3000.0, k, 0.1};
    const double bound = prime_excess_sum(table(), dyadic_window(w)).l1_norm();
    for (int i = 0; i < 40; ++i) {
      const double a = dist(rng);
      EXPECT_LE(std::abs(eval_S(table(), w, a) - eval_U(w, a)), bound * (1 + 1e-12));
    }
  }
}

// Plain composite Gauss-Legendre in t, no substitution, 10x denser than the
// oscillation requires.
Complex brute_T(double X, double k, double delta, double alpha) {
  const double a = std::pow(delta * X, 1.0 / k);
  const double b = std::pow(X, 1.0 / k);
  const double cycles = std::fabs(alpha) * (X - delta * X) + 1.0;
  const auto panels = static_cast<std::size_t>(std::ceil(400.0 * cycles));
  const double re = quad::composite_gauss(
      [&](double t) { return cos_turn(static_cast<long double>(alpha) * std::pow(t, k)); }, a, b,
      panels, 16);
  const double im = quad::composite_gauss(
      [&](double t) { return sin_turn(static_cast<long double>(alpha) * std::pow(t, k)); }, a, b,
      panels, 16);
  return {re, im};
}

TEST(EvalT, ZeroFrequencyIsLength) {
  const WindowSpec w{100.0, 2.0, 0.01};
  const Complex t = eval_T(w, 0.0, 1e-12);
  EXPECT_EQ(t.real(), 10.0 - 1.0);
  EXPECT_EQ(t.imag(), 0.0);
}

TEST(EvalT, MatchesBruteForce) {
  const WindowSpec w{100.0, 2.0, 0.01};
  const Complex ref = brute_T(100.0, 2.0, 0.01, 0.03);
  const Complex t = eval_T(w, 0.03, 1e-11);
  EXPECT_NEAR(t.real(), ref.real(), 1e-9);
  EXPECT_NEAR(t.imag(), ref.imag(), 1e-9);
  for (double k : {1.05, 1.5, 3.0}) {
    for (double a : {0.002, 0.17, 1.3}) {
      const Complex r = brute_T(500.0, k, 0.1, a);
      const Complex v = eval_T({500.0, k, 0.1}, a, 1e-11);
      EXPECT_NEAR(std::abs(v - r), 0.0, 1e-9) << k << " " << a;
    }
  }
}

TEST(EvalT, ClosedFormForLinearPhase) {
  const WindowSpec w{700.0, 1.0, 0.1};
  const Complex r = brute_T(700.0, 1.0, 0.1, 0.37);
  EXPECT_NEAR(std::abs(eval_T(w, 0.37, 1e-12) - r), 0.0, 1e-10);
}

TEST(EvalT, ConjugateSymmetry) {
  const WindowSpec w{2000.0, 1.07, 0.1};
  for (double a : {0.001, 0.013, 0.4}) {
    const Complex p = eval_T(w, a, 1e-10);
    const Complex m = eval_T(w, -a, 1e-10);
    EXPECT_NEAR(std::abs(m - std::conj(p)), 0.0, 1e-9);
  }
}

TEST(EvalT, RespectsDecayShape) {
  // Frozen constant for |T| <= C X^{1/k-1} min(X, 1/|alpha|) over the grid
  // below; the largest observed ratio was 0.90 (length-dominated at small alpha).
  constexpr double kFrozen = 0.90;
  double worst = 0.0;
  for (double k : {1.0, 1.05, 1.1, 2.0}) {
    for (double X : {1e3, 1e4, 1e5}) {
      const WindowSpec w{X, k, 0.1};
      for (double a = 1e-6; a < 1.0; a *= 3.7) {
        const double ratio = std::abs(eval_T(w, a, 1e-9)) / t_decay_shape(w, a);
        worst = std::max(worst, ratio);
      }
    }
  }
  RecordProperty("t_decay_constant", std::to_string(worst));
  EXPECT_LE(worst, 2.0 * kFrozen);
}

TEST(EvalT, EulerSummationAgainstU) {
  // |T - U| <= C (1 + |alpha| X) with T and U over the same window.
  constexpr double kFrozen = 1.0;
  double worst = 0.0;
  for (double k : {1.0, 1.05, 1.5, 2.0}) {
    for (double X : {1e3, 1e4, 1e5}) {
      const WindowSpec w{X, k, 0.1};
      const PhaseSum u = integer_power_sum(lower_window(w));
      for (double a = 1e-7; a < 0.5; a *= 2.9) {
        for (double sign : {-1.0, 1.0}) {
          const double al = sign * a;
          const double diff = std::abs(eval_T(w, al, 1e-9) - u(al));
          worst = std::max(worst, diff / (1.0 + std::fabs(al) * X));
        }
      }
    }
  }
  RecordProperty("euler_summation_constant", std::to_string(worst));
  EXPECT_LE(worst, 2.0 * kFrozen);
}

TEST(Fejer, KernelValues) {
  const double eta = 0.37;
  EXPECT_EQ(fejer_K(eta, 0.0), eta * eta);
  EXPECT_NEAR(fejer_K(eta, 1.0 / (2 * eta)), std::pow(2 * eta / M_PI, 2), 1e-15);
  EXPECT_EQ(fejer_K(0.5, 2.0), 0.0);
  EXPECT_THROW(fejer_K(0.0, 1.0), DomainError);
  for (double a = 0.01; a < 100; a *= 1.3) {
    EXPECT_GE(fejer_K(eta, a), 0.0);
    EXPECT_LE(fejer_K(eta, a), std::min(eta * eta, 1.0 / (a * a)) * (1 + 1e-14));
  }
}

TEST(Fejer, TentValues) {
  EXPECT_EQ(fejer_hat(0.4, 0.0), 0.4);
  EXPECT_EQ(fejer_hat(0.4, 0.4), 0.0);
  EXPECT_EQ(fejer_hat(0.4, -1.0), 0.0);
  EXPECT_EQ(fejer_hat(0.4, 0.2), 0.2);
}

TEST(Fejer, FourierPair) {
  EXPECT_LE(verify_fourier_pair(0.1, 0.0, 1e4), 3e-5);
  EXPECT_LE(verify_fourier_pair(0.1, 0.2, 1e4), 3e-5);
  EXPECT_LE(verify_fourier_pair(1.0, 0.5, 1e4), 3e-5);
  EXPECT_THROW(verify_fourier_pair(0.1, 0.0, 50.0), DomainError);
}

// |S_2^2|^2 integrated exactly: S_2^2 = sum_f c_f e(f alpha) with integer
// frequencies f = p^2 + q^2, and int_lo^hi e(d alpha) has a closed form.
double fourth_moment_pairwise(double X, double lo, double hi) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p : table().primes()) {
    if (p * p >= X && p * p <= 2 * X) ps.push_back(p);
  }
  std::map<std::int64_t, double> c;
  for (auto p : ps) {
    for (auto q : ps) c[static_cast<std::int64_t>(p * p + q * q)] += std::log(double(p)) * std::log(double(q));
  }
  long double total = 0.0L;
  for (const auto& [f, cf] : c) {
    for (const auto& [g, cg] : c) {
      const std::int64_t d = f - g;
      long double v;
      if (d == 0) {
        v = hi - lo;
      } else {
        // Real part of int e(d a) da.
        v = (std::sin(2.0L * M_PIl * d * hi) - std::sin(2.0L * M_PIl * d * lo)) / (2.0L * M_PIl * d);
      }
      total += static_cast<long double>(cf) * cg * v;
    }
  }
  return static_cast<double>(total);
}

TEST(FourthMoment, DegenerateInterval) {
  EXPECT_EQ(fourth_moment_S2(table(), {100.0, 2.0, 0.1}, 0.3, 0.3).value, 0.0);
}

TEST(FourthMoment, MatchesPairwiseFormula) {
  for (double X : {100.0, 1000.0, 20000.0}) {
    const auto rep = fourth_moment_S2(table(), {X, 2.0, 0.1}, 0.0, 1.0);
    const double ref = fourth_moment_pairwise(X, 0.0, 1.0);
    EXPECT_NEAR(rep.value, ref, 1e-6 * ref) << X;
    const auto part = fourth_moment_S2(table(), {X, 2.0, 0.1}, 0.1, 0.37);
    const double ref_part = fourth_moment_pairwise(X, 0.1, 0.37);
    EXPECT_NEAR(part.value, ref_part, 1e-6 * ref_part) << X;
  }
}

TEST(FourthMoment, RatioMonitor) {
  for (double X : {1e2, 1e3, 1e4}) {
    const auto rep = fourth_moment_S2(table(), {X, 2.0, 0.1}, 0.0, 1.0);
    EXPECT_GT(rep.ratio, 0.0);
    RecordProperty("fourth_moment_ratio_X" + std::to_string(static_cast<int>(X)),
                   std::to_string(rep.ratio));
  }
}

}  // namespace
}  // namespace dioph
