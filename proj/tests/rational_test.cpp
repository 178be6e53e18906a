#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dioph/error.hpp"
#include "dioph/rational.hpp"

namespace dioph {
namespace {

BigRational abs_r(const BigRational& r) { return r < 0 ? BigRational(-r) : r; }

// Checks the convergent law and the determinant identity on a list.
void check_laws(const HiReal& x, const std::vector<Convergent>& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    ASSERT_GT(c.q, 0);
    EXPECT_EQ(boost::multiprecision::gcd(c.a < 0 ? BigInt(-c.a) : c.a, c.q), 1);
    // Holds for every point of the enclosure.
    EXPECT_LE(c.err, BigRational(1, c.q * c.q)) << i;
    if (i > 0) {
      const BigInt det = c.a * cs[i - 1].q - cs[i - 1].a * cs[i].q;
      EXPECT_TRUE(det == 1 || det == -1) << i;
      EXPECT_GT(c.q, cs[i - 1].q - (i == 1 ? 1 : 0));
      // |q x - a| decreases, checked at both ends of the enclosure.
      for (const BigRational& v : {x.lower(), x.upper()}) {
        EXPECT_LT(abs_r(c.q * v - c.a), abs_r(cs[i - 1].q * v - cs[i - 1].a)) << i;
      }
    }
  }
}

TEST(ContinuedFraction, ExactRationalTerminates) {
  const auto cs = continued_fraction(HiReal::rational(7, 3), 10);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].a, 2);
  EXPECT_EQ(cs[0].q, 1);
  EXPECT_EQ(cs[1].a, 7);
  EXPECT_EQ(cs[1].q, 3);
  EXPECT_EQ(cs[1].err, 0);
}

TEST(ContinuedFraction, SqrtTwo) {
  const HiReal x = HiReal::parse("sqrt(2)");
  EXPECT_EQ(x.provenance(), HiReal::Provenance::symbolic);
  const auto cs = continued_fraction(x, 30);
  ASSERT_EQ(cs.size(), 30u);
  const int a[] = {1, 3, 7, 17, 41};
  const int q[] = {1, 2, 5, 12, 29};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(cs[i].a, a[i]);
    EXPECT_EQ(cs[i].q, q[i]);
  }
  // Pell oracle: a^2 - 2 q^2 = +-1 for every convergent.
  for (const auto& c : cs) {
    const BigInt pell = c.a * c.a - 2 * c.q * c.q;
    EXPECT_TRUE(pell == 1 || pell == -1);
  }
  EXPECT_NEAR(cs[3].err_double(), 0.002453, 5e-7);
  EXPECT_LE(cs[3].err_double(), 1.0 / 144.0);
  check_laws(x, cs);
}

TEST(ContinuedFraction, GoldenRatioAllOnes) {
  const HiReal x = HiReal::parse("(1 + sqrt(5)) / 2");
  const auto cs = continued_fraction(x, 30);
  ASSERT_EQ(cs.size(), 30u);
  BigInt f0 = 1, f1 = 1;
  for (const auto& c : cs) {
    EXPECT_EQ(c.term, 1);
    // Convergents are ratios of consecutive Fibonacci numbers.
    EXPECT_EQ(c.a, f1);
    EXPECT_EQ(c.q, f0);
    const BigInt f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  check_laws(x, cs);
}

TEST(ContinuedFraction, DecimalLiterals) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int n = 0; n < 10; ++n) {
    std::string lit = std::to_string(1 + n) + ".";
    for (int i = 0; i < 80; ++i) lit += static_cast<char>('0' + digit(rng));
    const HiReal x = HiReal::decimal(lit);
    EXPECT_EQ(x.provenance(), HiReal::Provenance::decimal_literal);
    const auto cs = continued_fraction(x, 30);
    ASSERT_EQ(cs.size(), 30u) << lit;
    check_laws(x, cs);
  }
}

TEST(ContinuedFraction, PrecisionExhaustionNamesDepth) {
  const HiReal x = HiReal::decimal("1.41421356");
  try {
    continued_fraction(x, 40);
    FAIL();
  } catch (const PrecisionExhausted& e) {
    EXPECT_GT(e.max_trustworthy_depth(), 3u);
    EXPECT_LT(e.max_trustworthy_depth(), 15u);
    // The trustworthy prefix is a prefix of the sqrt(2) expansion.
    const auto ok = continued_fraction(x, e.max_trustworthy_depth());
    const auto ref = continued_fraction(HiReal::sqrt_of(2), e.max_trustworthy_depth());
    for (std::size_t i = 0; i + 1 < ok.size(); ++i) EXPECT_EQ(ok[i].term, ref[i].term);
  }
}

TEST(ContinuedFraction, NegativeValues) {
  const auto cs = continued_fraction(HiReal::rational(-7, 3), 10);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0].term, -3);
  EXPECT_EQ(cs.back().a, -7);
  EXPECT_EQ(cs.back().q, 3);
  const auto neg = continued_fraction(HiReal::parse("-sqrt(2)"), 20);
  check_laws(HiReal::parse("-sqrt(2)"), neg);
}

// Brute force: the q <= Q minimising |q x - a| (smallest q on ties), with x
// taken at the midpoint of its enclosure.
std::pair<BigInt, BigInt> brute_best(const HiReal& x, int Q) {
  const BigRational mid = (x.lower() + x.upper()) / 2;
  BigRational best = -1;
  std::pair<BigInt, BigInt> arg;
  for (int q = 1; q <= Q; ++q) {
    const BigRational qx = mid * q;
    const BigInt n = boost::multiprecision::numerator(qx);
    const BigInt d = boost::multiprecision::denominator(qx);
    BigInt fl = n / d;
    if (n % d != 0 && n < 0) --fl;
    for (const BigInt& a : {fl, BigInt(fl + 1)}) {
      const BigRational dist = abs_r(qx - a);
      if (best < 0 || dist < best) {
        best = dist;
        arg = {a, BigInt(q)};
      }
    }
  }
  return arg;
}

TEST(Dirichlet, Examples) {
  const auto r = dirichlet_approx(HiReal::sqrt_of(2), 10);
  EXPECT_EQ(r.a, 7);
  EXPECT_EQ(r.q, 5);
  EXPECT_NEAR(std::fabs(5 * std::sqrt(2.0) - 7), 0.0711, 5e-5);
  const auto h = dirichlet_approx(HiReal::rational(1, 2), 100);
  EXPECT_EQ(h.a, 1);
  EXPECT_EQ(h.q, 2);
  const HiReal pi = HiReal::decimal(
      "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899");
  const auto p = dirichlet_approx(pi, 200);
  EXPECT_EQ(p.a, 355);
  EXPECT_EQ(p.q, 113);
  EXPECT_LE(p.err, BigRational(1, 113 * 200));
  EXPECT_THROW(dirichlet_approx(pi, 0), DomainError);
}

TEST(Dirichlet, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(2, 500);
  std::uniform_int_distribution<int> qb(1, 10000);
  for (int t = 0; t < 12; ++t) {
    int n = d(rng);
    if (static_cast<int>(std::sqrt(n)) * static_cast<int>(std::sqrt(n)) == n) ++n;
    const HiReal x = HiReal::sqrt_of(n) / HiReal::rational(7);
    const int Q = t < 3 ? t + 1 : qb(rng);
    const auto r = dirichlet_approx(x, Q);
    const auto ref = brute_best(x, Q);
    EXPECT_EQ(r.a, ref.first) << n << " " << Q;
    EXPECT_EQ(r.q, ref.second) << n << " " << Q;
    EXPECT_LE(r.err, BigRational(1, r.q * Q));
  }
}

TEST(HiRealTest, ParsingAndArithmetic) {
  EXPECT_TRUE(HiReal::parse("-7/3").exact());
  EXPECT_EQ(HiReal::parse("-7/3").lower(), BigRational(-7, 3));
  EXPECT_EQ(HiReal::parse("sqrt(16/9)").lower(), BigRational(4, 3));
  EXPECT_TRUE(HiReal::parse("sqrt(16/9)").exact());
  const HiReal s = HiReal::parse("sqrt(2) * sqrt(2)");
  EXPECT_LE(s.lower(), 2);
  EXPECT_GE(s.upper(), 2);
  EXPECT_LT(s.width(), BigRational(1, BigInt(1) << 500));
  const HiReal dec = HiReal::decimal("0.25");
  EXPECT_EQ(dec.lower(), BigRational(245, 1000));
  EXPECT_EQ(dec.upper(), BigRational(255, 1000));
  EXPECT_EQ(HiReal::decimal("1.5e2").lower(), BigRational(145));
  EXPECT_NEAR(HiReal::parse("(1+sqrt(5))/2").to_double(), 1.6180339887498949, 1e-15);
  EXPECT_THROW(HiReal::parse("sqrt(2"), FormatError);
  EXPECT_THROW(HiReal::parse("2 $ 3"), FormatError);
  EXPECT_THROW(HiReal::parse("1/0"), DomainError);
  EXPECT_THROW(HiReal::parse("sqrt(-1)"), DomainError);
  // Precision of an enclosed irrational is below 2^-100.
  EXPECT_LT(HiReal::sqrt_of(3).width(), BigRational(1, BigInt(1) << 100));
}

TEST(SequenceX, Values) {
  EXPECT_NEAR(sequence_X(100.0, 1.1), 6422.3254, 1e-4);
  // The commonly quoted 6.4237e3 agrees to about 3e-4 relative only.
  EXPECT_NEAR(sequence_X(100.0, 1.1), 6423.7, 3e-4 * 6423.7);
  EXPECT_NEAR(sequence_X(2.0, 1.0), 3.4822, 5e-5);
  EXPECT_NEAR(sequence_X(50.0, 1e9) / std::pow(50.0, 4.5), 1.0, 1e-7);
  EXPECT_LT(sequence_X(10.0, 1.05), sequence_X(11.0, 1.05));
  EXPECT_THROW(sequence_X(1.0, 1.0), DomainError);
  EXPECT_THROW(sequence_X(1e300, 100.0), DomainError);
}

}  // namespace
}  // namespace dioph
