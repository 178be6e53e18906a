#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// A real number known to lie in the closed rational interval [lower, upper].
// Exact rationals have lower == upper. Arithmetic is outward-exact: the
// result interval contains every value the operands could take.
class HiReal {
 public:
  enum class Provenance { exact_rational, decimal_literal, symbolic };

  // Fractional bits used when an irrational value is first enclosed.
  static constexpr unsigned kDefaultBits = 512;

  HiReal() = default;

  static HiReal rational(const BigInt& p, const BigInt& q);
  static HiReal rational(const BigRational& r);
  // "1.4142135623" is the interval of half a unit in the last written digit
  // around the literal. Integers without a point are exact.
  static HiReal decimal(std::string_view literal);
  // sqrt(d) for an integer d >= 0, enclosed to `bits` fractional bits.
  static HiReal sqrt_of(const BigInt& d, unsigned bits = kDefaultBits);
  // Expressions over integers, decimals, + - * / ( ) and sqrt(...):
  // "sqrt(2)", "(1+sqrt(5))/2", "-7/3", "3.14159265358979".
  static HiReal parse(std::string_view expr, unsigned bits = kDefaultBits);

  const BigRational& lower() const noexcept { return lo_; }
  const BigRational& upper() const noexcept { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  bool exact() const noexcept { return lo_ == hi_; }
  Provenance provenance() const noexcept { return provenance_; }
  double to_double() const;

  friend HiReal operator+(const HiReal& a, const HiReal& b);
  friend HiReal operator-(const HiReal& a, const HiReal& b);
  friend HiReal operator*(const HiReal& a, const HiReal& b);
  // Throws DomainError when b's interval contains zero.
  friend HiReal operator/(const HiReal& a, const HiReal& b);
  HiReal operator-() const;
  // Square root of a non-negative interval.
  HiReal sqrt(unsigned bits = kDefaultBits) const;

 private:
  HiReal(BigRational lo, BigRational hi, Provenance p)
      : lo_(std::move(lo)), hi_(std::move(hi)), provenance_(p) {}

  BigRational lo_{0};
  BigRational hi_{0};
  Provenance provenance_ = Provenance::exact_rational;
};

std::string to_string(HiReal::Provenance p);
std::string to_string(const BigRational& r);

struct Convergent {
  BigInt a;      // numerator
  BigInt q;      // denominator, positive
  BigInt term;   // the partial quotient that produced this convergent
  // Upper bound on |x - a/q| over the enclosing interval of x.
  BigRational err;
  double err_double() const;
};

// Convergents of the regular continued fraction of x, at most n_terms of
// them. An exact rational stops after its last convergent. Throws
// PrecisionExhausted (naming the number of trustworthy terms) when the
// enclosure of x no longer determines the next partial quotient.
std::vector<Convergent> continued_fraction(const HiReal& x, std::size_t n_terms);

// a/q with 1 <= q <= Qbound and |x - a/q| <= 1/(q Qbound): the last
// convergent with denominator at most Qbound, which also minimises |q x - a|
// over all q <= Qbound.
Convergent dirichlet_approx(const HiReal& x, const BigInt& Qbound);

// q^{9k/(2k+3)}.
double sequence_X(double q, double k);

}  // namespace dioph
