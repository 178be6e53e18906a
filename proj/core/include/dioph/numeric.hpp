#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace dioph {

using Complex = std::complex<double>;

static_assert(std::numeric_limits<long double>::digits >= 64,
              "phase reduction needs an extended long double (x87 80-bit or wider)");

// exp(2 pi i t). The reduction to [-1/8, 1/8] turns happens in long double
// before any multiplication by 2 pi, and quarter turns are resolved exactly,
// so e(n/4) is exact for every integer n.
inline Complex unit_turn(long double t) {
  const long double q = std::nearbyint(4.0L * t);
  const double r = static_cast<double>(t - q / 4.0L);
  const double angle = 2.0 * M_PI * r;
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  switch (static_cast<long long>(std::fmod(q, 4.0L) + 4.0L) % 4) {
    case 0:
      return {c, s};
    case 1:
      return {-s, c};
    case 2:
      return {-c, -s};
    default:
      return {s, -c};
  }
}

inline double sin_turn(long double t) { return unit_turn(t).imag(); }
inline double cos_turn(long double t) { return unit_turn(t).real(); }

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }
  static DoubleDouble from_long_double(long double v) {
    const double h = static_cast<double>(v);
    return {h, static_cast<double>(v - h)};
  }

  DoubleDouble operator+(const DoubleDouble& o) const {
    DoubleDouble s = two_sum(hi, o.hi);
    s.lo += lo + o.lo;
    return two_sum(s.hi, s.lo);
  }
  DoubleDouble operator*(double b) const {
    DoubleDouble p = two_prod(hi, b);
    p.lo += lo * b;
    return two_sum(p.hi, p.lo);
  }
  double value() const { return hi + lo; }
  long double as_long_double() const {
    return static_cast<long double>(hi) + static_cast<long double>(lo);
  }
};

}  // namespace dioph
