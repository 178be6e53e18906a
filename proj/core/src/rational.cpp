#include "dioph/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "dioph/error.hpp"

namespace dioph {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt floor_of(const BigRational& r) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

BigRational abs_of(const BigRational& r) { return r < 0 ? BigRational(-r) : r; }

HiReal::Provenance combine(HiReal::Provenance a, HiReal::Provenance b) {
  return static_cast<HiReal::Provenance>(std::max(static_cast<int>(a), static_cast<int>(b)));
}

// Bounds on sqrt(r) for r >= 0 with denominators d 2^bits.
BigRational sqrt_bound(const BigRational& r, unsigned bits, bool upper) {
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);
  const BigInt scale = BigInt(1) << bits;
  const BigInt big = n * d * scale * scale;
  BigInt s = boost::multiprecision::sqrt(big);
  if (upper && s * s != big) ++s;
  return BigRational(s, d * scale);
}

bool is_square(const BigInt& n) {
  if (n < 0) return false;
  const BigInt s = boost::multiprecision::sqrt(n);
  return s * s == n;
}

class Parser {
 public:
  Parser(std::string_view s, unsigned bits) : s_(s), bits_(bits) {}

  HiReal run() {
    HiReal v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("expression \"" + std::string(s_) + "\" at offset " +
                      std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  HiReal expr() {
    HiReal v = term();
    for (;;) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  HiReal term() {
    HiReal v = factor();
    for (;;) {
      if (accept('*')) {
        v = v * factor();
      } else if (accept('/')) {
        v = v / factor();
      } else {
        return v;
      }
    }
  }

  HiReal factor() {
    skip();
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      HiReal v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("sqrt needs '('");
      HiReal v = expr();
      if (!accept(')')) fail("missing ')'");
      return v.sqrt(bits_);
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return HiReal::decimal(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  unsigned bits_;
  std::size_t pos_ = 0;
};

}  // namespace

HiReal HiReal::rational(const BigInt& p, const BigInt& q) {
  if (q == 0) throw DomainError("rational: zero denominator");
  const BigRational r(p, q);
  return {r, r, Provenance::exact_rational};
}

HiReal HiReal::rational(const BigRational& r) { return {r, r, Provenance::exact_rational}; }

HiReal HiReal::decimal(std::string_view literal) {
  std::size_t i = 0;
  bool negative = false;
  if (i < literal.size() && (literal[i] == '-' || literal[i] == '+')) {
    negative = literal[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  long long exponent = 0;
  bool point = false;
  bool any_digit = false;
  for (; i < literal.size(); ++i) {
    const char c = literal[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      any_digit = true;
      if (point) --exponent;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  bool has_exp = false;
  if (i < literal.size() && (literal[i] == 'e' || literal[i] == 'E')) {
    has_exp = true;
    ++i;
    try {
      std::size_t used = 0;
      exponent += std::stoll(std::string(literal.substr(i)), &used);
      i += used;
    } catch (const std::exception&) {
      throw FormatError("decimal literal \"" + std::string(literal) + "\": bad exponent");
    }
  }
  if (!any_digit || i != literal.size()) {
    throw FormatError("decimal literal \"" + std::string(literal) + "\" is malformed");
  }
  if (negative) mantissa = -mantissa;
  if (std::llabs(exponent) > 100000) {
    throw DomainError("decimal literal \"" + std::string(literal) + "\": exponent out of range");
  }
  const BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
  const BigRational unit = exponent >= 0 ? BigRational(pow10) : BigRational(1, pow10);
  const BigRational value = BigRational(mantissa) * unit;
  if (!point && !has_exp) return {value, value, Provenance::exact_rational};
  const BigRational half = unit / 2;
  return {value - half, value + half, Provenance::decimal_literal};
}

HiReal HiReal::sqrt_of(const BigInt& d, unsigned bits) {
  if (d < 0) throw DomainError("sqrt: negative argument");
  return rational(d).sqrt(bits);
}

HiReal HiReal::parse(std::string_view expr, unsigned bits) { return Parser(expr, bits).run(); }

double HiReal::to_double() const {
  return static_cast<double>((lo_ + hi_) / 2);
}

HiReal operator+(const HiReal& a, const HiReal& b) {
  return {a.lo_ + b.lo_, a.hi_ + b.hi_, combine(a.provenance_, b.provenance_)};
}

HiReal operator-(const HiReal& a, const HiReal& b) {
  return {a.lo_ - b.hi_, a.hi_ - b.lo_, combine(a.provenance_, b.provenance_)};
}

HiReal operator*(const HiReal& a, const HiReal& b) {
  const BigRational c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4),
          combine(a.provenance_, b.provenance_)};
}

HiReal operator/(const HiReal& a, const HiReal& b) {
  if (b.lo_ <= 0 && b.hi_ >= 0) throw DomainError("division by an interval containing zero");
  const HiReal inv{BigRational(1) / b.hi_, BigRational(1) / b.lo_, b.provenance_};
  return a * inv;
}

HiReal HiReal::operator-() const { return {-hi_, -lo_, provenance_}; }

HiReal HiReal::sqrt(unsigned bits) const {
  if (lo_ < 0) throw DomainError("sqrt: interval reaches below zero");
  if (exact() && is_square(numerator(lo_)) && is_square(denominator(lo_))) {
    const BigRational r(boost::multiprecision::sqrt(numerator(lo_)),
                        boost::multiprecision::sqrt(denominator(lo_)));
    return {r, r, provenance_};
  }
  return {sqrt_bound(lo_, bits, false), sqrt_bound(hi_, bits, true),
          combine(provenance_, Provenance::symbolic)};
}

std::string to_string(HiReal::Provenance p) {
  switch (p) {
    case HiReal::Provenance::exact_rational:
      return "exact-rational";
    case HiReal::Provenance::decimal_literal:
      return "decimal-literal";
    case HiReal::Provenance::symbolic:
      return "symbolic";
  }
  return "?";
}

std::string to_string(const BigRational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double Convergent::err_double() const { return static_cast<double>(err); }

namespace {

// Emits convergents of x one at a time from its enclosing interval.
class CfStepper {
 public:
  explicit CfStepper(const HiReal& x) : x_(x), lo_(x.lower()), hi_(x.upper()) {}

  bool finished() const noexcept { return done_; }
  std::size_t depth() const noexcept { return depth_; }

  Convergent next(const char* op) {
    if (unbounded_ || floor_of(hi_) != floor_of(lo_)) {
      throw PrecisionExhausted(std::string(op) + ": enclosure of x determines only " +
                                   std::to_string(depth_) + " partial quotients",
                               depth_);
    }
    const BigInt a = floor_of(lo_);
    const BigInt p = a * p_prev_ + p_prev2_;
    const BigInt q = a * q_prev_ + q_prev2_;
    p_prev2_ = p_prev_;
    p_prev_ = p;
    q_prev2_ = q_prev_;
    q_prev_ = q;
    ++depth_;
    const BigRational flo = lo_ - a;
    const BigRational fhi = hi_ - a;
    if (flo == 0) {
      // Either x is this rational, or its fractional part may be
      // arbitrarily small and the next term is unbounded.
      done_ = fhi == 0;
      unbounded_ = !done_;
    } else {
      lo_ = 1 / fhi;
      hi_ = 1 / flo;
    }
    const BigRational c(p, q);
    return {p, q, a, std::max(abs_of(x_.lower() - c), abs_of(x_.upper() - c))};
  }

 private:
  const HiReal& x_;
  BigRational lo_, hi_;
  BigInt p_prev_ = 1, p_prev2_ = 0;
  BigInt q_prev_ = 0, q_prev2_ = 1;
  std::size_t depth_ = 0;
  bool done_ = false;
  bool unbounded_ = false;
};

}  // namespace

std::vector<Convergent> continued_fraction(const HiReal& x, std::size_t n_terms) {
  std::vector<Convergent> out;
  CfStepper cf(x);
  while (out.size() < n_terms && !cf.finished()) out.push_back(cf.next("continued_fraction"));
  return out;
}

Convergent dirichlet_approx(const HiReal& x, const BigInt& Qbound) {
  if (Qbound < 1) throw DomainError("dirichlet_approx: Qbound must be at least 1");
  CfStepper cf(x);
  Convergent best = cf.next("dirichlet_approx");
  while (!cf.finished()) {
    Convergent c = cf.next("dirichlet_approx");
    if (c.q > Qbound) break;
    best = std::move(c);
  }
  return best;
}

double sequence_X(double q, double k) {
  if (!(q >= 2.0)) throw DomainError("sequence_X: q must be at least 2");
  if (!(k > 0.0)) throw DomainError("sequence_X: k must be positive");
  const double v = std::pow(q, 9.0 * k / (2.0 * k + 3.0));
  if (!std::isfinite(v)) throw DomainError("sequence_X: result overflows double");
  return v;
}

}  // namespace dioph
