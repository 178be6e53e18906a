#include "dioph/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dioph/error.hpp"

namespace dioph {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// r^m, saturating just above 2^64 - 1.
u128 saturating_pow(std::uint64_t r, unsigned m) {
  constexpr u128 kCap = static_cast<u128>(1) << 64;
  u128 acc = 1;
  for (unsigned i = 0; i < m; ++i) {
    acc *= r;
    if (acc >= kCap) return kCap;
  }
  return acc;
}

// Plain odd-only sieve, for the base primes below sqrt(limit).
std::vector<std::uint64_t> small_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  out.push_back(2);
  std::vector<bool> composite((n + 1) / 2, false);
  for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t j = p * p; j <= n; j += 2 * p) composite[j / 2] = true;
  }
  return out;
}

std::uint64_t floor_to_u64(double x) {
  if (x < 0.0) return 0;
  if (x >= 18446744073709551616.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

std::uint64_t integer_root(std::uint64_t n, unsigned m) {
  if (m == 0) throw DomainError("integer_root: m must be positive");
  if (m == 1 || n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / m));
  while (r > 0 && saturating_pow(r, m) > n) --r;
  while (saturating_pow(r + 1, m) <= n) ++r;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set for n < 3.3e24.
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<double> theta_prefix_of(std::span<const std::uint64_t> primes) {
  std::vector<double> prefix;
  prefix.reserve(primes.size());
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t p : primes) {
    const double term = std::log(static_cast<double>(p));
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    prefix.push_back(sum + comp);
  }
  return prefix;
}

PrimeTable PrimeTable::build(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2) {
    throw DomainError("build_table: limit " + std::to_string(limit) +
                      " is below 2, the table would be empty");
  }
  if (limit > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw DomainError("build_table: limit exceeds 2^63 - 1");
  }
  if (options.segment_size == 0) throw DomainError("build_table: segment_size must be positive");

  const double ln = std::log(static_cast<double>(limit));
  const double est_count = limit < 100 ? 25.0 : 1.26 * static_cast<double>(limit) / ln;
  const double est_bytes = est_count * (sizeof(std::uint64_t) + sizeof(double)) +
                           static_cast<double>(options.segment_size) +
                           std::sqrt(static_cast<double>(limit)) * 1.5;
  if (est_bytes > static_cast<double>(options.memory_budget_bytes)) {
    throw ResourceError("build_table: limit " + std::to_string(limit) + " needs about " +
                        std::to_string(static_cast<unsigned long long>(est_bytes)) +
                        " bytes, budget is " + std::to_string(options.memory_budget_bytes));
  }

  PrimeTable table;
  table.limit_ = limit;
  table.primes_.reserve(static_cast<std::size_t>(est_count));

  const std::uint64_t root = integer_root(limit, 2);
  const std::vector<std::uint64_t> base = small_primes(root);

  table.primes_.push_back(2);
  // Segment index i stands for the odd number 2i + 1; i = 0 (the number 1)
  // is skipped.
  const std::uint64_t last_index = (limit - 1) / 2;
  const std::size_t seg = options.segment_size;
  std::vector<unsigned char> composite(seg);
  std::vector<std::uint64_t> next;  // next odd multiple index per base prime
  next.reserve(base.size());
  for (std::size_t j = 1; j < base.size(); ++j) next.push_back((base[j] * base[j]) / 2);

  for (std::uint64_t lo = 1; lo <= last_index; lo += seg) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + seg - 1, last_index);
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(len), 0);
    for (std::size_t j = 1; j < base.size(); ++j) {
      const std::uint64_t p = base[j];
      std::uint64_t i = next[j - 1];
      if (i > hi) continue;
      for (; i <= hi; i += p) composite[i - lo] = 1;
      next[j - 1] = i;
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (!composite[i]) table.primes_.push_back(2 * (lo + i) + 1);
    }
  }
  table.primes_.shrink_to_fit();
  table.theta_prefix_ = theta_prefix_of(table.primes_);
  return table;
}

PrimeTable PrimeTable::from_parts(std::uint64_t limit, std::vector<std::uint64_t> primes,
                                  std::vector<double> theta_prefix) {
  if (primes.empty() || limit < 2) throw FormatError("prime table is empty");
  if (primes.size() != theta_prefix.size()) {
    throw FormatError("prime table: prime count and theta prefix length differ");
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] > limit || (i > 0 && primes[i] <= primes[i - 1])) {
      throw FormatError("prime table: primes not strictly increasing within the limit");
    }
  }
  const std::vector<double> expected = theta_prefix_of(primes);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] != theta_prefix[i]) {
      throw FormatError("prime table: checksum mismatch in theta prefix at index " +
                        std::to_string(i));
    }
  }
  PrimeTable table;
  table.limit_ = limit;
  table.primes_ = std::move(primes);
  table.theta_prefix_ = std::move(theta_prefix);
  return table;
}

void PrimeTable::check_x(double x, const char* op) const {
  if (!(x >= 0.0) || x > static_cast<double>(limit_)) {
    throw DomainError(std::string(op) + ": argument " + std::to_string(x) +
                      " outside table range [0, " + std::to_string(limit_) + "]");
  }
}

std::size_t PrimeTable::count_le(double x) const {
  const std::uint64_t n = floor_to_u64(x);
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), n) -
                                  primes_.begin());
}

double PrimeTable::theta(double x) const {
  check_x(x, "theta");
  const std::size_t c = count_le(x);
  return c == 0 ? 0.0 : theta_prefix_[c - 1];
}

double PrimeTable::psi(double x) const {
  check_x(x, "psi");
  const std::uint64_t n = floor_to_u64(x);
  double sum = 0.0;
  for (unsigned m = 1;; ++m) {
    const std::uint64_t r = integer_root(n, m);
    if (r < 2) break;
    const std::size_t c = count_le(static_cast<double>(r));
    sum += theta_prefix_[c - 1];
  }
  return sum;
}

std::span<const std::uint64_t> PrimeTable::range_view(double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi >= lo) || hi > static_cast<double>(limit_)) {
    throw DomainError("primes_in_range: bounds [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] invalid for table limit " +
                      std::to_string(limit_));
  }
  const auto first = std::lower_bound(primes_.begin(), primes_.end(), lo,
                                      [](std::uint64_t p, double v) {
                                        return static_cast<double>(p) < v;
                                      });
  const auto last = std::upper_bound(first, primes_.end(), hi, [](double v, std::uint64_t p) {
    return v < static_cast<double>(p);
  });
  return {first, last};
}

std::vector<std::uint64_t> PrimeTable::primes_in_range(double lo, double hi) const {
  const auto view = range_view(lo, hi);
  return {view.begin(), view.end()};
}

bool PrimeTable::contains(std::uint64_t n) const {
  if (n > limit_) throw DomainError("contains: " + std::to_string(n) + " exceeds table limit");
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

}  // namespace dioph
