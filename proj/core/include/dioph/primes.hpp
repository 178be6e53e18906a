#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dioph {

struct SieveOptions {
  // Odd numbers covered per sieve segment.
  std::size_t segment_size = std::size_t{1} << 20;
  // Upper bound on the memory the finished table plus the sieve working set
  // may occupy.
  std::size_t memory_budget_bytes = std::size_t{4} << 30;
};

// Immutable list of all primes up to `limit`, with prefix sums of log p.
//
// theta_prefix()[i] is sum_{j <= i} log primes()[j], accumulated with
// Neumaier compensation, so it is within a few ulps of the exact value
// regardless of table size.
class PrimeTable {
 public:
  PrimeTable() = default;

  static PrimeTable build(std::uint64_t limit, const SieveOptions& options = {});

  // Reassembles a table from stored parts; theta_prefix is recomputed and
  // must match bit for bit (used by the binary loader as an integrity check).
  static PrimeTable from_parts(std::uint64_t limit, std::vector<std::uint64_t> primes,
                               std::vector<double> theta_prefix);

  std::uint64_t limit() const noexcept { return limit_; }
  std::size_t size() const noexcept { return primes_.size(); }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::span<const double> theta_prefix() const noexcept { return theta_prefix_; }

  // Number of primes p <= x.
  std::size_t count_le(double x) const;

  // theta(x) = sum_{p <= x} log p.
  double theta(double x) const;
  // psi(x) = sum_{m >= 1} theta(x^{1/m}).
  double psi(double x) const;

  // Primes p with lo <= p <= hi, ascending.
  std::vector<std::uint64_t> primes_in_range(double lo, double hi) const;
  // Same as primes_in_range but as a view into the table.
  std::span<const std::uint64_t> range_view(double lo, double hi) const;

  // Membership for n <= limit().
  bool contains(std::uint64_t n) const;

 private:
  void check_x(double x, const char* op) const;

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<double> theta_prefix_;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Largest r with r^m <= n.
std::uint64_t integer_root(std::uint64_t n, unsigned m);

// Running sums of log p in table order, compensated.
std::vector<double> theta_prefix_of(std::span<const std::uint64_t> primes);

}  // namespace dioph
