#include "dioph/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dioph/error.hpp"
#include "dioph/numeric.hpp"

namespace dioph {

namespace {

// l1 p1 + l2 p2^2 + varpi.
DoubleDouble partial_sum(const ProblemInstance& inst, std::uint64_t p1, std::uint64_t p2) {
  const DoubleDouble a = DoubleDouble::two_prod(inst.lambda1, static_cast<double>(p1));
  const DoubleDouble b =
      DoubleDouble::from_long_double(power_of(p2, 2.0)) * inst.lambda2;
  return a + b + DoubleDouble{inst.varpi, 0.0};
}

double finish(const ProblemInstance& inst, const DoubleDouble& s, std::uint64_t p3) {
  return (s + DoubleDouble::from_long_double(power_of(p3, inst.k)) * inst.lambda3).value();
}

bool is_prime_here(const PrimeTable& table, std::uint64_t n) {
  return n <= table.limit() ? table.contains(n) : is_prime(n);
}

struct Windows {
  PowerWindow w1, w2, w3;
};

Windows windows_of(const ProblemInstance& inst, double X) {
  const double lo = inst.delta * X;
  return {{lo, X, 1.0}, {lo, X, 2.0}, {lo, X, inst.k}};
}

void check_common(const ProblemInstance& inst, const PrimeTable& table, double X,
                  double threshold) {
  inst.validate();
  if (!(X >= 2.0) || !std::isfinite(X)) throw DomainError("search: X must be >= 2");
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw DomainError("search: threshold must be finite and >= 0");
  }
  if (X > static_cast<double>(table.limit())) {
    const auto need = static_cast<std::uint64_t>(std::floor(X));
    throw TableTooSmall("search: table limit " + std::to_string(table.limit()) +
                            " below the p1 window top " + std::to_string(need),
                        need);
  }
}

std::string empty_window(const std::vector<std::uint64_t>& p1, const std::vector<std::uint64_t>& p2,
                         const std::vector<std::uint64_t>& p3) {
  if (p1.empty()) return "p1 window holds no prime";
  if (p2.empty()) return "p2 window holds no prime";
  if (p3.empty()) return "p3 window holds no prime";
  return {};
}

}  // namespace

double residual(const ProblemInstance& inst, std::uint64_t p1, std::uint64_t p2,
                std::uint64_t p3) {
  return finish(inst, partial_sum(inst, p1, p2), p3);
}

SearchReport find_solutions(const ProblemInstance& inst, const PrimeTable& table, double X,
                            double threshold, std::size_t cap, const Exec& exec) {
  const auto start = std::chrono::steady_clock::now();
  check_common(inst, table, X, threshold);
  SearchReport rep;
  rep.X = X;
  rep.threshold = threshold;
  const Windows w = windows_of(inst, X);
  const auto p1s = window_primes(table, w.w1);
  const auto p2s = window_primes(table, w.w2);
  rep.diagnostic = empty_window(p1s, p2s, window_primes(table, w.w3));
  if (!rep.diagnostic.empty()) {
    rep.elapsed = std::chrono::steady_clock::now() - start;
    return rep;
  }

  const double span = threshold / std::fabs(inst.lambda3);
  const double inv_k = 1.0 / inst.k;
  struct Shard {
    std::uint64_t count = 0;
    std::vector<SolutionRecord> records;
  };
  constexpr std::size_t kShard = 256;
  const std::size_t shards = (p1s.size() + kShard - 1) / kShard;
  const auto parts = parallel_map(shards, exec, [&](std::size_t sh) {
    Shard out;
    const std::size_t end = std::min(p1s.size(), (sh + 1) * kShard);
    for (std::size_t i = sh * kShard; i < end; ++i) {
      for (std::uint64_t p2 : p2s) {
        const DoubleDouble s = partial_sum(inst, p1s[i], p2);
        const double t = -s.value() / inst.lambda3;
        // Candidate p3^k range, widened slightly; guards below absorb the root.
        const double slack = 1e-12 * (std::fabs(t) + span + 1.0);
        const double lo = std::max(t - span - slack, w.w3.lo);
        const double hi = std::min(t + span + slack, w.w3.hi);
        if (lo > hi || hi <= 0.0) continue;
        const auto nlo = static_cast<std::uint64_t>(
            std::max(2.0, std::floor(std::pow(std::max(lo, 0.0), inv_k)) - 1.0));
        const auto nhi = static_cast<std::uint64_t>(std::floor(std::pow(hi, inv_k)) + 1.0);
        for (std::uint64_t n = nlo; n <= nhi; ++n) {
          if (!in_power_window(n, w.w3)) continue;
          const double r = finish(inst, s, n);
          if (!(std::fabs(r) <= threshold) || !is_prime_here(table, n)) continue;
          ++out.count;
          if (out.records.size() < cap) out.records.push_back({p1s[i], p2, n, r, {}});
        }
      }
    }
    return out;
  });
  for (auto& part : parts) {
    rep.count += part.count;
    for (auto& r : part.records) {
      if (rep.records.size() < cap) rep.records.push_back(r);
    }
  }
  rep.truncated = rep.count > rep.records.size();
  rep.elapsed = std::chrono::steady_clock::now() - start;
  return rep;
}

SearchReport brute_force_solutions(const ProblemInstance& inst, const PrimeTable& table, double X,
                                   double threshold) {
  const auto start = std::chrono::steady_clock::now();
  if (X > kBruteForceMaxX) {
    throw DomainError("brute_force_solutions: X = " + std::to_string(X) + " exceeds the guard " +
                      std::to_string(kBruteForceMaxX));
  }
  check_common(inst, table, X, threshold);
  SearchReport rep;
  rep.X = X;
  rep.threshold = threshold;
  const Windows w = windows_of(inst, X);
  const auto p1s = window_primes(table, w.w1);
  const auto p2s = window_primes(table, w.w2);
  const auto p3s = window_primes(table, w.w3);
  rep.diagnostic = empty_window(p1s, p2s, p3s);
  for (std::uint64_t p1 : p1s) {
    for (std::uint64_t p2 : p2s) {
      for (std::uint64_t p3 : p3s) {
        const double r = residual(inst, p1, p2, p3);
        if (std::fabs(r) <= threshold) rep.records.push_back({p1, p2, p3, r, {}});
      }
    }
  }
  rep.count = rep.records.size();
  rep.elapsed = std::chrono::steady_clock::now() - start;
  return rep;
}

double theorem_threshold(const ProblemInstance& inst, double X) {
  inst.validate();
  if (!(X >= 1.0)) throw DomainError("theorem_threshold: X must be >= 1");
  return std::pow(X, -(33.0 - 29.0 * inst.k) / (72.0 * inst.k) + inst.eps);
}

void flag_own_thresholds(const ProblemInstance& inst, SearchReport& report) {
  for (auto& r : report.records) {
    const double top = static_cast<double>(std::max({r.p1, r.p2, r.p3}));
    r.meets_own_threshold = std::fabs(r.residual) <= theorem_threshold(inst, top);
  }
}

}  // namespace dioph
