#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/instance.hpp"
#include "dioph/parallel.hpp"
#include "dioph/primes.hpp"

namespace dioph {

struct SolutionRecord {
  std::uint64_t p1 = 0, p2 = 0, p3 = 0;
  double residual = 0.0;  // l1 p1 + l2 p2^2 + l3 p3^k + varpi
  // Set by flag_own_thresholds: |residual| <= (max p_j)^{-(33-29k)/(72k)+eps}.
  std::optional<bool> meets_own_threshold;

  friend bool operator==(const SolutionRecord& a, const SolutionRecord& b) {
    return a.p1 == b.p1 && a.p2 == b.p2 && a.p3 == b.p3;
  }
};

struct SearchReport {
  double X = 0.0;
  double threshold = 0.0;
  std::uint64_t count = 0;
  std::vector<SolutionRecord> records;  // ordered by (p1, p2, p3)
  bool truncated = false;               // count exceeds records.size()
  std::string diagnostic;               // e.g. an empty window
  std::chrono::duration<double> elapsed{};
};

// Residual in double-double arithmetic, rounded once at the end.
double residual(const ProblemInstance& inst, std::uint64_t p1, std::uint64_t p2,
                std::uint64_t p3);

// Solutions with p1, p2^2, p3^k in [delta X, X] and |residual| <= threshold
// (ties included). At most `cap` records are kept; count is always complete.
SearchReport find_solutions(const ProblemInstance& inst, const PrimeTable& table, double X,
                            double threshold, std::size_t cap = 1000, const Exec& exec = {});

// Triple loop over the three prime windows; refused above X = 1e4.
SearchReport brute_force_solutions(const ProblemInstance& inst, const PrimeTable& table,
                                   double X, double threshold);

inline constexpr double kBruteForceMaxX = 1e4;

// X^{-(33-29k)/(72k)+eps}: the right-hand side at the top of the window.
double theorem_threshold(const ProblemInstance& inst, double X);

// Fills meets_own_threshold using max(p1, p2, p3) in place of X.
void flag_own_thresholds(const ProblemInstance& inst, SearchReport& report);

}  // namespace dioph
