#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dioph/parallel.hpp"
#include "dioph/primes.hpp"

namespace dioph::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  std::string required;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct Options {
  // Multiplies every tolerance and frozen constant; 0.1 tightens tenfold.
  double tol_scale = 1.0;
  Exec exec{};
  // Criteria to run, all when empty.
  std::vector<int> only;
};

// Smallest table limit covering every criterion.
inline constexpr std::uint64_t kTableLimit = 4'000'000;

// Constants recorded on the first run of criteria 8 and 9.
inline constexpr double kFrozenL2Ratio = 1.5502;
inline constexpr double kFrozenBoundRatio = 0.3968;
inline constexpr double kBoundRatioCap = 10.0;

// Runs the criteria in order, reporting each one as it finishes. A criterion
// that throws is recorded as failed with the error text; the rest still run.
std::vector<CriterionResult> run(const PrimeTable& table, const Options& opt,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

int criterion_count();
std::string format_line(const CriterionResult& r);

}  // namespace dioph::acceptance
