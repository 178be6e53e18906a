#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace dioph::cli {

struct SieveArgs {
  std::uint64_t limit = 0;
  std::string out;
};

struct ExpsumArgs {
  double X = 0.0;
  double k = 1.0;
  double delta = 0.1;
  std::string alpha_grid;  // lo:hi:n
  std::string which = "S";
  std::optional<double> tol;
};

struct MeansquareArgs {
  double X = 0.0;
  double k = 1.0;
  std::optional<double> h, delta, Y;
  bool psi = false;
  bool rh = false;
  bool discrepancy = false;
  std::string method = "auto";
  double C = 12.0 / 5.0;
};

struct ApproxArgs {
  std::string lambda_ratio;
  std::size_t terms = 20;
  std::optional<std::string> Q;
  unsigned bits = 512;
};

struct ArcsArgs {
  double X = 0.0;
  std::string piece = "all";
  std::optional<double> eta;
  double tol = 1e-6;
  std::size_t points = 10000;
};

struct SearchArgs {
  double X = 0.0;
  std::string threshold = "auto";
  std::size_t emit = 100;
  bool flag_own = false;
};

struct ExponentsArgs {
  std::string k;
};

struct VerifyArgs {
  std::vector<int> only;
};

Report run_sieve(const SieveArgs& a, const RunConfig& cfg);
Report run_expsum(const ExpsumArgs& a, const RunConfig& cfg);
Report run_meansquare(const MeansquareArgs& a, const RunConfig& cfg);
Report run_approx(const ApproxArgs& a, const RunConfig& cfg);
Report run_arcs(const ArcsArgs& a, const RunConfig& cfg);
Report run_search(const SearchArgs& a, const RunConfig& cfg);
Report run_exponents(const ExponentsArgs& a, const RunConfig& cfg);
// Sets all_passed; progress lines go to stderr.
Report run_verify_all(const VerifyArgs& a, const RunConfig& cfg, bool& all_passed);

}  // namespace dioph::cli
