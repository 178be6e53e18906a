#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dioph/instance.hpp"

namespace dioph::cli {

enum class Format { csv, json };
Format parse_format(const std::string& s);

enum class Command { sieve, expsum, meansquare, approx, arcs, search, exponents, verify_all };

// What one invocation needs beyond its command-specific flags.
struct RunConfig {
  Command command = Command::verify_all;
  std::optional<std::filesystem::path> instance_path;
  std::optional<std::filesystem::path> table_path;
  std::optional<std::filesystem::path> output_path;  // stdout when unset
  Format format = Format::csv;
  double tol_scale = 1.0;
  unsigned threads = 1;
};

struct ParsedInstance {
  ProblemInstance instance;
  std::vector<std::string> warnings;
};

// Flat key=value lines: lambda1, lambda2, lambda3, k (required); varpi,
// eps, delta, lambda_ratio (optional). Values are numbers or exact
// expressions such as -sqrt(2); quotes are stripped, '#' starts a comment.
// The coefficients must not all share a sign. lambda_ratio defaults to
// lambda1 / lambda2 computed exactly from the two expressions.
ParsedInstance parse_instance(std::istream& in, const std::string& source = "<config>");
ParsedInstance parse_config(const std::filesystem::path& path);

}  // namespace dioph::cli
