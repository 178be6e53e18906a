#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

// Exit codes shared by the CLI and the verification runner.
enum class ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kNonConvergence = 3,
  kResource = 4,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::kFailure)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Bad arguments: out-of-range inputs, malformed configs, violated
// preconditions.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(what, ExitCode::kValidation) {}
};

// A prime table does not reach far enough for the requested window.
class TableTooSmall : public DomainError {
 public:
  TableTooSmall(const std::string& what, unsigned long long required_limit)
      : DomainError(what), required_limit_(required_limit) {}
  unsigned long long required_limit() const noexcept { return required_limit_; }

 private:
  unsigned long long required_limit_;
};

// Malformed or corrupted file on disk.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(what, ExitCode::kValidation) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(what, ExitCode::kResource) {}
};

// Quadrature or iteration budget exhausted. Carries the best value seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_re, double best_im,
                   double est_error)
      : Error(what, ExitCode::kNonConvergence),
        best_re_(best_re),
        best_im_(best_im),
        est_error_(est_error) {}
  double best_re() const noexcept { return best_re_; }
  double best_im() const noexcept { return best_im_; }
  double estimated_error() const noexcept { return est_error_; }

 private:
  double best_re_;
  double best_im_;
  double est_error_;
};

// Precision budget of a high-precision carrier exhausted.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, std::size_t max_depth)
      : Error(what, ExitCode::kNonConvergence), max_depth_(max_depth) {}
  std::size_t max_trustworthy_depth() const noexcept { return max_depth_; }

 private:
  std::size_t max_depth_;
};

}  // namespace dioph
