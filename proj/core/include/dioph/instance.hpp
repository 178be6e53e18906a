#pragma once

#include <optional>

#include "dioph/expsums.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// The inequality |l1 p1 + l2 p2^2 + l3 p3^k + varpi| <= threshold, with the
// window constant delta and the exponent slack eps.
struct ProblemInstance {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = -1.0;
  double k = 1.0;
  double varpi = 0.0;
  double eps = 0.01;
  double delta = 0.1;
  // lambda1 / lambda2 at full precision, when known.
  std::optional<HiReal> lambda_ratio;

  // Nonzero finite coefficients, k > 0, 0 < delta < 1.
  void validate() const;
  // True unless all three coefficients share a sign.
  bool mixed_signs() const;
  // Outside 1 < k < 33/29 the exponents are formal.
  bool k_outside_theorem_range() const;

  WindowSpec window(double X) const { return {X, k, delta}; }
};

}  // namespace dioph
