#include "dioph/instance.hpp"

#include <cmath>

#include "dioph/error.hpp"

namespace dioph {

void ProblemInstance::validate() const {
  for (double l : {lambda1, lambda2, lambda3}) {
    if (!(l != 0.0) || !std::isfinite(l)) {
      throw DomainError("instance: coefficients must be finite and nonzero");
    }
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("instance: k must be positive");
  if (!std::isfinite(varpi)) throw DomainError("instance: varpi must be finite");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("instance: delta must lie in (0, 1)");
  if (!std::isfinite(eps)) throw DomainError("instance: eps must be finite");
}

bool ProblemInstance::mixed_signs() const {
  const bool all_pos = lambda1 > 0 && lambda2 > 0 && lambda3 > 0;
  const bool all_neg = lambda1 < 0 && lambda2 < 0 && lambda3 < 0;
  return !all_pos && !all_neg;
}

bool ProblemInstance::k_outside_theorem_range() const { return !(k > 1.0 && k < 33.0 / 29.0); }

}  // namespace dioph
