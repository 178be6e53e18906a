#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dioph/rational.hpp"

namespace dioph::optimizer {

// x_coef * x + b_coef * b + c_coef * c <= rhs in the unknowns x = 1/a(k),
// b = b(k), c = c(k); the members hold the coefficients.
struct Inequality {
  std::string id;
  BigRational x, b, c, rhs;

  BigRational slack(const BigRational& vx, const BigRational& vb, const BigRational& vc) const {
    return rhs - (x * vx + b * vb + c * vc);
  }
};

// One numbered constraint; the range constraints carry two inequalities.
struct Constraint {
  int id = 0;
  std::string text;
  std::vector<Inequality> parts;
};

struct ConstraintSystem {
  BigRational k;
  std::vector<Constraint> constraints;  // always six
  std::vector<Inequality> rows() const;
};

ConstraintSystem build_constraints(const BigRational& k);

enum class Objective {
  max_c,          // maximise c subject to all six constraints
  free_c,  // the same without c >= 0, so the optimum may have c < 0
};

struct LPSolution {
  BigRational k;
  BigRational inv_a, b, c;
  bool feasible = false;
  std::vector<std::string> active_constraints;
  // When infeasible: a smallest set of inequality ids with no common point.
  std::vector<std::string> certificate;
};

LPSolution solve(const BigRational& k, Objective objective = Objective::max_c);

struct ClosedForm {
  BigRational inv_a, b, c;
};
// 1/a = (2k+3)/(9k), b = (7k-3)/(18k), c = (33-29k)/(72k).
ClosedForm closed_form(const BigRational& k);

struct ClosedFormCheck {
  ClosedForm value;
  std::vector<std::pair<std::string, BigRational>> slacks;  // per inequality
  std::vector<std::string> tight;                            // slack exactly 0
  bool all_hold = false;
  bool c_negative = false;
};
ClosedFormCheck verify_closed_form(const BigRational& k);

// Largest k for which the max-c problem is feasible (33/29), found exactly.
BigRational k_max();

}  // namespace dioph::optimizer
