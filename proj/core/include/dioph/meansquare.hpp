#pragma once

#include <optional>
#include <string_view>

#include "dioph/expsums.hpp"
#include "dioph/parallel.hpp"
#include "dioph/primes.hpp"

namespace dioph {

// One mean-square query. Exactly one of h, rel_delta, Y is set.
struct MeanSquareQuery {
  double X = 0.0;
  double k = 1.0;
  std::optional<double> h;          // additive increment
  std::optional<double> rel_delta;  // relative increment x -> x(1 + delta)
  std::optional<double> Y;          // half-width of the L2 window, 0 < Y <= 1/2
  bool use_psi = false;
  double C_density = 12.0 / 5.0;
  double c1 = 1.0;  // constant in the unconditional comparator
  bool rh_mode = false;

  void validate() const;
};

enum class MeanSquareMethod { piecewise_exact, grid, pairwise_exact };
std::string_view to_string(MeanSquareMethod m);

struct MeanSquareReport {
  MeanSquareQuery query;
  double value = 0.0;
  double comparator = 0.0;  // bound evaluated with unit implied constant
  double ratio = 0.0;
  MeanSquareMethod method = MeanSquareMethod::piecewise_exact;
  bool out_of_range = false;  // parameter outside the bound's stated range
  // selberg_J_relative only: X^{1 - 1/k} J(X^{1/k}, Delta), computed separately.
  std::optional<double> substituted;
};

// Which bracket is squared inside the integral.
enum class Bracket {
  theta,            // theta(s^{1/k}) - theta(x^{1/k}) - (s^{1/k} - x^{1/k})
  psi,              // same with psi
  psi_minus_theta,  // (psi - theta)(s^{1/k}) - (psi - theta)(x^{1/k})
};

// The increment s = x + amount (additive) or s = x (1 + amount) (relative).
struct Increment {
  bool relative = false;
  double amount = 0.0;
};

// int_a^b (bracket)^2 dx, integrated piece by piece between the jump points
// of the step part. Exposed with an explicit range for additivity checks.
double mean_square_range(const PrimeTable& table, double a, double b, double k, Increment inc,
                         Bracket bracket, const Exec& exec = {});

// J_k(X, h) over [X, 2X] (q.h), with psi when q.use_psi.
MeanSquareReport selberg_J(const PrimeTable& table, const MeanSquareQuery& q,
                           const Exec& exec = {});
// The psi/theta discrepancy integral, additive (q.h) or relative (q.rel_delta).
MeanSquareReport theta_psi_discrepancy(const PrimeTable& table, const MeanSquareQuery& q,
                                       const Exec& exec = {});
// The relative-increment integral (psi when q.use_psi) together with its
// substituted form in report.substituted.
MeanSquareReport selberg_J_relative(const PrimeTable& table, const MeanSquareQuery& q,
                                    const Exec& exec = {});

// Windows with more integers than this are refused by the pairwise method.
inline constexpr std::size_t kPairwiseCap = 20000;

// int_{-Y}^{Y} |S_k - U_k|^2 over the window [X, 2X]. The comparator is NaN
// when the table cannot reach 2X + 1/(2Y).
MeanSquareReport l2_diff(const PrimeTable& table, const WindowSpec& w, double Y,
                         MeanSquareMethod method, const Exec& exec = {});

// Right-hand side of the L2 bound with unit constants.
double l2_diff_comparator(const PrimeTable& table, const WindowSpec& w, double Y,
                          const Exec& exec = {});

}  // namespace dioph
