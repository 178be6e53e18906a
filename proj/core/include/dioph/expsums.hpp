#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dioph/numeric.hpp"
#include "dioph/primes.hpp"
#include "dioph/quadrature.hpp"

namespace dioph {

// Scale X, exponent k and lower-edge constant delta of a summation window.
struct WindowSpec {
  double X = 0.0;
  double k = 1.0;
  double delta = 0.1;

  void validate() const;
};

// The set of n with lo <= n^k <= hi.
struct PowerWindow {
  double lo = 0.0;
  double hi = 0.0;
  double k = 1.0;
};

// [X, 2X]: the summation range of S_k and U_k.
PowerWindow dyadic_window(const WindowSpec& w);
// [delta X, X]: the range of the variables in the counting problem.
PowerWindow lower_window(const WindowSpec& w);

// n^k with integer exponents done exactly.
long double power_of(std::uint64_t n, double k);

// lo <= n^k <= hi, with n^k from power_of.
bool in_power_window(std::uint64_t n, const PowerWindow& win);
// Primes p with p^k in the window, ascending. Primality comes from the table
// where it reaches and from is_prime beyond it.
std::vector<std::uint64_t> window_primes(const PrimeTable& table, const PowerWindow& win);

struct PhaseTerm {
  double weight = 0.0;
  long double freq = 0.0L;
};

// A finite trigonometric sum  alpha -> sum_j weight_j e(freq_j alpha),
// evaluated in the fixed term order.
class PhaseSum {
 public:
  PhaseSum() = default;
  explicit PhaseSum(std::vector<PhaseTerm> terms) : terms_(std::move(terms)) {}

  std::span<const PhaseTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  // Compensated pointwise evaluation.
  Complex operator()(double alpha) const;

  // All frequencies multiplied by lambda: alpha -> S(lambda alpha).
  PhaseSum scaled(double lambda) const;

  double l1_norm() const;
  double l2_norm_squared() const;
  double max_frequency() const;

  // Node factors e(freq * half * x_i) for the non-negative Kronrod nodes,
  // reused across panels of one width.
  struct NodeCache {
    double half = 0.0;
    std::vector<std::array<Complex, 8>> factors;
  };
  NodeCache make_cache(double half) const;

  // Values at center + half * gk15().x[i]. Uses `cache` when its width
  // matches `half`, otherwise computes factors directly.
  void eval_kronrod(double center, double half, const NodeCache* cache,
                    std::span<Complex, quad::KronrodRule::kSize> out) const;

 private:
  std::vector<PhaseTerm> terms_;
};

// sum log p e(scale p^k alpha) over primes with p^k in the window.
PhaseSum prime_power_sum(const PrimeTable& table, const PowerWindow& win, double scale = 1.0);
// sum e(scale n^k alpha) over integers n >= 1 with n^k in the window.
PhaseSum integer_power_sum(const PowerWindow& win, double scale = 1.0);
// sum (l(n) - 1) e(n^k alpha), l(n) = log n for prime n and 0 otherwise.
PhaseSum prime_excess_sum(const PrimeTable& table, const PowerWindow& win);

// S_k(alpha) = sum_{X <= p^k <= 2X} log p e(p^k alpha).
Complex eval_S(const PrimeTable& table, const WindowSpec& w, double alpha);
// U_k(alpha) = sum_{X <= n^k <= 2X} e(n^k alpha).
Complex eval_U(const WindowSpec& w, double alpha);
// T_k(alpha) = int_{(delta X)^{1/k}}^{X^{1/k}} e(t^k alpha) dt, to absolute
// error tol.
Complex eval_T(const WindowSpec& w, double alpha, double tol);

// int_{lo^{1/k}}^{hi^{1/k}} e(t^k alpha) dt. After u = t^k the phase is
// linear; composite 16-point Gauss-Legendre in u with at most one
// oscillation per panel, doubling the panel count until the change is below
// tol.
Complex power_phase_integral(double lo, double hi, double k, double alpha, double tol);

// X^{1/k - 1} min(X, 1/|alpha|): the decay shape of T_k.
double t_decay_shape(const WindowSpec& w, double alpha);

// Fejer kernel (sin(pi eta alpha) / (pi alpha))^2, equal to eta^2 at 0.
double fejer_K(double eta, double alpha);
// Its Fourier transform, the tent max(0, eta - |t|).
double fejer_hat(double eta, double t);
// |int_{-A}^{A} K_eta(alpha) e(t alpha) d alpha - fejer_hat(eta, t)|.
double verify_fourier_pair(double eta, double t, double truncation);

struct FourthMomentReport {
  double value = 0.0;
  double comparator = 0.0;  // X (log X)^2
  double ratio = 0.0;
  double error = 0.0;
};
// int_lo^hi |S_2(alpha)|^4 d alpha.
FourthMomentReport fourth_moment_S2(const PrimeTable& table, const WindowSpec& w, double lo,
                                    double hi, const Exec& exec = {});

}  // namespace dioph
