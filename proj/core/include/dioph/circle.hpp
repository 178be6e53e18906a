#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dioph/expsums.hpp"
#include "dioph/instance.hpp"
#include "dioph/parallel.hpp"
#include "dioph/primes.hpp"
#include "dioph/quadrature.hpp"

namespace dioph::circle {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi > lo ? hi - lo : 0.0; }
};

// Major arc [-P/X, P/X], minor arc (-R, -P/X) u (P/X, R), trivial arc the rest.
struct ArcParams {
  double X = 0.0;
  double P = 0.0;
  double eta = 0.0;
  double R = 0.0;
  Interval major;
  std::array<Interval, 2> minor;
  // The trivial arc is (-inf, -R] u [R, inf).
  double trivial_from = 0.0;
};

enum class Arc { major, minor, trivial };
const char* to_string(Arc a);

// Exponent of eta as a function of X: -(33 - 29k)/(72k) + eps.
double eta_exponent(double k, double eps);

// P = X^{4/(5k) - eps}, eta = X^{eta_exponent}, R = eta^{-2} X^{(k-1)/(4k)} (log X)^3.
// Throws DomainError when X < 10 or when P/X >= R.
ArcParams arc_params(const ProblemInstance& inst, double X);
Arc classify(const ArcParams& arcs, double alpha);

// The three sums with the variables in [delta X, X], frequencies already
// multiplied by lambda_j: s1(alpha) = S_1(lambda_1 alpha) and so on.
struct Sums {
  PhaseSum s1, s2, s3;
};
Sums build_sums(const ProblemInstance& inst, const PrimeTable& table, double X);

// Fastest frequency of the product s1 s2 s3 e(varpi alpha) K_eta(alpha).
double product_bandwidth(const ProblemInstance& inst, double X, double eta);

// S_1(l1 a) S_2(l2 a) S_k(l3 a) K_eta(a) e(varpi a).
Complex integrand(const ProblemInstance& inst, const PrimeTable& table, double X, double eta,
                  double alpha);

struct Options {
  double tol = 1e-6;              // absolute, for the whole set
  double cycles_per_panel = 1.0;  // node-density floor of the uniform pass
  Exec exec{};
};

// Integral of the integrand over a finite union of bounded intervals.
// Negative pieces are folded onto the positive axis by conjugation, so a
// symmetric set gives an exactly real result.
quad::Result integrate_I(const ProblemInstance& inst, const PrimeTable& table, double X,
                         double eta, const std::vector<Interval>& set, const Options& opt = {});

// sum log p1 log p2 log p3 max(0, eta - |residual|) over the windows.
double weighted_count(const ProblemInstance& inst, const PrimeTable& table, double X, double eta);
// (sum log p1)(sum log p2)(sum log p3): the l1 mass of the triple sum.
double triple_mass(const ProblemInstance& inst, const PrimeTable& table, double X);

struct MajorSplit {
  std::array<quad::Result, 4> J;  // J1..J4
  quad::Result whole;             // I over the major arc
  double tol = 0.0;               // per-piece tolerance
  double main_term = 0.0;         // eta^2 X^{1/2 + 1/k}
  double j1_ratio = 0.0;          // Re J1 / main_term
  Complex sum() const { return J[0].value + J[1].value + J[2].value + J[3].value; }
};
// J1 = int T1 T2 Tk K e, J2 = int (S1 - T1) T2 Tk K e,
// J3 = int S1 (S2 - T2) Tk K e, J4 = int S1 S2 (Sk - Tk) K e over the major
// arc. Each piece and the whole integral get opt.tol / 4.
MajorSplit major_arc_split(const ProblemInstance& inst, const PrimeTable& table, double X,
                           double eta, const Options& opt = {});

// min(|S_1(l1 a)|^{1/2}, |S_2(l2 a)|).
double V(const ProblemInstance& inst, const PrimeTable& table, double X, double alpha);

// |S_1(alpha)| / ((X/sqrt(q) + sqrt(Xq) + X^{4/5}) log^4 X) with S_1 on [X, 2X].
double bound_vaughan(const PrimeTable& table, double X, double alpha, std::int64_t a,
                     std::uint64_t q);
// |S_2(alpha)| / (X^{1/2+eps} (1/q + X^{-1/4} + q/X)^{1/4}) with p^2 in [X, 2X].
double bound_ghosh(const PrimeTable& table, double X, double alpha, std::int64_t a,
                   std::uint64_t q, double eps);
// The bracket of bound_ghosh, for checks on its shape.
double ghosh_bracket(double X, double q);

struct Tail {
  double value = 0.0;
  double remaining = 0.0;   // bound on the part not summed
  double comparator = 0.0;
  double ratio = 0.0;
  std::size_t intervals = 0;  // unit intervals summed, 0 when closed form
};
struct TrivialTails {
  Tail A, B, C;
};
// A = int_{|l1|R}^inf |S_1|^2 / a^2, B the same for |S_2|^4 from |l2|R and C
// for |S_k|^2 from |l3|R, each bounded by the slicing
// sum_{n >= L} (n-1)^{-2} int_{n-1}^n. Sums with integer frequencies are
// periodic and summed in closed form; the others interval by interval until
// the remaining bound falls below tol. Comparators X log X / (|l1| R),
// X (log X)^2 / R and X^{1/k} (log X)^3 / R.
TrivialTails trivial_tails(const ProblemInstance& inst, const PrimeTable& table, double X,
                           double R, double tol, std::size_t max_intervals = 1'000'000);

// int_0^1 |s(a)|^2 da for integer frequencies, by Parseval.
double unit_mean_square(const PhaseSum& s);
// int_0^1 |s(a)|^4 da for integer frequencies.
double unit_fourth_moment(const PhaseSum& s);

struct MinorArcReport {
  std::size_t points = 0;
  double step = 0.0;
  double sup_V = 0.0;
  double sup_V_at = 0.0;
  double sup_V_ratio = 0.0;  // sup V / X^{(29k+3)/(72k)}
  std::size_t in_X1 = 0;     // |S1|^{1/2} <= |S2|
  std::size_t in_X2 = 0;     // |S1|^{1/2} >= |S2|
  std::size_t in_both = 0;
  bool partition_ok = false;
  // Midpoint sums over both halves of the minor arc.
  double l2_s1 = 0.0, l4_s2 = 0.0, l2_s3 = 0.0;
  double l2_s1_ratio = 0.0;  // / (eta X log X)
  double l4_s2_ratio = 0.0;  // / (eta X (log X)^2)
  double l2_s3_ratio = 0.0;  // / (eta X^{1/k} (log X)^3)
  double holder_X1 = 0.0, holder_X2 = 0.0;  // int |S1 S2 Sk| K over each part
  double holder_comparator = 0.0;           // eta X^{(65k+39)/(72k)+eps}
  double holder_ratio = 0.0;
};
// Samples the minor arc at `points` midpoints of [P/X, R] (the negative half
// by conjugate symmetry).
MinorArcReport minor_arc_monitor(const ProblemInstance& inst, const PrimeTable& table,
                                 const ArcParams& arcs, std::size_t points, const Exec& exec = {});

}  // namespace dioph::circle
