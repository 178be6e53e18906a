#include "dioph/circle.hpp"

#include <gsl/gsl_sf_psi.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "dioph/error.hpp"
#include "dioph/search.hpp"

namespace dioph::circle {

namespace {

PowerWindow var_window(const ProblemInstance& inst, double X, double k) {
  return {inst.delta * X, X, k};
}

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("circle: eta must be positive");
}

void check_X(double X) {
  if (!(X >= 2.0) || !std::isfinite(X)) throw DomainError("circle: X must be >= 2");
}

// K_eta(alpha) e(varpi alpha).
Complex kernel_phase(const ProblemInstance& inst, double eta, double alpha) {
  const double K = fejer_K(eta, alpha);
  if (inst.varpi == 0.0) return {K, 0.0};
  return K * unit_turn(static_cast<long double>(inst.varpi) * alpha);
}

enum class Piece { whole, j1, j2, j3, j4 };

// The integrand of I, or of one major-arc piece, as a panel integrand.
struct ProductIntegrand {
  const ProblemInstance& inst;
  const Sums& sums;
  double X;
  double eta;
  Piece piece;
  PhaseSum::NodeCache c1, c2, c3;

  void prepare(double half) {
    c1 = sums.s1.make_cache(half);
    c2 = sums.s2.make_cache(half);
    c3 = sums.s3.make_cache(half);
  }

  Complex T(double k, double lambda, double alpha) const {
    const double len = std::pow(X, 1.0 / k) - std::pow(inst.delta * X, 1.0 / k);
    return power_phase_integral(inst.delta * X, X, k, lambda * alpha, 1e-10 * len);
  }

  void panel(double center, double half, std::span<Complex, 15> out) const {
    std::array<Complex, 15> a, b, c;
    const auto& rule = quad::gk15();
    if (piece != Piece::j1) {
      sums.s1.eval_kronrod(center, half, &c1, a);
      sums.s2.eval_kronrod(center, half, &c2, b);
      sums.s3.eval_kronrod(center, half, &c3, c);
    }
    for (std::size_t i = 0; i < 15; ++i) {
      const double x = center + half * rule.x[i];
      Complex v;
      switch (piece) {
        case Piece::whole:
          v = a[i] * b[i] * c[i];
          break;
        case Piece::j1:
          v = T(1, inst.lambda1, x) * T(2, inst.lambda2, x) * T(inst.k, inst.lambda3, x);
          break;
        case Piece::j2:
          v = (a[i] - T(1, inst.lambda1, x)) * T(2, inst.lambda2, x) * T(inst.k, inst.lambda3, x);
          break;
        case Piece::j3:
          v = a[i] * (b[i] - T(2, inst.lambda2, x)) * T(inst.k, inst.lambda3, x);
          break;
        case Piece::j4:
          v = a[i] * b[i] * (c[i] - T(inst.k, inst.lambda3, x));
          break;
      }
      out[i] = v * kernel_phase(inst, eta, x);
    }
  }
};

// Integral over a union of intervals; pieces left of 0 are conjugated images
// of pieces right of 0 and each distinct piece is integrated once.
quad::Result integrate_set(const ProblemInstance& inst, const Sums& sums, double X, double eta,
                           const std::vector<Interval>& set, Piece piece, const Options& opt) {
  std::vector<std::pair<Interval, bool>> parts;  // (positive piece, conjugate?)
  for (const Interval& iv : set) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw DomainError("integrate_I: intervals must be bounded");
    }
    if (!(iv.hi > iv.lo)) continue;
    if (iv.hi > 0.0) parts.push_back({{std::max(iv.lo, 0.0), iv.hi}, false});
    if (iv.lo < 0.0) parts.push_back({{-std::min(iv.hi, 0.0), -iv.lo}, true});
  }
  quad::Result total;
  if (parts.empty()) return total;
  const double tol_each = opt.tol / static_cast<double>(parts.size());
  const double width = opt.cycles_per_panel / product_bandwidth(inst, X, eta);

  std::vector<std::pair<Interval, quad::Result>> done;
  CompensatedComplexSum sum;
  for (const auto& [iv, conj] : parts) {
    auto it = std::find_if(done.begin(), done.end(), [&](const auto& d) {
      return d.first.lo == iv.lo && d.first.hi == iv.hi;
    });
    if (it == done.end()) {
      ProductIntegrand f{inst, sums, X, eta, piece, {}, {}, {}};
      done.emplace_back(iv, quad::integrate_adaptive(f, iv.lo, iv.hi, width, tol_each, opt.exec));
      it = std::prev(done.end());
      total.evaluations += it->second.evaluations;
    }
    sum.add(conj ? std::conj(it->second.value) : it->second.value);
    total.error += it->second.error;
  }
  total.value = sum.value();
  return total;
}

// Merged (frequency, weight) pairs for a sum with integer frequencies.
std::vector<std::pair<long double, double>> integer_spectrum(const PhaseSum& s) {
  std::vector<std::pair<long double, double>> out;
  for (const auto& t : s.terms()) {
    if (t.freq != std::floor(t.freq)) {
      throw DomainError("unit moment: frequencies must be integers");
    }
    out.emplace_back(t.freq, t.weight);
  }
  std::sort(out.begin(), out.end());
  std::vector<std::pair<long double, double>> merged;
  for (const auto& [f, w] : out) {
    if (!merged.empty() && merged.back().first == f) {
      merged.back().second += w;
    } else {
      merged.emplace_back(f, w);
    }
  }
  return merged;
}

bool integer_frequencies(const PhaseSum& s) {
  return std::all_of(s.terms().begin(), s.terms().end(),
                     [](const PhaseTerm& t) { return t.freq == std::floor(t.freq); });
}

double trigamma(double m) { return gsl_sf_psi_1(m); }

// sum_{n >= n0} (n-1)^{-2} int_{n-1}^n |s|^p for p = 2 or 4.
Tail slice_tail(const PhaseSum& s, int power, double L, double tol, std::size_t max_intervals) {
  if (!(L >= 2.0)) throw DomainError("trivial_tails: |lambda| R must be at least 2");
  const double n0 = std::ceil(L);
  Tail t;
  if (integer_frequencies(s)) {
    const double U = power == 2 ? unit_mean_square(s) : unit_fourth_moment(s);
    t.value = U * trigamma(n0 - 1.0);
    return t;
  }
  if (power != 2) throw DomainError("trivial_tails: fourth moment needs integer frequencies");

  // int_{n-1}^n |s|^2 = D + sum_{i<j} c_ij cos(2 pi d_ij (n - 1/2)),
  // c_ij = 2 w_i w_j sinc(d_ij). The diagonal is summed in closed form.
  const auto terms = s.terms();
  double D = 0.0;
  for (const auto& x : terms) D += x.weight * x.weight;
  struct Pair {
    double c;
    Complex z;     // e(d (n - 1/2)) at the current n
    Complex step;  // e(d)
  };
  std::vector<Pair> pairs;
  double off_mass = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const long double d = terms[i].freq - terms[j].freq;
      const double pd = M_PI * static_cast<double>(d);
      const double sinc = pd == 0.0 ? 1.0 : sin_turn(0.5L * d) / pd;
      const double c = 2.0 * terms[i].weight * terms[j].weight * sinc;
      if (c == 0.0) continue;
      pairs.push_back({c, unit_turn(d * (static_cast<long double>(n0) - 0.5L)), unit_turn(d)});
      off_mass += std::fabs(c);
    }
  }
  CompensatedSum off;
  double n = n0;
  t.remaining = off_mass * trigamma(n - 1.0);
  while (t.remaining >= tol) {
    if (t.intervals >= max_intervals) {
      throw ConvergenceError("trivial_tails: " + std::to_string(max_intervals) +
                                 " unit intervals did not bring the remainder below tol",
                             D * trigamma(n0 - 1.0) + off.value(), 0.0, t.remaining);
    }
    double u = 0.0;
    for (auto& p : pairs) {
      u += p.c * p.z.real();
      p.z *= p.step;
    }
    off.add(u / ((n - 1.0) * (n - 1.0)));
    ++t.intervals;
    n += 1.0;
    t.remaining = off_mass * trigamma(n - 1.0);
  }
  t.value = D * trigamma(n0 - 1.0) + off.value();
  return t;
}

void check_rational(double alpha, std::int64_t a, std::uint64_t q) {
  if (q == 0) throw DomainError("bound: q must be positive");
  const auto g = std::gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), q);
  if (g != 1) throw DomainError("bound: a and q must be coprime");
  const long double diff =
      std::fabs(static_cast<long double>(alpha) - static_cast<long double>(a) / q);
  const long double qq = static_cast<long double>(q);
  if (!(diff < 1.0L / (qq * qq))) {
    throw DomainError("bound: |alpha - a/q| must be below 1/q^2");
  }
}

}  // namespace

const char* to_string(Arc a) {
  switch (a) {
    case Arc::major:
      return "major";
    case Arc::minor:
      return "minor";
    case Arc::trivial:
      return "trivial";
  }
  return "?";
}

double eta_exponent(double k, double eps) { return -(33.0 - 29.0 * k) / (72.0 * k) + eps; }

ArcParams arc_params(const ProblemInstance& inst, double X) {
  inst.validate();
  if (!(X >= 10.0) || !std::isfinite(X)) throw DomainError("arc_params: X must be >= 10");
  const double k = inst.k;
  ArcParams arcs;
  arcs.X = X;
  arcs.P = std::pow(X, 4.0 / (5.0 * k) - inst.eps);
  arcs.eta = std::pow(X, eta_exponent(k, inst.eps));
  const double L = std::log(X);
  arcs.R = std::pow(arcs.eta, -2.0) * std::pow(X, (k - 1.0) / (4.0 * k)) * L * L * L;
  const double edge = arcs.P / X;
  if (!(edge < arcs.R)) {
    throw DomainError("arc_params: degenerate decomposition, P/X = " + std::to_string(edge) +
                      " is not below R = " + std::to_string(arcs.R));
  }
  arcs.major = {-edge, edge};
  arcs.minor = {Interval{-arcs.R, -edge}, Interval{edge, arcs.R}};
  arcs.trivial_from = arcs.R;
  return arcs;
}

Arc classify(const ArcParams& arcs, double alpha) {
  const double a = std::fabs(alpha);
  if (a <= arcs.major.hi) return Arc::major;
  if (a < arcs.R) return Arc::minor;
  return Arc::trivial;
}

Sums build_sums(const ProblemInstance& inst, const PrimeTable& table, double X) {
  inst.validate();
  check_X(X);
  return {prime_power_sum(table, var_window(inst, X, 1.0), inst.lambda1),
          prime_power_sum(table, var_window(inst, X, 2.0), inst.lambda2),
          prime_power_sum(table, var_window(inst, X, inst.k), inst.lambda3)};
}

double product_bandwidth(const ProblemInstance& inst, double X, double eta) {
  double pos = 0.0, neg = 0.0;
  for (double l : {inst.lambda1, inst.lambda2, inst.lambda3}) (l > 0 ? pos : neg) += std::fabs(l);
  return std::max(pos, neg) * X + std::fabs(inst.varpi) + eta;
}

Complex integrand(const ProblemInstance& inst, const PrimeTable& table, double X, double eta,
                  double alpha) {
  check_eta(eta);
  const Sums s = build_sums(inst, table, X);
  return s.s1(alpha) * s.s2(alpha) * s.s3(alpha) * kernel_phase(inst, eta, alpha);
}

quad::Result integrate_I(const ProblemInstance& inst, const PrimeTable& table, double X,
                         double eta, const std::vector<Interval>& set, const Options& opt) {
  check_eta(eta);
  if (!(opt.tol > 0.0)) throw DomainError("integrate_I: tol must be positive");
  const Sums sums = build_sums(inst, table, X);
  return integrate_set(inst, sums, X, eta, set, Piece::whole, opt);
}

double weighted_count(const ProblemInstance& inst, const PrimeTable& table, double X,
                      double eta) {
  check_eta(eta);
  const SearchReport rep =
      find_solutions(inst, table, X, eta, std::numeric_limits<std::size_t>::max());
  CompensatedSum sum;
  for (const auto& r : rep.records) {
    const double w = std::log(static_cast<double>(r.p1)) * std::log(static_cast<double>(r.p2)) *
                     std::log(static_cast<double>(r.p3));
    sum.add(w * std::max(0.0, eta - std::fabs(r.residual)));
  }
  return sum.value();
}

double triple_mass(const ProblemInstance& inst, const PrimeTable& table, double X) {
  const Sums s = build_sums(inst, table, X);
  return s.s1.l1_norm() * s.s2.l1_norm() * s.s3.l1_norm();
}

MajorSplit major_arc_split(const ProblemInstance& inst, const PrimeTable& table, double X,
                           double eta, const Options& opt) {
  check_eta(eta);
  if (!(opt.tol > 0.0)) throw DomainError("major_arc_split: tol must be positive");
  const ArcParams arcs = arc_params(inst, X);
  const Sums sums = build_sums(inst, table, X);
  Options piece_opt = opt;
  piece_opt.tol = opt.tol / 4.0;
  const std::vector<Interval> set{arcs.major};
  MajorSplit out;
  out.tol = piece_opt.tol;
  const Piece pieces[4] = {Piece::j1, Piece::j2, Piece::j3, Piece::j4};
  for (std::size_t i = 0; i < 4; ++i) {
    out.J[i] = integrate_set(inst, sums, X, eta, set, pieces[i], piece_opt);
  }
  out.whole = integrate_set(inst, sums, X, eta, set, Piece::whole, piece_opt);
  out.main_term = eta * eta * std::pow(X, 0.5 + 1.0 / inst.k);
  out.j1_ratio = out.J[0].value.real() / out.main_term;
  return out;
}

double V(const ProblemInstance& inst, const PrimeTable& table, double X, double alpha) {
  inst.validate();
  check_X(X);
  const PhaseSum s1 = prime_power_sum(table, var_window(inst, X, 1.0), inst.lambda1);
  const PhaseSum s2 = prime_power_sum(table, var_window(inst, X, 2.0), inst.lambda2);
  return std::min(std::sqrt(std::abs(s1(alpha))), std::abs(s2(alpha)));
}

double bound_vaughan(const PrimeTable& table, double X, double alpha, std::int64_t a,
                     std::uint64_t q) {
  check_X(X);
  check_rational(alpha, a, q);
  const double S = std::abs(eval_S(table, {X, 1.0, 0.1}, alpha));
  const double qd = static_cast<double>(q);
  const double L = std::log(X);
  const double rhs = (X / std::sqrt(qd) + std::sqrt(X * qd) + std::pow(X, 0.8)) * L * L * L * L;
  return S / rhs;
}

double ghosh_bracket(double X, double q) { return 1.0 / q + std::pow(X, -0.25) + q / X; }

double bound_ghosh(const PrimeTable& table, double X, double alpha, std::int64_t a,
                   std::uint64_t q, double eps) {
  check_X(X);
  check_rational(alpha, a, q);
  if (!(eps > 0.0)) throw DomainError("bound_ghosh: eps must be positive");
  const double S = std::abs(eval_S(table, {X, 2.0, 0.1}, alpha));
  const double rhs =
      std::pow(X, 0.5 + eps) * std::pow(ghosh_bracket(X, static_cast<double>(q)), 0.25);
  return S / rhs;
}

double unit_mean_square(const PhaseSum& s) {
  double sum = 0.0;
  for (const auto& [f, w] : integer_spectrum(s)) sum += w * w;
  return sum;
}

double unit_fourth_moment(const PhaseSum& s) {
  // |s|^4 = |s^2|^2; s^2 has frequencies f_i + f_j.
  const auto spec = integer_spectrum(s);
  std::vector<std::pair<long double, double>> sq;
  sq.reserve(spec.size() * spec.size());
  for (const auto& [fi, wi] : spec) {
    for (const auto& [fj, wj] : spec) sq.emplace_back(fi + fj, wi * wj);
  }
  std::sort(sq.begin(), sq.end());
  CompensatedSum sum;
  for (std::size_t i = 0; i < sq.size();) {
    double r = 0.0;
    std::size_t j = i;
    for (; j < sq.size() && sq[j].first == sq[i].first; ++j) r += sq[j].second;
    sum.add(r * r);
    i = j;
  }
  return sum.value();
}

TrivialTails trivial_tails(const ProblemInstance& inst, const PrimeTable& table, double X,
                           double R, double tol, std::size_t max_intervals) {
  inst.validate();
  check_X(X);
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("trivial_tails: R must be positive");
  if (!(tol > 0.0)) throw DomainError("trivial_tails: tol must be positive");
  const double L = std::log(X);
  TrivialTails out;
  out.A = slice_tail(prime_power_sum(table, var_window(inst, X, 1.0)), 2,
                     std::fabs(inst.lambda1) * R, tol, max_intervals);
  out.A.comparator = X * L / (std::fabs(inst.lambda1) * R);
  out.B = slice_tail(prime_power_sum(table, var_window(inst, X, 2.0)), 4,
                     std::fabs(inst.lambda2) * R, tol, max_intervals);
  out.B.comparator = X * L * L / R;
  out.C = slice_tail(prime_power_sum(table, var_window(inst, X, inst.k)), 2,
                     std::fabs(inst.lambda3) * R, tol, max_intervals);
  out.C.comparator = std::pow(X, 1.0 / inst.k) * L * L * L / R;
  for (Tail* t : {&out.A, &out.B, &out.C}) t->ratio = t->value / t->comparator;
  return out;
}

MinorArcReport minor_arc_monitor(const ProblemInstance& inst, const PrimeTable& table,
                                 const ArcParams& arcs, std::size_t points, const Exec& exec) {
  if (points == 0) throw DomainError("minor_arc_monitor: need at least one point");
  const Sums sums = build_sums(inst, table, arcs.X);
  const double lo = arcs.P / arcs.X;
  const double step = (arcs.R - lo) / static_cast<double>(points);

  struct Part {
    double sup_V = -1.0, sup_at = 0.0;
    std::size_t x1 = 0, x2 = 0, both = 0;
    CompensatedSum l2a, l4b, l2c, h1, h2;
  };
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (points + kChunk - 1) / kChunk;
  const auto parts = parallel_map(chunks, exec, [&](std::size_t c) {
    Part p;
    const std::size_t end = std::min(points, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double a = lo + (static_cast<double>(i) + 0.5) * step;
      const double m1 = std::abs(sums.s1(a));
      const double m2 = std::abs(sums.s2(a));
      const double m3 = std::abs(sums.s3(a));
      const double K = fejer_K(arcs.eta, a);
      const double r1 = std::sqrt(m1);
      const double v = std::min(r1, m2);
      if (v > p.sup_V) {
        p.sup_V = v;
        p.sup_at = a;
      }
      const double prod = m1 * m2 * m3 * K;
      if (r1 <= m2) {
        ++p.x1;
        p.h1.add(prod);
      }
      if (r1 >= m2) {
        ++p.x2;
        p.h2.add(prod);
      }
      if (r1 == m2) ++p.both;
      p.l2a.add(m1 * m1 * K);
      p.l4b.add(m2 * m2 * m2 * m2 * K);
      p.l2c.add(m3 * m3 * K);
    }
    return p;
  });

  MinorArcReport rep;
  rep.points = points;
  rep.step = step;
  CompensatedSum l2a, l4b, l2c, h1, h2;
  for (const auto& p : parts) {
    if (p.sup_V > rep.sup_V) {
      rep.sup_V = p.sup_V;
      rep.sup_V_at = p.sup_at;
    }
    rep.in_X1 += p.x1;
    rep.in_X2 += p.x2;
    rep.in_both += p.both;
    l2a.add(p.l2a.value());
    l4b.add(p.l4b.value());
    l2c.add(p.l2c.value());
    h1.add(p.h1.value());
    h2.add(p.h2.value());
  }
  const double X = arcs.X, k = inst.k, L = std::log(X), eta = arcs.eta;
  rep.partition_ok = rep.in_X1 + rep.in_X2 - rep.in_both == points;
  rep.sup_V_ratio = rep.sup_V / std::pow(X, (29.0 * k + 3.0) / (72.0 * k));
  // Both halves of the minor arc, by conjugate symmetry.
  rep.l2_s1 = 2.0 * step * l2a.value();
  rep.l4_s2 = 2.0 * step * l4b.value();
  rep.l2_s3 = 2.0 * step * l2c.value();
  rep.l2_s1_ratio = rep.l2_s1 / (eta * X * L);
  rep.l4_s2_ratio = rep.l4_s2 / (eta * X * L * L);
  rep.l2_s3_ratio = rep.l2_s3 / (eta * std::pow(X, 1.0 / k) * L * L * L);
  rep.holder_X1 = 2.0 * step * h1.value();
  rep.holder_X2 = 2.0 * step * h2.value();
  rep.holder_comparator = eta * std::pow(X, (65.0 * k + 39.0) / (72.0 * k) + inst.eps);
  rep.holder_ratio = (rep.holder_X1 + rep.holder_X2) / rep.holder_comparator;
  return rep;
}

}  // namespace dioph::circle
