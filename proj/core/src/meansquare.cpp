#include "dioph/meansquare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/numeric.hpp"
#include "dioph/quadrature.hpp"

namespace dioph {

namespace {

double shift(const Increment& inc, double x) {
  return inc.relative ? x * (1.0 + inc.amount) : x + inc.amount;
}

double unshift(const Increment& inc, double s) {
  return inc.relative ? s / (1.0 + inc.amount) : s - inc.amount;
}

// Integers y in [ylo, yhi] where the bracket's step function jumps.
std::vector<std::uint64_t> jump_points(const PrimeTable& table, double ylo, double yhi,
                                       Bracket bracket) {
  std::vector<std::uint64_t> out;
  const double lo = std::max(ylo, 2.0);
  if (lo > yhi) return out;
  if (bracket != Bracket::psi_minus_theta) {
    const auto view = table.range_view(lo, yhi);
    out.assign(view.begin(), view.end());
  }
  if (bracket == Bracket::theta) return out;
  const auto top = static_cast<std::uint64_t>(std::floor(yhi));
  for (std::uint64_t p : table.primes()) {
    if (p * p > top) break;
    for (std::uint64_t q = p * p; q <= top; q *= p) {
      if (static_cast<double>(q) >= lo) out.push_back(q);
      if (q > top / p) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double step_value(const PrimeTable& table, Bracket bracket, double y) {
  switch (bracket) {
    case Bracket::theta:
      return table.theta(y);
    case Bracket::psi:
      return table.psi(y);
    case Bracket::psi_minus_theta:
      return table.psi(y) - table.theta(y);
  }
  return 0.0;
}

void check_reach(const PrimeTable& table, double top, const char* op) {
  if (top > static_cast<double>(table.limit())) {
    throw TableTooSmall(std::string(op) + ": table limit " + std::to_string(table.limit()) +
                            " below required " + std::to_string(std::ceil(top)),
                        static_cast<std::uint64_t>(std::ceil(top)));
  }
}

double unconditional_decay(const MeanSquareQuery& q) {
  const double lx = std::log(q.X);
  return std::exp(-q.c1 * std::cbrt(lx / std::log(lx)));
}

MeanSquareReport finish(MeanSquareReport rep) {
  if (std::isnan(rep.comparator)) {
    rep.ratio = rep.comparator;
  } else {
    rep.ratio = rep.comparator > 0.0 ? rep.value / rep.comparator : 0.0;
  }
  return rep;
}

}  // namespace

void MeanSquareQuery::validate() const {
  if (!(X >= 2.0) || !std::isfinite(X)) throw DomainError("mean square: X must be >= 2");
  if (!(k > 0.0)) throw DomainError("mean square: k must be positive");
  const int set = int(h.has_value()) + int(rel_delta.has_value()) + int(Y.has_value());
  if (set != 1) throw DomainError("mean square: exactly one of h, delta, Y must be set");
  if (h && !(*h >= 0.0)) throw DomainError("mean square: h must be non-negative");
  if (rel_delta && !(*rel_delta >= 0.0 && *rel_delta <= 1.0)) {
    throw DomainError("mean square: delta must lie in [0, 1]");
  }
  if (Y && !(*Y > 0.0 && *Y <= 0.5)) throw DomainError("mean square: Y must lie in (0, 1/2]");
  if (!(C_density > 0.0)) throw DomainError("mean square: C must be positive");
}

std::string_view to_string(MeanSquareMethod m) {
  switch (m) {
    case MeanSquareMethod::piecewise_exact:
      return "piecewise-exact";
    case MeanSquareMethod::grid:
      return "grid";
    case MeanSquareMethod::pairwise_exact:
      return "pairwise-exact";
  }
  return "?";
}

double mean_square_range(const PrimeTable& table, double a, double b, double k, Increment inc,
                         Bracket bracket, const Exec& exec) {
  if (!(a > 0.0) || !(b >= a)) throw DomainError("mean_square_range: need 0 < a <= b");
  if (!(k > 0.0)) throw DomainError("mean_square_range: k must be positive");
  if (!(inc.amount >= 0.0)) throw DomainError("mean_square_range: increment must be >= 0");
  if (inc.amount == 0.0 || a == b) return 0.0;
  const double inv_k = 1.0 / k;
  const double ytop = std::pow(shift(inc, b), inv_k);
  check_reach(table, ytop, "mean_square_range");

  // x-breakpoints: y^k and its preimage under the increment.
  std::vector<double> cuts{a, b};
  for (std::uint64_t y : jump_points(table, std::pow(a, inv_k), ytop, bracket)) {
    const auto yk = static_cast<double>(power_of(y, k));
    if (yk > a && yk < b) cuts.push_back(yk);
    const double pre = unshift(inc, yk);
    if (pre > a && pre < b) cuts.push_back(pre);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const bool smooth = bracket != Bracket::psi_minus_theta;
  const quad::GaussRule& gl = quad::gauss_legendre(8);
  const double max_piece = a / 8.0;
  const std::size_t pieces = cuts.size() - 1;
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (pieces + kChunk - 1) / kChunk;
  const auto partial = parallel_map(chunks, exec, [&](std::size_t c) {
    CompensatedSum sum;
    const std::size_t end = std::min(pieces, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double u = cuts[i];
      const double v = cuts[i + 1];
      const double mid = 0.5 * (u + v);
      const double step = step_value(table, bracket, std::pow(shift(inc, mid), inv_k)) -
                          step_value(table, bracket, std::pow(mid, inv_k));
      if (!smooth) {
        sum.add(step * step * (v - u));
        continue;
      }
      const auto sub = static_cast<std::size_t>(std::max(1.0, std::ceil((v - u) / max_piece)));
      const double width = (v - u) / static_cast<double>(sub);
      for (std::size_t s = 0; s < sub; ++s) {
        const double c0 = u + (static_cast<double>(s) + 0.5) * width;
        double acc = 0.0;
        for (std::size_t j = 0; j < gl.x.size(); ++j) {
          const double x = c0 + 0.5 * width * gl.x[j];
          const double g = std::pow(shift(inc, x), inv_k) - std::pow(x, inv_k);
          acc += gl.w[j] * (step - g) * (step - g);
        }
        sum.add(0.5 * width * acc);
      }
    }
    return sum.value();
  });
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

MeanSquareReport selberg_J(const PrimeTable& table, const MeanSquareQuery& q, const Exec& exec) {
  q.validate();
  if (!q.h) throw DomainError("selberg_J: h must be set");
  const double h = *q.h;
  MeanSquareReport rep;
  rep.query = q;
  rep.method = MeanSquareMethod::piecewise_exact;
  rep.value = mean_square_range(table, q.X, 2.0 * q.X, q.k, {false, h},
                                q.use_psi ? Bracket::psi : Bracket::theta, exec);
  const double xk = std::pow(q.X, 1.0 / q.k);
  if (h > 0.0) {
    if (q.rh_mode) {
      const double l = std::log(2.0 * q.X / h);
      rep.comparator = h * xk * l * l;
    } else {
      rep.comparator = h * h * std::pow(q.X, 2.0 / q.k - 1.0) * unconditional_decay(q);
    }
  }
  rep.out_of_range = h < std::pow(q.X, 1.0 - 2.0 / (q.C_density * q.k)) || h > q.X;
  return finish(rep);
}

MeanSquareReport theta_psi_discrepancy(const PrimeTable& table, const MeanSquareQuery& q,
                                       const Exec& exec) {
  q.validate();
  if (!q.h && !q.rel_delta) throw DomainError("theta_psi_discrepancy: h or delta must be set");
  const Increment inc = q.h ? Increment{false, *q.h} : Increment{true, *q.rel_delta};
  MeanSquareReport rep;
  rep.query = q;
  rep.method = MeanSquareMethod::piecewise_exact;
  rep.value =
      mean_square_range(table, q.X, 2.0 * q.X, q.k, inc, Bracket::psi_minus_theta, exec);
  const double xk = std::pow(q.X, 1.0 / q.k);
  rep.comparator = inc.relative ? inc.amount * xk * q.X : inc.amount * xk;
  return finish(rep);
}

MeanSquareReport selberg_J_relative(const PrimeTable& table, const MeanSquareQuery& q,
                                    const Exec& exec) {
  q.validate();
  if (!q.rel_delta) throw DomainError("selberg_J_relative: delta must be set");
  const double delta = *q.rel_delta;
  const Bracket bracket = q.use_psi ? Bracket::psi : Bracket::theta;
  MeanSquareReport rep;
  rep.query = q;
  rep.method = MeanSquareMethod::piecewise_exact;
  rep.value = mean_square_range(table, q.X, 2.0 * q.X, q.k, {true, delta}, bracket, exec);

  // Substituting x = y^k turns the k-th root increment into the relative
  // increment Delta = (1 + delta)^{1/k} - 1 on y.
  const double xk = std::pow(q.X, 1.0 / q.k);
  const double Delta = std::pow(1.0 + delta, 1.0 / q.k) - 1.0;
  rep.substituted =
      std::pow(q.X, 1.0 - 1.0 / q.k) *
      mean_square_range(table, xk, 2.0 * xk, 1.0, {true, Delta}, bracket, exec);

  if (delta > 0.0) {
    if (q.rh_mode) {
      const double l = std::log(2.0 / delta);
      rep.comparator = delta * q.X * xk * l * l;
    } else {
      rep.comparator =
          delta * delta * std::pow(q.X, 2.0 / q.k + 1.0) * unconditional_decay(q);
    }
  }
  rep.out_of_range = delta < std::pow(q.X, -2.0 / (q.C_density * q.k));
  return finish(rep);
}

double l2_diff_comparator(const PrimeTable& table, const WindowSpec& w, double Y,
                          const Exec& exec) {
  const double lx = std::log(w.X);
  MeanSquareQuery jq;
  jq.X = w.X;
  jq.k = w.k;
  jq.h = 1.0 / (2.0 * Y);
  const double J = selberg_J(table, jq, exec).value;
  return std::pow(w.X, 2.0 / w.k - 2.0) * lx * lx / Y + Y * Y * w.X + Y * Y * J;
}

MeanSquareReport l2_diff(const PrimeTable& table, const WindowSpec& w, double Y,
                         MeanSquareMethod method, const Exec& exec) {
  w.validate();
  MeanSquareReport rep;
  rep.query.X = w.X;
  rep.query.k = w.k;
  rep.query.Y = Y;
  rep.query.validate();
  rep.method = method;
  const PhaseSum diff = prime_excess_sum(table, dyadic_window(w));
  const auto terms = diff.terms();

  if (method == MeanSquareMethod::pairwise_exact) {
    if (terms.size() > kPairwiseCap) {
      throw DomainError("l2_diff: pairwise method refused for " + std::to_string(terms.size()) +
                        " terms (cap " + std::to_string(kPairwiseCap) + ")");
    }
    // int_{-Y}^{Y} e(d alpha) = sin(2 pi Y d) / (pi d); the turn-reduced sine
    // makes integer-frequency cross terms vanish exactly when 2Y is integral.
    const long double Yl = Y;
    const auto rows = parallel_map(terms.size(), exec, [&](std::size_t i) {
      CompensatedSum row;
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        const long double d = terms[j].freq - terms[i].freq;
        const double kernel = sin_turn(Yl * d) / (M_PI * static_cast<double>(d));
        row.add(terms[j].weight * kernel);
      }
      return terms[i].weight * (Y * terms[i].weight + row.value());
    });
    CompensatedSum total;
    for (double r : rows) total.add(r);
    rep.value = 2.0 * total.value();
  } else if (method == MeanSquareMethod::grid) {
    struct Integrand {
      const PhaseSum& sum;
      PhaseSum::NodeCache cache;
      void prepare(double half) { cache = sum.make_cache(half); }
      void panel(double c, double half, std::span<Complex, 15> out) const {
        sum.eval_kronrod(c, half, &cache, out);
        for (Complex& v : out) v = std::norm(v);
      }
    } integrand{diff, {}};
    if (!terms.empty()) {
      const double spread = static_cast<double>(terms.back().freq - terms.front().freq);
      const double floor_width = 1.0 / (4.0 * std::max(spread, 1.0));
      const double tol = 1e-11 * 2.0 * Y * std::max(diff.l2_norm_squared(), 1e-300);
      const quad::Result r = quad::integrate_adaptive(integrand, 0.0, Y, floor_width, tol, exec);
      // |E|^2 is even in alpha.
      rep.value = 2.0 * r.value.real();
    }
  } else {
    throw DomainError("l2_diff: method must be pairwise-exact or grid");
  }
  try {
    rep.comparator = l2_diff_comparator(table, w, Y, exec);
  } catch (const TableTooSmall&) {
    // J_k(X, 1/(2Y)) needs primes up to 2X + 1/(2Y); report the value alone.
    rep.comparator = std::numeric_limits<double>::quiet_NaN();
  }
  return finish(rep);
}

}  // namespace dioph
