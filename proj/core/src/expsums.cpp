#include "dioph/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dioph/error.hpp"

namespace dioph {

namespace {

constexpr std::size_t kMid = 7;  // index of the zero node in gk15()

// floor(v^{1/k}) computed generously; callers re-check membership exactly.
std::uint64_t root_upper(double v, double k) {
  if (v < 1.0) return 1;
  const long double r = std::pow(static_cast<long double>(v), 1.0L / k);
  return static_cast<std::uint64_t>(std::floor(r)) + 1;
}

std::uint64_t root_lower(double v, double k) {
  if (v <= 1.0) return 1;
  const long double r = std::pow(static_cast<long double>(v), 1.0L / k);
  const auto f = static_cast<std::uint64_t>(std::floor(r));
  return f > 1 ? f - 1 : 1;
}

bool in_window(long double nk, const PowerWindow& win) {
  return nk >= static_cast<long double>(win.lo) && nk <= static_cast<long double>(win.hi);
}

void check_window(const PowerWindow& win) {
  if (!(win.k > 0.0) || !(win.hi >= win.lo) || !(win.lo >= 0.0) || !std::isfinite(win.hi)) {
    throw DomainError("invalid power window");
  }
}

void check_table_reach(const PrimeTable& table, const PowerWindow& win) {
  const long double r = std::pow(static_cast<long double>(win.hi), 1.0L / win.k);
  const auto need = static_cast<std::uint64_t>(std::floor(r));
  if (need > table.limit()) {
    throw TableTooSmall("prime table limit " + std::to_string(table.limit()) +
                            " too small for window; required limit " + std::to_string(need),
                        need);
  }
}

// Composite 16-point Gauss-Legendre on [lo, hi] in u for g(u) e(alpha u),
// g(u) = u^{1/k - 1} / k, over n equal panels. Node phases are split as
// e(alpha c) e(alpha h x_i / 2) so the per-node factors are shared.
Complex gauss_panels(double lo, double hi, double k, double alpha, std::size_t n) {
  const quad::GaussRule& rule = quad::gauss_legendre(16);
  const long double h = (static_cast<long double>(hi) - lo) / static_cast<long double>(n);
  const long double a = alpha;
  std::array<Complex, 16> node;
  for (std::size_t i = 0; i < 16; ++i) node[i] = unit_turn(a * 0.5L * h * rule.x[i]);
  const double expo = 1.0 / k - 1.0;
  CompensatedComplexSum sum;
  for (std::size_t j = 0; j < n; ++j) {
    const long double c = lo + (static_cast<long double>(j) + 0.5L) * h;
    Complex panel = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      const double u = static_cast<double>(c + 0.5L * h * rule.x[i]);
      panel += rule.w[i] * std::pow(u, expo) * node[i];
    }
    sum.add(unit_turn(a * c) * panel);
  }
  return sum.value() * static_cast<double>(0.5L * h) / k;
}

}  // namespace

void WindowSpec::validate() const {
  if (!(X >= 2.0) || !std::isfinite(X)) throw DomainError("window: X must be >= 2");
  if (!(k > 0.0)) throw DomainError("window: k must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("window: delta must lie in (0, 1)");
}

PowerWindow dyadic_window(const WindowSpec& w) { return {w.X, 2.0 * w.X, w.k}; }
PowerWindow lower_window(const WindowSpec& w) { return {w.delta * w.X, w.X, w.k}; }

long double power_of(std::uint64_t n, double k) {
  const auto ln = static_cast<long double>(n);
  if (k == 1.0) return ln;
  if (k == 2.0) return ln * ln;
  if (k == 3.0) return ln * ln * ln;
  return std::pow(ln, static_cast<long double>(k));
}

Complex PhaseSum::operator()(double alpha) const {
  CompensatedComplexSum sum;
  const auto a = static_cast<long double>(alpha);
  for (const PhaseTerm& t : terms_) sum.add(t.weight * unit_turn(t.freq * a));
  return sum.value();
}

PhaseSum PhaseSum::scaled(double lambda) const {
  std::vector<PhaseTerm> out = terms_;
  for (PhaseTerm& t : out) t.freq *= static_cast<long double>(lambda);
  return PhaseSum(std::move(out));
}

double PhaseSum::l1_norm() const {
  double s = 0.0;
  for (const PhaseTerm& t : terms_) s += std::fabs(t.weight);
  return s;
}

double PhaseSum::l2_norm_squared() const {
  double s = 0.0;
  for (const PhaseTerm& t : terms_) s += t.weight * t.weight;
  return s;
}

double PhaseSum::max_frequency() const {
  long double m = 0.0L;
  for (const PhaseTerm& t : terms_) m = std::max(m, std::fabs(t.freq));
  return static_cast<double>(m);
}

PhaseSum::NodeCache PhaseSum::make_cache(double half) const {
  const auto& rule = quad::gk15();
  NodeCache cache;
  cache.half = half;
  cache.factors.resize(terms_.size());
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const long double fh = terms_[j].freq * static_cast<long double>(half);
    for (std::size_t n = 0; n <= kMid; ++n) {
      cache.factors[j][n] = unit_turn(fh * static_cast<long double>(rule.x[kMid + n]));
    }
  }
  return cache;
}

void PhaseSum::eval_kronrod(double center, double half, const NodeCache* cache,
                            std::span<Complex, quad::KronrodRule::kSize> out) const {
  const auto& rule = quad::gk15();
  std::fill(out.begin(), out.end(), Complex{});
  const bool cached = cache != nullptr && cache->half == half;
  const auto c = static_cast<long double>(center);
  std::array<Complex, kMid + 1> local;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const Complex base = terms_[j].weight * unit_turn(terms_[j].freq * c);
    const std::array<Complex, kMid + 1>* factors = &local;
    if (cached) {
      factors = &cache->factors[j];
    } else {
      const long double fh = terms_[j].freq * static_cast<long double>(half);
      for (std::size_t n = 0; n <= kMid; ++n) {
        local[n] = unit_turn(fh * static_cast<long double>(rule.x[kMid + n]));
      }
    }
    out[kMid] += base;
    for (std::size_t n = 1; n <= kMid; ++n) {
      const Complex f = (*factors)[n];
      out[kMid + n] += base * f;
      out[kMid - n] += base * std::conj(f);
    }
  }
}

bool in_power_window(std::uint64_t n, const PowerWindow& win) {
  return in_window(power_of(n, win.k), win);
}

std::vector<std::uint64_t> window_primes(const PrimeTable& table, const PowerWindow& win) {
  check_window(win);
  std::vector<std::uint64_t> out;
  const std::uint64_t nlo = std::max<std::uint64_t>(2, root_lower(win.lo, win.k));
  const std::uint64_t nhi = root_upper(win.hi, win.k);
  if (nlo > nhi) return out;
  const std::uint64_t table_top = std::min<std::uint64_t>(nhi, table.limit());
  if (nlo <= table_top) {
    for (std::uint64_t p :
         table.range_view(static_cast<double>(nlo), static_cast<double>(table_top))) {
      if (in_power_window(p, win)) out.push_back(p);
    }
  }
  for (std::uint64_t n = std::max(nlo, table_top + 1); n <= nhi; ++n) {
    if (in_power_window(n, win) && is_prime(n)) out.push_back(n);
  }
  return out;
}

PhaseSum prime_power_sum(const PrimeTable& table, const PowerWindow& win, double scale) {
  check_window(win);
  check_table_reach(table, win);
  const double plo = static_cast<double>(root_lower(win.lo, win.k));
  const double phi =
      std::min(static_cast<double>(root_upper(win.hi, win.k)), static_cast<double>(table.limit()));
  std::vector<PhaseTerm> terms;
  if (plo > phi) return PhaseSum(std::move(terms));
  for (std::uint64_t p : table.range_view(plo, phi)) {
    const long double pk = power_of(p, win.k);
    if (!in_window(pk, win)) continue;
    terms.push_back({std::log(static_cast<double>(p)), pk * static_cast<long double>(scale)});
  }
  return PhaseSum(std::move(terms));
}

PhaseSum integer_power_sum(const PowerWindow& win, double scale) {
  check_window(win);
  std::vector<PhaseTerm> terms;
  const std::uint64_t nlo = root_lower(win.lo, win.k);
  const std::uint64_t nhi = root_upper(win.hi, win.k);
  for (std::uint64_t n = nlo; n <= nhi; ++n) {
    const long double nk = power_of(n, win.k);
    if (!in_window(nk, win)) continue;
    terms.push_back({1.0, nk * static_cast<long double>(scale)});
  }
  return PhaseSum(std::move(terms));
}

PhaseSum prime_excess_sum(const PrimeTable& table, const PowerWindow& win) {
  check_window(win);
  check_table_reach(table, win);
  std::vector<PhaseTerm> terms;
  const std::uint64_t nlo = root_lower(win.lo, win.k);
  const std::uint64_t nhi = root_upper(win.hi, win.k);
  for (std::uint64_t n = nlo; n <= nhi; ++n) {
    const long double nk = power_of(n, win.k);
    if (!in_window(nk, win)) continue;
    const bool prime = table.contains(n);
    const double ell = prime ? std::log(static_cast<double>(n)) : 0.0;
    terms.push_back({ell - 1.0, nk});
  }
  return PhaseSum(std::move(terms));
}

Complex eval_S(const PrimeTable& table, const WindowSpec& w, double alpha) {
  w.validate();
  return prime_power_sum(table, dyadic_window(w))(alpha);
}

Complex eval_U(const WindowSpec& w, double alpha) {
  if (!(w.X >= 1.0) || !(w.k > 0.0)) throw DomainError("eval_U: need X >= 1 and k > 0");
  return integer_power_sum(dyadic_window(w))(alpha);
}

Complex power_phase_integral(double lo, double hi, double k, double alpha, double tol) {
  if (!(tol > 0.0)) throw DomainError("power_phase_integral: tol must be positive");
  if (!(lo > 0.0) || !(hi >= lo) || !(k > 0.0)) {
    throw DomainError("power_phase_integral: need 0 < lo <= hi and k > 0");
  }
  const double tlo = std::pow(lo, 1.0 / k);
  const double thi = std::pow(hi, 1.0 / k);
  if (alpha == 0.0 || hi == lo) return {thi - tlo, 0.0};
  if (k == 1.0) {
    const Complex num = unit_turn(static_cast<long double>(alpha) * hi) -
                        unit_turn(static_cast<long double>(alpha) * lo);
    return num / Complex(0.0, 2.0 * M_PI * alpha);
  }
  constexpr std::size_t kMaxPanels = std::size_t{1} << 26;
  // At most one oscillation per panel, and panels narrow against lo so the
  // amplitude is resolved; one doubling then serves as the error estimate.
  const double cycles = std::fabs(alpha) * (hi - lo);
  const double amp_panels = 4.0 * (hi - lo) / lo;
  std::size_t n = static_cast<std::size_t>(std::ceil(std::max({4.0, cycles, amp_panels})));
  if (n > kMaxPanels) {
    throw ConvergenceError("power_phase_integral: " + std::to_string(n) +
                               " panels exceed the budget",
                           0.0, 0.0, std::numeric_limits<double>::infinity());
  }
  Complex coarse = gauss_panels(lo, hi, k, alpha, n);
  Complex best = coarse;
  double est = 0.0;
  while (2 * n <= kMaxPanels) {
    n *= 2;
    best = gauss_panels(lo, hi, k, alpha, n);
    est = std::abs(best - coarse);
    if (est <= tol) return best;
    coarse = best;
  }
  throw ConvergenceError("power_phase_integral: tolerance " + std::to_string(tol) +
                             " not reached within panel budget",
                         best.real(), best.imag(), est);
}

Complex eval_T(const WindowSpec& w, double alpha, double tol) {
  w.validate();
  return power_phase_integral(w.delta * w.X, w.X, w.k, alpha, tol);
}

double t_decay_shape(const WindowSpec& w, double alpha) {
  const double a = std::fabs(alpha);
  const double m = a > 0.0 ? std::min(w.X, 1.0 / a) : w.X;
  return std::pow(w.X, 1.0 / w.k - 1.0) * m;
}

double fejer_K(double eta, double alpha) {
  if (!(eta > 0.0)) throw DomainError("fejer_K: eta must be positive");
  const double x = M_PI * eta * alpha;
  if (std::fabs(x) < 1e-4) {
    const double x2 = x * x;
    const double sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    return eta * eta * sinc * sinc;
  }
  // sin(pi eta alpha) through the turn-reduced sine: exact zeros at eta alpha in Z.
  const double s = sin_turn(0.5L * static_cast<long double>(eta) * alpha);
  const double d = M_PI * alpha;
  return (s * s) / (d * d);
}

double fejer_hat(double eta, double t) {
  if (!(eta > 0.0)) throw DomainError("fejer_hat: eta must be positive");
  return std::max(0.0, eta - std::fabs(t));
}

double verify_fourier_pair(double eta, double t, double truncation) {
  if (!(eta > 0.0)) throw DomainError("verify_fourier_pair: eta must be positive");
  if (!(truncation >= 10.0 / eta)) {
    throw DomainError("verify_fourier_pair: truncation must be at least 10/eta");
  }
  // K is even, so the transform is 2 int_0^A K cos(2 pi t alpha).
  const double bandwidth = eta + std::fabs(t);
  const auto panels =
      static_cast<std::size_t>(std::ceil(truncation * 4.0 * std::max(bandwidth, 1.0 / truncation)));
  const double integral = 2.0 * quad::composite_gauss(
                                    [&](double a) {
                                      return fejer_K(eta, a) *
                                             cos_turn(static_cast<long double>(t) * a);
                                    },
                                    0.0, truncation, panels, 8);
  return std::fabs(integral - fejer_hat(eta, t));
}

FourthMomentReport fourth_moment_S2(const PrimeTable& table, const WindowSpec& w, double lo,
                                    double hi, const Exec& exec) {
  w.validate();
  if (w.k != 2.0) throw DomainError("fourth_moment_S2: window exponent must be 2");
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("fourth_moment_S2: need 0 <= lo <= hi");
  FourthMomentReport rep;
  const double logx = std::log(w.X);
  rep.comparator = w.X * logx * logx;
  const PhaseSum s2 = prime_power_sum(table, dyadic_window(w));
  if (hi == lo || s2.empty()) return rep;

  struct Integrand {
    const PhaseSum& sum;
    PhaseSum::NodeCache cache;
    void prepare(double half) { cache = sum.make_cache(half); }
    void panel(double c, double half, std::span<Complex, 15> out) const {
      sum.eval_kronrod(c, half, &cache, out);
      for (Complex& v : out) {
        const double m = std::norm(v);
        v = m * m;
      }
    }
  } integrand{s2, {}};
  // |S|^4 carries frequencies up to 4 max p^2; half a period per panel.
  const double floor_width = 1.0 / (8.0 * s2.max_frequency());
  const double scale = std::pow(s2.l1_norm(), 4.0) * (hi - lo);
  const quad::Result r =
      quad::integrate_adaptive(integrand, lo, hi, floor_width, 1e-11 * scale, exec);
  rep.value = r.value.real();
  rep.error = r.error;
  rep.ratio = rep.value / rep.comparator;
  return rep;
}

}  // namespace dioph
