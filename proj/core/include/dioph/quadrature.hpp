#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/numeric.hpp"
#include "dioph/parallel.hpp"

namespace dioph::quad {

// 15-point Gauss-Kronrod nodes on [-1, 1] with the embedded 7-point Gauss
// weights (zero at the Kronrod-only nodes).
struct KronrodRule {
  static constexpr std::size_t kSize = 15;
  std::array<double, kSize> x;
  std::array<double, kSize> wk;
  std::array<double, kSize> wg;
};
const KronrodRule& gk15();

// n-point Gauss-Legendre on [-1, 1], n in {4, 8, 16}.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(std::size_t n);

struct Result {
  Complex value;
  double error = 0.0;
  std::size_t evaluations = 0;
};

// Gauss-Legendre composite rule over n equal panels of a real function.
template <class F>
double composite_gauss(F&& f, double a, double b, std::size_t panels, std::size_t order = 8) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  CompensatedSum sum;
  for (std::size_t i = 0; i < panels; ++i) {
    const double c = a + (static_cast<double>(i) + 0.5) * h;
    double panel = 0.0;
    for (std::size_t j = 0; j < rule.x.size(); ++j) panel += rule.w[j] * f(c + 0.5 * h * rule.x[j]);
    sum.add(0.5 * h * panel);
  }
  return sum.value();
}

// Adaptive Gauss-Kronrod over [a, b] for oscillatory integrands.
//
// The interval is first cut into equal panels no wider than `max_panel`
// (the node-density floor); any panel whose |K15 - G7| exceeds its share of
// `tol` is bisected recursively. Integrand contract:
//   void prepare(double half_width);           // before the uniform pass
//   void panel(double center, double half_width, std::span<Complex, 15> out);
// `panel` fills the integrand at center + half_width * gk15().x[i]; it must
// be callable concurrently. Throws ConvergenceError when the error budget
// cannot be met within `max_evaluations`.
template <class Integrand>
Result integrate_adaptive(Integrand& f, double a, double b, double max_panel, double tol,
                          const Exec& exec = {}, std::size_t max_evaluations = 2'000'000'000) {
  Result total;
  if (!(b > a)) return total;
  const KronrodRule& rule = gk15();
  const auto panels = static_cast<std::size_t>(
      std::max(1.0, std::ceil((b - a) / std::max(max_panel, 1e-300))));
  const double hw = 0.5 * (b - a) / static_cast<double>(panels);
  f.prepare(hw);

  constexpr std::size_t kChunk = 512;
  constexpr int kMaxDepth = 24;
  const std::size_t chunks = (panels + kChunk - 1) / kChunk;
  const double tol_density = tol / (b - a);

  struct Partial {
    CompensatedComplexSum value;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool budget_hit = false;
  };

  auto rule_on = [&](double center, double half, Partial& part, Complex& kron) {
    std::array<Complex, KronrodRule::kSize> vals;
    f.panel(center, half, vals);
    Complex k{}, g{};
    for (std::size_t i = 0; i < KronrodRule::kSize; ++i) {
      k += rule.wk[i] * vals[i];
      g += rule.wg[i] * vals[i];
    }
    part.evaluations += KronrodRule::kSize;
    kron = k * half;
    return std::abs(k - g) * half;
  };

  auto refine = [&](auto&& self, double center, double half, Complex kron, double err, int depth,
                    Partial& part) -> void {
    if (err <= tol_density * 2.0 * half || depth >= kMaxDepth ||
        part.evaluations > max_evaluations / std::max<std::size_t>(chunks, 1)) {
      if (err > tol_density * 2.0 * half) part.budget_hit = true;
      part.value.add(kron);
      part.error += err;
      return;
    }
    const double q = 0.5 * half;
    Complex kl, kr;
    const double el = rule_on(center - q, q, part, kl);
    const double er = rule_on(center + q, q, part, kr);
    self(self, center - q, q, kl, el, depth + 1, part);
    self(self, center + q, q, kr, er, depth + 1, part);
  };

  const auto partials = parallel_map(chunks, exec, [&](std::size_t c) {
    Partial part;
    const std::size_t end = std::min(panels, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double center = a + (2.0 * static_cast<double>(i) + 1.0) * hw;
      Complex kron;
      const double err = rule_on(center, hw, part, kron);
      refine(refine, center, hw, kron, err, 0, part);
    }
    return part;
  });

  CompensatedComplexSum sum;
  bool budget_hit = false;
  for (const auto& p : partials) {
    sum.add(p.value.value());
    total.error += p.error;
    total.evaluations += p.evaluations;
    budget_hit = budget_hit || p.budget_hit;
  }
  total.value = sum.value();
  if (budget_hit && total.error > tol) {
    throw ConvergenceError("adaptive quadrature: error estimate " + std::to_string(total.error) +
                               " exceeds tolerance " + std::to_string(tol),
                           total.value.real(), total.value.imag(), total.error);
  }
  return total;
}

// Adapter turning a pointwise complex function into a panel integrand.
template <class Fn>
struct PointwiseIntegrand {
  Fn fn;
  void prepare(double) {}
  void panel(double center, double half, std::span<Complex, KronrodRule::kSize> out) const {
    const KronrodRule& rule = gk15();
    for (std::size_t i = 0; i < KronrodRule::kSize; ++i) out[i] = fn(center + half * rule.x[i]);
  }
};

template <class Fn>
PointwiseIntegrand<Fn> pointwise(Fn fn) {
  return PointwiseIntegrand<Fn>{std::move(fn)};
}

}  // namespace dioph::quad
