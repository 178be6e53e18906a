#include "dioph/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dioph::quad {

namespace {

template <std::size_t N>
GaussRule expand_gauss() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& abs = G::abscissa();
  const auto& w = G::weights();
  GaussRule rule;
  for (std::size_t i = abs.size(); i-- > 0;) {
    if (abs[i] == 0.0) continue;
    rule.x.push_back(-abs[i]);
    rule.w.push_back(w[i]);
  }
  for (std::size_t i = 0; i < abs.size(); ++i) {
    rule.x.push_back(abs[i]);
    rule.w.push_back(w[i]);
  }
  return rule;
}

KronrodRule make_gk15() {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  const auto& xk = GK::abscissa();  // 0, then ascending positive nodes
  const auto& wk = GK::weights();
  const auto& wg = G::weights();    // Gauss nodes are xk[0], xk[2], xk[4], xk[6]
  KronrodRule rule{};
  std::size_t n = 0;
  for (std::size_t i = xk.size(); i-- > 1;) {
    rule.x[n] = -xk[i];
    rule.wk[n] = wk[i];
    rule.wg[n] = (i % 2 == 0) ? wg[i / 2] : 0.0;
    ++n;
  }
  for (std::size_t i = 0; i < xk.size(); ++i) {
    rule.x[n] = xk[i];
    rule.wk[n] = wk[i];
    rule.wg[n] = (i % 2 == 0) ? wg[i / 2] : 0.0;
    ++n;
  }
  return rule;
}

}  // namespace

const KronrodRule& gk15() {
  static const KronrodRule rule = make_gk15();
  return rule;
}

const GaussRule& gauss_legendre(std::size_t n) {
  static const GaussRule g4 = expand_gauss<4>();
  static const GaussRule g8 = expand_gauss<8>();
  static const GaussRule g16 = expand_gauss<16>();
  switch (n) {
    case 4:
      return g4;
    case 8:
      return g8;
    case 16:
      return g16;
    default:
      throw DomainError("gauss_legendre: unsupported order " + std::to_string(n));
  }
}

}  // namespace dioph::quad
