#include "dfc/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dfc/errors.hpp"

namespace dfc {

namespace {

constexpr double kMarginalBand = 1e-10;

}  // namespace

RealPolynomial build_q(const CoefficientVector& coeffs) {
  if (coeffs.depth < 1 || coeffs.a.size() != static_cast<std::size_t>(coeffs.depth))
    throw std::invalid_argument("build_q: inconsistent coefficient vector");
  std::vector<double> ascending(coeffs.a.rbegin(), coeffs.a.rend());
  return RealPolynomial(std::move(ascending));
}

RealPolynomial build_char_poly(const CoefficientVector& coeffs, int period,
                               double mu) {
  if (period < 1) throw std::invalid_argument("build_char_poly: period >= 1");
  const RealPolynomial q = build_q(coeffs);
  RealPolynomial power{{1.0}};
  for (int k = 0; k < period; ++k) power = power * q;
  const int degree = (coeffs.depth - 1) * period + 1;
  return RealPolynomial::monomial(degree) - mu * power;
}

StabilityVerdict schur_stable(const RealPolynomial& p) {
  if (p.is_zero()) throw DegenerateInput("schur_stable: zero polynomial");

  std::vector<double> c(p.coefficients().begin(), p.coefficients().end());
  StabilityVerdict verdict;
  verdict.method = StabilityMethod::schur_cohn;

  while (c.size() > 1) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (double& v : c) v /= scale;

    const std::size_t d = c.size() - 1;
    const double r = c[0] / c[d];
    const double mag = std::abs(r);
    if (mag >= 1.0 - kMarginalBand) {
      verdict.stable = false;
      verdict.marginal = mag <= 1.0 + kMarginalBand;
      return verdict;
    }
    // Reduced polynomial (p(x) - r * reverse(p)(x)) / x, degree d-1.
    std::vector<double> next(d);
    for (std::size_t i = 0; i < d; ++i) next[i] = c[i + 1] - r * c[d - 1 - i];
    c = std::move(next);
  }
  verdict.stable = true;
  return verdict;
}

std::vector<std::complex<double>> roots(const RealPolynomial& p) {
  if (p.degree() < 1) throw DegenerateInput("roots: need degree >= 1");
  auto rts = detail::companion_roots(p);
  const double scale = p.max_abs_coefficient();
  for (const auto& z : rts) {
    const double growth = std::pow(std::max(1.0, std::abs(z)), p.degree());
    if (std::abs(p(z)) > 1e-9 * scale * growth)
      throw NoConvergence("roots: residual bound not met");
  }
  std::sort(rts.begin(), rts.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return rts;
}

StabilityVerdict stability_from_roots(const RealPolynomial& p) {
  StabilityVerdict verdict;
  verdict.method = StabilityMethod::roots;
  double max_mod = 0.0;
  for (const auto& z : roots(p)) max_mod = std::max(max_mod, std::abs(z));
  verdict.max_modulus = max_mod;
  verdict.marginal = std::abs(max_mod - 1.0) <= 1e-8;
  verdict.stable = max_mod < 1.0 - 1e-8;
  return verdict;
}

}  // namespace dfc
