#include "dfc/polynomial.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "dfc/errors.hpp"

using dfc::RealPolynomial;

TEST_CASE("construction trims leading noise") {
  RealPolynomial p({1.0, 2.0, 1e-20});
  CHECK(p.degree() == 1);
  CHECK(p.coefficient(1) == 2.0);

  RealPolynomial z({0.0, 0.0});
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
}

TEST_CASE("evaluation and derivative") {
  RealPolynomial p({-1.0, 0.0, 1.0});  // x^2 - 1
  CHECK(p(2.0) == doctest::Approx(3.0));
  CHECK(p(std::complex<double>(0.0, 1.0)).real() == doctest::Approx(-2.0));
  RealPolynomial d = p.derivative();
  CHECK(d.degree() == 1);
  CHECK(d(3.0) == doctest::Approx(6.0));
}

TEST_CASE("arithmetic round trip") {
  RealPolynomial a({1.0, 2.0});        // 1 + 2x
  RealPolynomial b({-3.0, 0.0, 1.0});  // x^2 - 3
  RealPolynomial prod = a * b;
  CHECK(prod.degree() == 3);
  for (double x : {-1.5, 0.0, 0.25, 2.0})
    CHECK(prod(x) == doctest::Approx(a(x) * b(x)));

  auto [q, r] = prod.divmod(b);
  CHECK(r.max_abs_coefficient() <= 1e-12);
  CHECK(q.degree() == 1);
  CHECK(q(0.7) == doctest::Approx(a(0.7)));

  CHECK_THROWS_AS(a.divmod(RealPolynomial()), dfc::DegenerateInput);
}

TEST_CASE("divmod reproduces dividend on random data") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ca(6), cb(3);
    for (double& v : ca) v = coeff(rng);
    for (double& v : cb) v = coeff(rng);
    cb.back() += 3.0;  // keep the divisor away from degenerate
    RealPolynomial a(ca), b(cb);
    auto [q, r] = a.divmod(b);
    RealPolynomial back = q * b + r;
    for (double x : {-1.0, -0.3, 0.5, 1.2})
      CHECK(back(x) == doctest::Approx(a(x)).epsilon(1e-12));
  }
}

TEST_CASE("companion roots meet the residual bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(2 + trial % 14));
    for (double& v : c) v = coeff(rng);
    RealPolynomial p(c);
    if (p.degree() < 1) continue;
    const auto roots = dfc::detail::companion_roots(p);
    CHECK(roots.size() == static_cast<std::size_t>(p.degree()));
    for (const auto& z : roots) {
      const double growth = std::pow(std::max(1.0, std::abs(z)), p.degree());
      CHECK(std::abs(p(z)) <= 1e-9 * p.max_abs_coefficient() * growth);
    }
  }
}
