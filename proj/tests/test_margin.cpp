#include "dfc/margin.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dfc/charpoly.hpp"
#include "dfc/coeffs.hpp"
#include "test_support.hpp"

using dfc::CoefficientVector;
using dfc::MarginMethod;
using dfc::MarginReport;
using dfc_test::random_unit_sum;

namespace {

constexpr double kPi = std::numbers::pi;

CoefficientVector vec(int period, std::vector<double> a) {
  CoefficientVector v;
  v.period = period;
  v.depth = static_cast<int>(a.size());
  v.a = std::move(a);
  return v;
}

}  // namespace

TEST_CASE("margin_t1 closed examples") {
  const MarginReport plain = dfc::margin_t1(vec(1, {1.0}));
  CHECK(plain.mu_tilde == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(plain.witness_t == doctest::Approx(kPi));
  CHECK(plain.method == MarginMethod::closed_t1);

  const MarginReport two = dfc::margin_t1(vec(1, {2.0 / 3.0, 1.0 / 3.0}));
  CHECK(two.mu_tilde == doctest::Approx(-3.0).epsilon(1e-13));
  CHECK(two.witness_value == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  CHECK(two.witness_t == doctest::Approx(kPi));
  CHECK(two.mu_tilde * two.witness_value == doctest::Approx(1.0));

  // Regularized depth-2 design: the binding value is the alternating sum
  // (-1/3 - eps)/(1 + eps) = -103/303, so mu_tilde = -303/103; confirmed
  // below by the bisection oracle.
  const MarginReport designed = dfc::margin_t1(dfc::fejer_coeffs_t1(2, 0.01));
  CHECK(designed.witness_value == doctest::Approx(-103.0 / 303.0).epsilon(1e-13));
  CHECK(designed.mu_tilde == doctest::Approx(-303.0 / 103.0).epsilon(1e-13));
  CHECK(designed.witness_t == doctest::Approx(kPi));
  CHECK(dfc::margin_bisect(dfc::fejer_coeffs_t1(2, 0.01), 1) ==
        doctest::Approx(-303.0 / 103.0).epsilon(1e-9));
}

TEST_CASE("margin_t2 closed examples") {
  const MarginReport plain = dfc::margin_t2(vec(2, {1.0}));
  CHECK(plain.mu_tilde == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(plain.witness_t == doctest::Approx(kPi / 2.0));

  const MarginReport two = dfc::margin_t2(vec(2, {0.75, 0.25}));
  CHECK(two.mu_tilde == doctest::Approx(-4.0).epsilon(1e-13));
  CHECK(two.witness_value == doctest::Approx(-0.25).epsilon(1e-13));

  // Regularized depth-2 design: M = (1/2 + eps)/(1 + eps) = 51/101 and
  // mu_tilde = -(101/51)^2 = -10201/2601; confirmed by the bisection oracle.
  const MarginReport designed = dfc::margin_t2(dfc::fejer_coeffs_t2(2, 0.01));
  CHECK(std::sqrt(-designed.witness_value) ==
        doctest::Approx(51.0 / 101.0).epsilon(1e-13));
  CHECK(designed.mu_tilde == doctest::Approx(-10201.0 / 2601.0).epsilon(1e-13));
  CHECK(dfc::margin_bisect(dfc::fejer_coeffs_t2(2, 0.01), 2) ==
        doctest::Approx(-10201.0 / 2601.0).epsilon(1e-9));
}

TEST_CASE("unregularized designs bind at tangential touches") {
  // Depth 3, T=1: the sine factor touches zero at 3pi/4 where the cosine
  // value (sqrt(2)-1)/2 below the endpoint value makes the margin
  // -2(1+sqrt(2)) rather than the eps->0 limit -cot^2(pi/8).
  const double sqrt2 = std::sqrt(2.0);
  const MarginReport t1 = dfc::margin_t1(dfc::fejer_coeffs_t1(3, 0.0));
  CHECK(t1.witness_value == doctest::Approx(-(sqrt2 - 1.0) / 2.0).epsilon(1e-12));
  CHECK(t1.mu_tilde == doctest::Approx(-2.0 * (1.0 + sqrt2)).epsilon(1e-12));
  CHECK(t1.witness_t == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-10));

  // Depth 3, T=2: the cosine factor touches zero at pi/3 where |S| =
  // 2 sqrt(3)/9 > 1/3, so mu_tilde = -27/4.
  const MarginReport t2 = dfc::margin_t2(dfc::fejer_coeffs_t2(3, 0.0));
  CHECK(t2.witness_t == doctest::Approx(kPi / 3.0).epsilon(1e-10));
  CHECK(t2.mu_tilde == doctest::Approx(-27.0 / 4.0).epsilon(1e-12));

  // The generic curve method must find exactly the same touches.
  const MarginReport c1 = dfc::margin_curve(dfc::fejer_coeffs_t1(3, 0.0), 1);
  CHECK(std::abs(c1.mu_tilde - t1.mu_tilde) <= 1e-8);
  const MarginReport c2 = dfc::margin_curve(dfc::fejer_coeffs_t2(3, 0.0), 2);
  CHECK(std::abs(c2.mu_tilde - t2.mu_tilde) <= 1e-8);
}

TEST_CASE("unregularized designs across depths: methods agree on the touches") {
  // Rounding splits the exact even-multiplicity constraint zeros of these
  // designs off the real axis; both the algebraic and the curve path must
  // still land on the touch locations.
  for (int depth = 2; depth <= 8; ++depth) {
    const auto t1 = dfc::fejer_coeffs_t1(depth, 0.0);
    CHECK(std::abs(dfc::margin_t1(t1).mu_tilde -
                   dfc::margin_curve(t1, 1).mu_tilde) <= 1e-11);
    const auto t2 = dfc::fejer_coeffs_t2(depth, 0.0);
    CHECK(std::abs(dfc::margin_t2(t2).mu_tilde -
                   dfc::margin_curve(t2, 2).mu_tilde) <= 1e-11);
  }

  // Hand-derived touch values: for depth 5, T=1, the binding touch sits at
  // pi/2 with C = a_4 - a_2 = (3 - 2 sqrt(3))/3, so mu_tilde = -(3 + 2
  // sqrt(3)); for depth 4, T=2, the touch at pi/4 has |S| = sqrt(2)/4 > 1/4,
  // so mu_tilde = -8 exactly.
  CHECK(dfc::margin_t1(dfc::fejer_coeffs_t1(5, 0.0)).mu_tilde ==
        doctest::Approx(-(3.0 + 2.0 * std::sqrt(3.0))).epsilon(1e-12));
  const auto deep2 = dfc::margin_t2(dfc::fejer_coeffs_t2(4, 0.0));
  CHECK(deep2.mu_tilde == doctest::Approx(-8.0).epsilon(1e-12));
  CHECK(deep2.witness_t == doctest::Approx(kPi / 4.0).epsilon(1e-10));
}

TEST_CASE("disconnected stable sets: every method reports the first transition") {
  // For these weights the closed loop is stable on (-5.8621, 1), unstable
  // on (-7.998, -5.8621), and stable again on (-8.7358, -7.998); the
  // margin is the first transition, and the bisection oracle must not be
  // fooled by the lower stable island.
  const auto coeffs = vec(2, {0.53112850372540255, 0.33083137857314032,
                              0.13804011770145727});
  const auto closed = dfc::margin_t2(coeffs);
  CHECK(closed.mu_tilde == doctest::Approx(-5.86209595283122).epsilon(1e-10));
  CHECK(std::abs(dfc::margin_curve(coeffs, 2).mu_tilde - closed.mu_tilde) <=
        1e-8);
  CHECK(std::abs(dfc::margin_bisect(coeffs, 2) - closed.mu_tilde) <= 1e-6);

  // Root-modulus ground truth for the three regimes.
  CHECK(dfc::stability_from_roots(dfc::build_char_poly(coeffs, 2, -5.5)).stable);
  CHECK_FALSE(
      dfc::stability_from_roots(dfc::build_char_poly(coeffs, 2, -6.5)).stable);
  CHECK(dfc::stability_from_roots(dfc::build_char_poly(coeffs, 2, -8.2)).stable);
  CHECK_FALSE(
      dfc::stability_from_roots(dfc::build_char_poly(coeffs, 2, -9.0)).stable);
}

TEST_CASE("curve and bisection margins agree for periods beyond two") {
  std::mt19937_64 rng(61);
  for (int period : {3, 4}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto coeffs = random_unit_sum(rng, period, 1 + trial % 5);
      const auto report = dfc::margin_curve(coeffs, period);
      REQUIRE_FALSE(report.no_negative_crossing);
      CHECK(std::abs(report.mu_tilde - dfc::margin_bisect(coeffs, period)) <=
            1e-6);
    }
  }
}

TEST_CASE("margin_curve examples") {
  const MarginReport plain = dfc::margin_curve(vec(1, {1.0}), 1);
  CHECK(plain.mu_tilde == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_FALSE(plain.no_negative_crossing);

  const MarginReport two = dfc::margin_curve(vec(2, {0.75, 0.25}), 2);
  CHECK(two.mu_tilde == doctest::Approx(-4.0).epsilon(1e-10));

  // Period 3 sanity: with a single weight the curve is e^{-it}.
  const MarginReport three = dfc::margin_curve(vec(3, {1.0}), 3);
  CHECK(three.mu_tilde == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_FALSE(three.no_negative_crossing);
}

TEST_CASE("curve samples stay inside the coefficient bound") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int period = 1 + static_cast<int>(rng() % 3);
    const auto coeffs = random_unit_sum(rng, period, 1 + (trial % 6));
    const double bound =
        std::pow(coeffs.abs_sum(), static_cast<double>(period)) + 1e-12;
    for (int i = 0; i <= 200; ++i) {
      const auto sample = dfc::curve_point(coeffs, period, kPi * i / 200.0);
      CHECK(std::hypot(sample.re, sample.im) <= bound);
    }
  }
}

TEST_CASE("margin_bisect examples") {
  CHECK(dfc::margin_bisect(vec(1, {1.0}), 1) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  // At the exactly-optimal weights the transition is a double boundary
  // root, so a stability-decision bisection resolves it only to the
  // square root of machine precision.
  CHECK(dfc::margin_bisect(vec(1, {2.0 / 3.0, 1.0 / 3.0}), 1) ==
        doctest::Approx(-3.0).epsilon(5e-8));
  CHECK(dfc::margin_bisect(vec(2, {0.75, 0.25}), 2) ==
        doctest::Approx(-4.0).epsilon(5e-8));
}

TEST_CASE("oracle agreement on random unit-sum lists") {
  std::mt19937_64 rng(43);
  for (int depth = 1; depth <= 8; ++depth) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto c1 = random_unit_sum(rng, 1, depth);
      const MarginReport closed = dfc::margin_t1(c1);
      CHECK(std::abs(dfc::margin_bisect(c1, 1) - closed.mu_tilde) <= 1e-6);
      const MarginReport curve = dfc::margin_curve(c1, 1);
      CHECK(std::abs(curve.mu_tilde - closed.mu_tilde) <= 1e-8);

      const auto c2 = random_unit_sum(rng, 2, depth);
      const MarginReport closed2 = dfc::margin_t2(c2);
      CHECK(std::abs(dfc::margin_bisect(c2, 2) - closed2.mu_tilde) <= 1e-6);
      const MarginReport curve2 = dfc::margin_curve(c2, 2);
      CHECK(std::abs(curve2.mu_tilde - closed2.mu_tilde) <= 1e-8);
    }
  }
}

TEST_CASE("margins never beat the optimal bounds") {
  std::mt19937_64 rng(47);
  for (int depth = 1; depth <= 8; ++depth) {
    const double bound1 = dfc_test::t1_bound(depth);
    const double bound2 = -static_cast<double>(depth) * depth;
    for (int trial = 0; trial < 100; ++trial) {
      CHECK(dfc::margin_t1(random_unit_sum(rng, 1, depth)).mu_tilde >=
            bound1 - 1e-8);
      CHECK(dfc::margin_t2(random_unit_sum(rng, 2, depth)).mu_tilde >=
            bound2 - 1e-8);
    }
  }
}

TEST_CASE("constrained cosine minimum stays below -2^-N") {
  std::mt19937_64 rng(53);
  for (int depth = 1; depth <= 10; ++depth) {
    const double cap = -std::ldexp(1.0, -depth) + 1e-9;
    for (int trial = 0; trial < 50; ++trial)
      CHECK(dfc::margin_t1(random_unit_sum(rng, 1, depth)).witness_value <= cap);
  }
}

TEST_CASE("designed interval is stable inside and unstable below") {
  for (int depth = 1; depth <= 10; ++depth) {
    const auto coeffs = dfc::fejer_coeffs_t1(depth, 1e-3);
    const double mu_tilde = dfc::margin_t1(coeffs).mu_tilde;
    const double lo = mu_tilde + 1e-4;
    const double hi = 1.0 - 1e-4;
    for (int i = 0; i < 100; ++i) {
      const double mu = lo + (hi - lo) * i / 99.0;
      CHECK(dfc::schur_stable(dfc::build_char_poly(coeffs, 1, mu)).stable);
    }
    CHECK_FALSE(
        dfc::schur_stable(dfc::build_char_poly(coeffs, 1, mu_tilde - 1e-4))
            .stable);
  }
}

TEST_CASE("margin input validation") {
  CHECK_THROWS_AS(dfc::margin_t1(vec(1, {0.4, 0.4})), std::invalid_argument);
  CHECK_THROWS_AS(dfc::margin_curve(vec(1, {1.0}), 0), std::invalid_argument);
}
