#include "dfc/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dfc/errors.hpp"
#include "dfc/margin.hpp"

namespace dfc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoxLo = -2.0;
constexpr double kBoxHi = 2.0;

SearchResult grid_search(int depth, double resolution, int period,
                         const std::function<double(const CoefficientVector&)>&
                             objective) {
  if (depth != 2 && depth != 3)
    throw std::invalid_argument("grid_search: depth must be 2 or 3");
  if (!(resolution > 0.0 && resolution <= 1e-2))
    throw std::invalid_argument("grid_search: resolution in (0, 1e-2]");

  const auto grid_count =
      static_cast<std::int64_t>(std::llround((kBoxHi - kBoxLo) / resolution));

  SearchResult result;
  result.grid_resolution = resolution;
  result.best_value = -std::numeric_limits<double>::infinity();

  CoefficientVector candidate;
  candidate.period = period;
  candidate.depth = depth;

  const auto consider = [&](const std::vector<double>& a) {
    candidate.a = a;
    const double value = objective(candidate);
    ++result.evaluations;
    if (value > result.best_value ||
        (value == result.best_value &&
         std::lexicographical_compare(a.begin(), a.end(),
                                      result.best_coeffs.begin(),
                                      result.best_coeffs.end()))) {
      result.best_value = value;
      result.best_coeffs = a;
    }
  };

  std::vector<double> a(static_cast<std::size_t>(depth));
  for (std::int64_t i = 0; i <= grid_count; ++i) {
    a[0] = kBoxLo + static_cast<double>(i) * resolution;
    if (depth == 2) {
      a[1] = 1.0 - a[0];
      if (a[1] < kBoxLo || a[1] > kBoxHi) continue;
      consider(a);
    } else {
      for (std::int64_t j = 0; j <= grid_count; ++j) {
        a[1] = kBoxLo + static_cast<double>(j) * resolution;
        a[2] = 1.0 - a[0] - a[1];
        if (a[2] < kBoxLo || a[2] > kBoxHi) continue;
        consider(a);
      }
    }
  }
  return result;
}

}  // namespace

SearchResult grid_search_t1(int depth, double resolution) {
  return grid_search(depth, resolution, 1,
                     [](const CoefficientVector& coeffs) {
                       return margin_t1(coeffs).witness_value;
                     });
}

SearchResult grid_search_t2(int depth, double resolution) {
  return grid_search(depth, resolution, 2,
                     [](const CoefficientVector& coeffs) {
                       return margin_t2(coeffs).witness_value;
                     });
}

namespace {

std::complex<double> eval_f(std::span<const std::complex<double>> coeffs,
                            const std::complex<double>& z) {
  // F(z) = a_1 z + ... + a_n z^n, no constant term.
  std::complex<double> acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = (acc + *it) * z;
  return acc;
}

// Winding number of the closed curve k -> points[k] about w, by summing
// turn angles. Requires every step to subtend less than pi/2 as seen from
// w; returns false via `ok` when the sampling is too coarse.
int winding_number(const std::vector<std::complex<double>>& points,
                   const std::complex<double>& w, bool& ok) {
  double total = 0.0;
  ok = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::complex<double> u = points[k] - w;
    const std::complex<double> v = points[(k + 1) % points.size()] - w;
    const double cross = u.real() * v.imag() - u.imag() * v.real();
    const double dot = u.real() * v.real() + u.imag() * v.imag();
    const double turn = std::atan2(cross, dot);
    if (std::abs(turn) > kPi / 2.0) {
      ok = false;
      return 0;
    }
    total += turn;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace

bool lemma2_disc_check(std::span<const std::complex<double>> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  double abs_sum = 0.0;
  for (const auto& c : coeffs) abs_sum += std::abs(c);
  if (n == 0 || abs_sum == 0.0)
    throw DegenerateInput("lemma2_disc_check: all coefficients are zero");

  const double radius = abs_sum / std::ldexp(1.0, n);

  int samples = std::max(4096, 512 * n);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<std::complex<double>> curve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
      curve[static_cast<std::size_t>(k)] =
          eval_f(coeffs, std::polar(1.0, 2.0 * kPi * k / samples));

    bool resample = false;
    bool covered = true;
    for (int m = 0; m < 64 && !resample; ++m) {
      const std::complex<double> w = std::polar(radius, 2.0 * kPi * m / 64.0);
      double min_dist = std::numeric_limits<double>::infinity();
      for (const auto& z : curve) min_dist = std::min(min_dist, std::abs(z - w));
      if (min_dist <= 1e-13 * abs_sum) continue;  // boundary contact: covered
      bool ok = true;
      const int winding = winding_number(curve, w, ok);
      if (!ok) {
        resample = true;
        break;
      }
      if (winding == 0) covered = false;
    }
    if (!resample) return covered;
    samples *= 4;
  }
  throw NoConvergence("lemma2_disc_check: sampling refinement exhausted");
}

bool fejer_bound_check(std::span<const double> lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n < 1)
    throw std::invalid_argument("fejer_bound_check: need at least one term");

  constexpr int kGrid = 10000;
  double min_value = std::numeric_limits<double>::infinity();
  double max_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double t = kPi * static_cast<double>(i) / kGrid;
    double g = 1.0;
    for (int k = 1; k <= n; ++k)
      g += lambda[static_cast<std::size_t>(k - 1)] * std::cos(k * t);
    min_value = std::min(min_value, g);
    max_value = std::max(max_value, g);
  }
  if (min_value < -1e-10)
    throw NotNonnegative("fejer_bound_check: polynomial is negative on grid");

  const double first_bound = 2.0 * std::cos(kPi / (n + 2));
  return std::abs(lambda[0]) <= first_bound + 1e-9 &&
         max_value <= static_cast<double>(n) + 1.0 + 1e-9;
}

}  // namespace dfc
