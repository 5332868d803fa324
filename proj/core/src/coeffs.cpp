#include "dfc/coeffs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dfc/errors.hpp"
#include "dfc/polynomial.hpp"

namespace dfc {

namespace {

constexpr double kPi = std::numbers::pi;

void apply_epsilon_mixture(std::vector<double>& a, double epsilon) {
  if (epsilon < 0.0)
    throw std::invalid_argument("epsilon must be nonnegative");
  if (epsilon == 0.0) return;
  a[0] = (a[0] + epsilon) / (1.0 + epsilon);
  for (std::size_t j = 1; j < a.size(); ++j) a[j] /= 1.0 + epsilon;
}

}  // namespace

double CoefficientVector::sum() const {
  detail::NeumaierSum acc;
  for (double v : a) acc.add(v);
  return acc.result();
}

double CoefficientVector::abs_sum() const {
  detail::NeumaierSum acc;
  for (double v : a) acc.add(std::abs(v));
  return acc.result();
}

CoefficientVector fejer_coeffs_t1(int depth, double epsilon) {
  if (depth < 1) throw InvalidDepth("fejer_coeffs_t1: depth must be >= 1");
  const double phase = kPi / (depth + 1);
  const double scale = 2.0 * std::tan(0.5 * phase);
  std::vector<double> a(static_cast<std::size_t>(depth));
  for (int j = 1; j <= depth; ++j)
    a[static_cast<std::size_t>(j - 1)] =
        scale * (1.0 - static_cast<double>(j) / (depth + 1)) *
        std::sin(phase * j);
  apply_epsilon_mixture(a, epsilon);
  return {1, depth, std::move(a), epsilon};
}

CoefficientVector fejer_coeffs_t2(int depth, double epsilon) {
  if (depth < 1) throw InvalidDepth("fejer_coeffs_t2: depth must be >= 1");
  const double nsq = static_cast<double>(depth) * depth;
  std::vector<double> a(static_cast<std::size_t>(depth));
  for (int j = 1; j <= depth; ++j)
    a[static_cast<std::size_t>(j - 1)] =
        static_cast<double>(2 * (depth - j) + 1) / nsq;
  apply_epsilon_mixture(a, epsilon);
  return {2, depth, std::move(a), epsilon};
}

CosineCoefficients egervary_szasz(int depth) {
  if (depth < 2) throw InvalidDepth("egervary_szasz: depth must be >= 2");
  const double phase = kPi / (depth + 1);
  const double denom = (depth + 1) * std::sin(phase);
  std::vector<double> b(static_cast<std::size_t>(depth));
  b[0] = 1.0;
  for (int k = 1; k < depth; ++k)
    b[static_cast<std::size_t>(k)] =
        ((depth - k + 2) * std::sin((k + 1) * phase) -
         (depth - k) * std::sin((k - 1) * phase)) /
        denom;
  return {std::move(b)};
}

std::vector<double> fejer_kernel_t2_cosine(int depth) {
  if (depth < 1)
    throw InvalidDepth("fejer_kernel_t2_cosine: depth must be >= 1");
  const double nsq = static_cast<double>(depth) * depth;
  std::vector<double> gamma(static_cast<std::size_t>(depth));
  for (int j = 1; j <= depth; ++j)
    gamma[static_cast<std::size_t>(j - 1)] =
        static_cast<double>(depth - j + 1) / nsq;
  return gamma;
}

}  // namespace dfc
