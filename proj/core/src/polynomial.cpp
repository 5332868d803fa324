#include "dfc/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dfc/errors.hpp"

namespace dfc {

namespace {

constexpr double kTrimRelative = 1e-14;

void trim_leading(std::vector<double>& c) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) {
    c.clear();
    return;
  }
  const double threshold = kTrimRelative * scale;
  while (!c.empty() && std::abs(c.back()) <= threshold) c.pop_back();
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> ascending)
    : coeffs_(std::move(ascending)) {
  trim_leading(coeffs_);
}

RealPolynomial RealPolynomial::monomial(int k, double c) {
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  v.back() = c;
  return RealPolynomial(std::move(v));
}

double RealPolynomial::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double RealPolynomial::leading_coefficient() const {
  return coeffs_.empty() ? 0.0 : coeffs_.back();
}

double RealPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (double v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

double RealPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

std::complex<double> RealPolynomial::operator()(
    const std::complex<double>& x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return RealPolynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return RealPolynomial(std::move(d));
}

std::pair<RealPolynomial, RealPolynomial> RealPolynomial::divmod(
    const RealPolynomial& divisor) const {
  if (divisor.is_zero())
    throw DegenerateInput("divmod: division by the zero polynomial");
  if (degree() < divisor.degree())
    return {RealPolynomial(), *this};

  std::vector<double> rem(coeffs_);
  const int dd = divisor.degree();
  const double lead = divisor.leading_coefficient();
  std::vector<double> quot(coeffs_.size() - static_cast<std::size_t>(dd), 0.0);
  for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
    const double factor = rem[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - dd)] = factor;
    if (factor == 0.0) continue;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(k - dd + j)] -=
          factor * divisor.coeffs_[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {RealPolynomial(std::move(quot)), RealPolynomial(std::move(rem))};
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return RealPolynomial();
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(double s, const RealPolynomial& p) {
  std::vector<double> c(p.coeffs_);
  for (double& v : c) v *= s;
  return RealPolynomial(std::move(c));
}

namespace detail {

void NeumaierSum::add(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value))
    compensation_ += (sum_ - t) + value;
  else
    compensation_ += (value - t) + sum_;
  sum_ = t;
}

namespace {

// Osborne balancing in radix-2 scale factors; leaves eigenvalues intact.
void balance(Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(a(i, j));
        col += std::abs(a(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      double f = 1.0;
      const double s = row + col;
      while (col < row / 2.0) {
        col *= 2.0;
        row /= 2.0;
        f *= 2.0;
      }
      while (col >= row * 2.0) {
        col /= 2.0;
        row *= 2.0;
        f /= 2.0;
      }
      if (row + col < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::complex<double> newton_polish(const RealPolynomial& p,
                                   const RealPolynomial& dp,
                                   std::complex<double> z) {
  std::complex<double> best = z;
  double best_abs = std::abs(p(z));
  for (int it = 0; it < 24; ++it) {
    const std::complex<double> pv = p(z);
    const std::complex<double> dv = dp(z);
    if (std::abs(dv) == 0.0) break;
    const std::complex<double> step = pv / dv;
    z -= step;
    const double cur = std::abs(p(z));
    if (cur < best_abs) {
      best_abs = cur;
      best = z;
    }
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return best;
}

}  // namespace

std::vector<std::complex<double>> companion_roots(const RealPolynomial& p) {
  if (p.degree() < 1)
    throw DegenerateInput("companion_roots: need degree >= 1");
  const int d = p.degree();
  const double lead = p.leading_coefficient();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) a(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) a(i, d - 1) = -p.coefficient(i) / lead;
  balance(a);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("companion_roots: QR iteration did not converge");

  const RealPolynomial dp = p.derivative();
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    roots.push_back(newton_polish(p, dp, solver.eigenvalues()[i]));
  return roots;
}

}  // namespace detail

}  // namespace dfc
