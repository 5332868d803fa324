#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace dfc {

/// Dense real-coefficient polynomial with ascending storage: coefficient(k)
/// multiplies x^k. Construction trims leading entries whose magnitude is
/// below 1e-14 times the largest coefficient, so leading_coefficient() is
/// nonzero for every nonzero polynomial. Instances are immutable values and
/// safe to share across threads.
class RealPolynomial {
 public:
  /// The zero polynomial (degree() == -1).
  RealPolynomial() = default;

  explicit RealPolynomial(std::vector<double> ascending);

  /// c * x^k.
  static RealPolynomial monomial(int k, double c = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coefficients() const { return coeffs_; }
  double coefficient(int k) const;
  double leading_coefficient() const;
  double max_abs_coefficient() const;

  double operator()(double x) const;
  std::complex<double> operator()(const std::complex<double>& x) const;

  RealPolynomial derivative() const;

  /// Euclidean division: *this == quotient * divisor + remainder with
  /// degree(remainder) < degree(divisor). Throws DegenerateInput when the
  /// divisor is zero.
  std::pair<RealPolynomial, RealPolynomial> divmod(
      const RealPolynomial& divisor) const;

  friend RealPolynomial operator+(const RealPolynomial&, const RealPolynomial&);
  friend RealPolynomial operator-(const RealPolynomial&, const RealPolynomial&);
  friend RealPolynomial operator*(const RealPolynomial&, const RealPolynomial&);
  friend RealPolynomial operator*(double, const RealPolynomial&);

 private:
  std::vector<double> coeffs_;
};

namespace detail {

/// Eigenvalues of the balanced companion matrix of p, each polished with a
/// few complex Newton steps. Throws NoConvergence if the eigensolver fails.
std::vector<std::complex<double>> companion_roots(const RealPolynomial& p);

/// Compensated (Neumaier) accumulator.
class NeumaierSum {
 public:
  void add(double value);
  double result() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace detail

}  // namespace dfc
