#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "dfc/coeffs.hpp"
#include "dfc/polynomial.hpp"

namespace dfc {

enum class StabilityMethod { schur_cohn, roots };

/// Outcome of a Schur-stability decision. `marginal` flags a boundary case
/// (some reflection coefficient, or the largest root modulus, within the
/// tolerance band of 1); marginal polynomials are reported unstable since
/// the stabilized multiplier intervals are open.
/// `max_modulus` is present only when the roots were computed.
struct StabilityVerdict {
  bool stable = false;
  bool marginal = false;
  std::optional<double> max_modulus;
  StabilityMethod method = StabilityMethod::schur_cohn;
};

/// q(lambda) = a_1 lambda^{N-1} + ... + a_{N-1} lambda + a_N. With unit-sum
/// weights, q(1) = 1.
RealPolynomial build_q(const CoefficientVector& coeffs);

/// Closed-loop characteristic polynomial
///   p(lambda) = lambda^{(N-1)T + 1} - mu * q(lambda)^T
/// for cycle period T and multiplier mu; monic of degree (N-1)T + 1, and
/// p(1) = 1 - mu. q^T is expanded by repeated convolution.
RealPolynomial build_char_poly(const CoefficientVector& coeffs, int period,
                               double mu);

/// Schur-Cohn test: p is Schur stable iff every reflection coefficient
/// r = c_0/c_d of the reduction chain satisfies |r| < 1. Reports
/// marginal=true when some |r| falls in [1-tau, 1+tau] with tau = 1e-10.
/// O(d^2), no eigensolver. Throws DegenerateInput on the zero polynomial.
StabilityVerdict schur_stable(const RealPolynomial& p);

/// All degree() roots of p via the balanced companion matrix with complex
/// Newton polishing; residuals satisfy
///   |p(root)| <= 1e-9 * max|c_k| * max(1, |root|)^degree.
/// Throws NoConvergence when that bound cannot be met.
std::vector<std::complex<double>> roots(const RealPolynomial& p);

/// Root-based stability verdict (method = roots, max_modulus filled in);
/// the independent cross-check for schur_stable.
StabilityVerdict stability_from_roots(const RealPolynomial& p);

}  // namespace dfc
