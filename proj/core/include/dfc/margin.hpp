#pragma once

#include <vector>

#include "dfc/coeffs.hpp"
#include "dfc/trigpoly.hpp"

namespace dfc {

enum class MarginMethod { closed_t1, closed_t2, curve, bisect };

const char* to_string(MarginMethod method);

/// One examined point of the boundary constraint set. For the closed T=1 /
/// T=2 methods, (c, s) are the conjugate-pair values at t; for the curve
/// method they are Re and Im of the boundary curve
///   Phi(t) = q(e^{it})^T / e^{it((N-1)T+1)}.
struct ConstraintPoint {
  double t = 0.0;
  double c = 0.0;
  double s = 0.0;
};

/// Stability margin mu_tilde: the closed-loop polynomial is Schur stable
/// for every multiplier mu in (mu_tilde, 1). `witness_value` is the attained
/// boundary infimum (equal to 1/mu_tilde), `witness_t` the angle attaining
/// it. `no_negative_crossing` is set (with mu_tilde = -infinity) when the
/// curve method finds no negative real crossing, which can happen only for
/// period >= 3 inputs.
struct MarginReport {
  double mu_tilde = 0.0;
  double witness_t = 0.0;
  double witness_value = 0.0;
  MarginMethod method = MarginMethod::closed_t1;
  std::vector<ConstraintPoint> constraint_points;
  bool no_negative_crossing = false;
};

/// One point of the boundary curve Phi(t).
struct CurveSample {
  double t = 0.0;
  double re = 0.0;
  double im = 0.0;
};

CurveSample curve_point(const CoefficientVector& coeffs, int period, double t);

/// Closed-form T=1 margin: witness_value = min{ C(t) : S(t) = 0, t in
/// [0, pi] } over the full zero set of S (endpoints and tangential zeros
/// included), mu_tilde = 1/witness_value. Throws NonNegativeInfimum when
/// the minimum comes out nonnegative, which indicates a numerical fault.
MarginReport margin_t1(const CoefficientVector& coeffs);

/// Closed-form T=2 margin: with M = max{ |S(t)| : C(t) = 0, t in
/// [0, pi/2] }, witness_value = -M^2 and mu_tilde = -1/M^2. The symmetries
/// S(pi - t) = S(t), S(2pi - t) = -S(t) make [0, pi/2] exhaustive for |S|.
/// Throws ZeroMax when M vanishes (numerical fault).
MarginReport margin_t2(const CoefficientVector& coeffs);

/// Generic boundary-curve margin for any period: samples Phi on [0, pi]
/// at max(4096, 64*N*T) points, locates every zero of Im Phi (sign
/// changes refined by bisection to |dt| <= 1e-13, tangential touches
/// refined on the analytic derivative of Im Phi and accepted below
/// 1e-9 * (sum|a_j|)^T), and takes the most negative Re Phi among the
/// located points. Agrees with the closed forms within 1e-8 for T in
/// {1, 2}.
MarginReport margin_curve(const CoefficientVector& coeffs, int period);

/// Independent oracle: the first mu < 0 at which
/// schur_stable(build_char_poly(coeffs, T, mu)) fails, i.e. the lower edge
/// of the maximal stable interval around mu = 0. Bracketed by doubling
/// downward from -1e-6, refined by 200 bisection steps (within 1e-9 of the
/// transition), and guarded by a geometric rescan above the bracket since
/// the stable set can be disconnected. Throws NeverUnstable if still
/// stable at -2^{N+T} * 4.
double margin_bisect(const CoefficientVector& coeffs, int period);

}  // namespace dfc
