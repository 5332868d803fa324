#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dfc/polynomial.hpp"

namespace dfc {

/// Frequency layout of a conjugate pair: T1 uses the integer frequencies
/// {1..N}, T2 the odd frequencies {1, 3, ..., 2N-1}.
enum class TrigMode { T1, T2 };

/// Cosine/sine pair sharing one real coefficient list:
///   mode T1:  C(t) = sum_j a_j cos(j t),      S(t) = sum_j a_j sin(j t)
///   mode T2:  C(t) = sum_j a_j cos((2j-1) t),  S(t) = sum_j a_j sin((2j-1) t)
/// Immutable after construction; all member functions are const and
/// thread-safe.
class ConjugateTrigPair {
 public:
  ConjugateTrigPair(TrigMode mode, std::vector<double> coefficients);

  TrigMode mode() const { return mode_; }
  int depth() const { return static_cast<int>(a_.size()); }
  std::span<const double> coefficients() const { return a_; }

  double sum() const { return sum_; }
  double abs_sum() const { return abs_sum_; }

  /// (C(t), S(t)), both accumulated with compensated summation.
  std::pair<double, double> evaluate(double t) const;
  double cosine(double t) const { return evaluate(t).first; }
  double sine(double t) const { return evaluate(t).second; }

 private:
  TrigMode mode_;
  std::vector<double> a_;
  double sum_ = 0.0;
  double abs_sum_ = 0.0;
};

inline std::pair<double, double> eval_pair(const ConjugateTrigPair& pair,
                                           double t) {
  return pair.evaluate(t);
}

/// One reported zero of a constraint function on an angular interval.
/// `tangential` marks zeros where the function touches zero without
/// changing sign.
struct RootPoint {
  double t = 0.0;
  bool tangential = false;
  double residual = 0.0;
};

/// Sorted zeros of a constraint function on the closed interval [lo, hi].
struct RealRootSet {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<RootPoint> points;
};

/// One real root of a polynomial, with the sign-change classification.
struct RealRoot {
  double x = 0.0;
  bool tangential = false;
};

/// The factor P with S(t) = sin t * P(cos t), via sin(jt) = sin t *
/// U_{j-1}(cos t); degree N-1 in the monomial basis of x = cos t. The
/// Chebyshev conversion uses the exact integer recurrences for U_k.
/// Requires mode T1.
RealPolynomial reduce_sine_t1(const ConjugateTrigPair& pair);

/// The factor R with C(t) = cos t * R(cos^2 t) for a mode-T2 pair; degree
/// N-1 in u = cos^2 t (odd Chebyshev reduction of cos((2j-1)t)).
RealPolynomial reduce_cosine_t2(const ConjugateTrigPair& pair);

/// All zeros of S on [0, pi] for a mode-T1 pair. The endpoints 0 and pi
/// are always zeros and are appended without numerical search; interior
/// zeros (including tangential ones) come from the real roots of
/// reduce_sine_t1 on (-1, 1). Throws AllZero when every coefficient is 0.
RealRootSet constraint_zeros_t1(const ConjugateTrigPair& pair);

/// All zeros of C on [0, pi/2] for a mode-T2 pair. t = pi/2 is always a
/// zero (every cos((2j-1)t) vanishes there); interior zeros come from the
/// roots of reduce_cosine_t2 in u = cos^2 t over (0, 1], mapped back by
/// t = arccos(sqrt(u)). The symmetries C(pi - t) = -C(t), C(-t) = C(t)
/// make [0, pi/2] exhaustive for enumerating |S| over the full constraint
/// set. Throws AllZero when every coefficient is 0.
RealRootSet constraint_zeros_t2(const ConjugateTrigPair& pair);

/// All real roots of p in [lo, hi], sorted, including even-multiplicity
/// (tangential) roots. Roots are companion-matrix eigenvalues polished by
/// complex Newton iteration and then filtered for realness; residuals
/// satisfy |p(root)| <= 1e-10 * max|coefficient| after polishing. Throws
/// DegenerateInput when p is identically zero.
std::vector<RealRoot> real_roots_in_interval(const RealPolynomial& p,
                                             double lo, double hi);

/// Factorization of a mode-T1 pair at joint constraint points: given
/// t_1..t_m in (0, pi) with S(t_k) = 0 and C(t_k) = gamma, returns
/// alpha_m..alpha_{n-m} (alpha_m = -2^m * gamma) such that
///   C(t) = gamma + prod_k (cos t - cos t_k) * sum alpha_k cos kt,
///   S(t) =         prod_k (cos t - cos t_k) * sum alpha_k sin kt.
/// Computed by synthetic division of F(z) = -gamma + sum a_j z^j by
/// prod_k (z^2 - 2 z cos t_k + 1). Throws NotAZero when a listed point is
/// not a joint zero (tolerance 1e-8, scaled) or 2m > n, and
/// RemainderTooLarge when the division remainder exceeds 1e-8 * sum|a_j|.
std::vector<double> factor_pair(const ConjugateTrigPair& pair,
                                std::span<const double> zeros, double gamma);

}  // namespace dfc
