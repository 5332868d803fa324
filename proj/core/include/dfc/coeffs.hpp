#pragma once

#include <vector>

namespace dfc {

/// Control weights a_1..a_N for the delayed-feedback law
///   u(k) = (a_1 - 1) f(x(k)) + a_2 f(x(k-T)) + ... + a_N f(x(k-(N-1)T)),
/// always with sum a_j = 1. `epsilon` records the regularization used when
/// the vector was generated (0 for the raw optimal weights).
struct CoefficientVector {
  int period = 1;   // T
  int depth = 1;    // N
  std::vector<double> a;
  double epsilon = 0.0;

  double sum() const;
  double abs_sum() const;
};

/// Cosine-polynomial coefficients b_0..b_{N-1} with b_0 = 1; the polynomial
/// sum_k b_k cos(kt) is nonnegative.
struct CosineCoefficients {
  std::vector<double> b;
};

/// Optimal 1-cycle weights for prehistory depth N:
///   a_j = 2 tan(pi/(2(N+1))) (1 - j/(N+1)) sin(pi j / (N+1)),
/// then, for epsilon > 0, the mixture a_1 <- (a_1 + eps)/(1 + eps),
/// a_j <- a_j/(1 + eps) which makes the associated sine polynomial strictly
/// positive on (0, pi). Throws InvalidDepth for N < 1.
CoefficientVector fejer_coeffs_t1(int depth, double epsilon);

/// Optimal 2-cycle weights a_j = (2(N-j)+1)/N^2, computed in exact integer
/// arithmetic before the single division, with the same epsilon mixture.
/// Throws InvalidDepth for N < 1.
CoefficientVector fejer_coeffs_t2(int depth, double epsilon);

/// The extremal nonnegative cosine polynomial of degree N-1 with b_0 = 1 and
/// b_1 = 2 cos(pi/(N+1)), the largest first coefficient possible:
///   b_k = [(N-k+2) sin((k+1)pi/(N+1)) - (N-k) sin((k-1)pi/(N+1))]
///         / ((N+1) sin(pi/(N+1))).
/// Satisfies sum b_k cos(kt) = (2/(N+1)) |sum_k sin((k+1)pi/(N+1)) e^{ikt}|^2.
/// Throws InvalidDepth for N < 2.
CosineCoefficients egervary_szasz(int depth);

/// Weights gamma_j = (N-j+1)/N^2 (so gamma_1 = 1/N) of the even factor in
///   cos t * (gamma_1 + 2 sum_{j>=2} gamma_j cos 2(j-1)t)
///     = (sin Nt / (N sin t))^2 cos t,
/// the squared-kernel form behind fejer_coeffs_t2 (a_j = gamma_j +
/// gamma_{j+1}). Throws InvalidDepth for N < 1.
std::vector<double> fejer_kernel_t2_cosine(int depth);

}  // namespace dfc
