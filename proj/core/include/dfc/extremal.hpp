#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace dfc {

/// Result of an exhaustive search over the affine slice sum a_j = 1.
struct SearchResult {
  double best_value = 0.0;  // achieved supremum of the margin objective
  std::vector<double> best_coeffs;
  double grid_resolution = 0.0;
  std::uint64_t evaluations = 0;
};

/// Exhaustive grid over {a : sum a_j = 1, a_j in [-2, 2]} with the given
/// step, maximizing the T=1 margin witness min{C : S = 0}. Supported for
/// depth 2 and 3 only; ties resolve to the lexicographically smallest
/// coefficient list. resolution must lie in (0, 1e-2].
SearchResult grid_search_t1(int depth, double resolution);

/// Same search maximizing the T=2 objective -max{|S| : C = 0}^2.
SearchResult grid_search_t2(int depth, double resolution);

/// Covering check for F(z) = sum_j a_j z^j with complex weights: confirms
/// that the image of the closed unit disc contains the disc of radius
/// (1/2^n) sum|a_j| centered at the origin, by verifying a nonzero winding
/// number of F(e^{it}) about each of 64 test points on that circle.
/// Throws DegenerateInput when every a_j is zero.
bool lemma2_disc_check(std::span<const std::complex<double>> coeffs);

/// Bounds satisfied by every nonnegative cosine polynomial
/// g(t) = 1 + sum_{k=1}^n lambda_k cos kt:
///   |lambda_1| <= 2 cos(pi/(n+2))   and   max g <= n + 1.
/// Verifies both on a 10000-point grid with slack 1e-9. Throws
/// NotNonnegative when the grid minimum of g falls below -1e-10 (the
/// nonnegativity precondition is the caller's claim).
bool fejer_bound_check(std::span<const double> lambda);

}  // namespace dfc
