#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dfc/coeffs.hpp"
#include "dfc/polynomial.hpp"

namespace dfc {

/// A one-dimensional differentiable map with a seeding domain for orbit
/// searches. Built-in kinds: the logistic family r x (1 - x) on [0, 1] and
/// the quadratic family x^2 + c on [-2, 2]; arbitrary polynomial maps take
/// an explicit domain.
class MapSpec {
 public:
  enum class Kind { logistic, quadratic, custom };

  static MapSpec logistic(double r);
  static MapSpec quadratic(double c);
  static MapSpec polynomial(RealPolynomial f, double lo, double hi);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }

  double value(double x) const;
  double derivative(double x) const;

 private:
  MapSpec(Kind kind, double param, RealPolynomial f, RealPolynomial df,
          double lo, double hi);

  Kind kind_;
  double param_ = 0.0;
  RealPolynomial f_, df_;
  double lo_ = 0.0, hi_ = 0.0;
};

/// A located T-periodic orbit with its multiplier mu = prod f'(x_j).
struct CycleDescriptor {
  int period = 1;
  std::vector<double> points;  // orbit order, starting at the smallest point
  double multiplier = 0.0;
  double residual = 0.0;  // max_j |f(x_j) - x_{(j+1) mod T}|
};

/// Every T-cycle found by Newton iteration on f^T(x) - x from 512 uniform
/// seeds: orbits are deduplicated, solutions whose minimal period properly
/// divides T are discarded (points must be pairwise distinct by 1e-6), and
/// descriptors are sorted by their smallest point. Throws NoCycleFound when
/// nothing survives. Requires 1 <= T <= 8.
std::vector<CycleDescriptor> find_cycle(const MapSpec& map, int period);

struct TraceStep {
  double x = 0.0;
  double u = 0.0;
  double dist = 0.0;  // min_j |x - x_j*| against the reference cycle, else NaN
};

struct SimulationTrace {
  std::vector<TraceStep> steps;  // indices are time steps k = 0, 1, ...
  bool diverged = false;
};

/// Controlled iteration x(k+1) = f(x(k)) + u(k) with
///   u(k) = (a_1 - 1) f(x(k)) + a_2 f(x(k-T)) + ... + a_N f(x(k-(N-1)T)),
/// driven by a delay ring buffer of f-values. `history` supplies the
/// (N-1)T + 1 states x(-(L-1))..x(0) in time order and must have exactly
/// that length (DimensionMismatch otherwise). The trace records steps
/// k = 0..steps; iteration stops early with diverged=true once |x| exceeds
/// 1e6. With a reference cycle the distance column is filled in.
SimulationTrace simulate(const MapSpec& map, const CoefficientVector& coeffs,
                         int period, std::span<const double> history,
                         std::int64_t steps,
                         const CycleDescriptor* reference = nullptr);

/// Constant-offset initial history: the lifted cycle point with `delta`
/// added to every slot; length (depth-1)*T + 1.
std::vector<double> perturbed_history(const CycleDescriptor& cycle, int depth,
                                      double delta);

/// Characteristic polynomial of the closed-loop Jacobian at the cycle: the
/// product of T one-step Jacobians of the augmented shift map (companion
/// structure, last row carrying a_i f'(x) at the delayed slots), reduced by
/// the Faddeev-LeVerrier recursion. Matches
/// build_char_poly(coeffs, T, multiplier) coefficient-wise. Throws
/// DimensionMismatch when the cycle period differs from coeffs.period.
RealPolynomial augmented_charpoly(const MapSpec& map,
                                  const CycleDescriptor& cycle,
                                  const CoefficientVector& coeffs);

struct ConvergenceVerdict {
  bool converged = false;
  std::int64_t step = -1;  // first k after which dist stays below tol
};

/// First step k such that the orbit distance stays below tol for 100
/// consecutive steps of the trace.
ConvergenceVerdict detect_convergence(const SimulationTrace& trace,
                                      const CycleDescriptor& cycle,
                                      double tol);

/// CSV export: header `k,x,u,dist`, one row per step, 17 significant digits.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

}  // namespace dfc
