#include "dfc/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dfc/errors.hpp"

namespace dfc {

namespace {

constexpr double kDivergenceGuard = 1e6;
constexpr int kSeeds = 512;
constexpr int kNewtonIterations = 50;
constexpr double kNewtonAcceptance = 1e-13;
constexpr double kOrbitSeparation = 1e-6;
constexpr double kOrbitDedupe = 1e-8;

double orbit_distance(const CycleDescriptor& cycle, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (double p : cycle.points) best = std::min(best, std::abs(x - p));
  return best;
}

}  // namespace

MapSpec::MapSpec(Kind kind, double param, RealPolynomial f, RealPolynomial df,
                 double lo, double hi)
    : kind_(kind), param_(param), f_(std::move(f)), df_(std::move(df)),
      lo_(lo), hi_(hi) {
  if (!(lo_ < hi_)) throw std::invalid_argument("MapSpec: empty domain");
}

MapSpec MapSpec::logistic(double r) {
  RealPolynomial f{{0.0, r, -r}};
  return MapSpec(Kind::logistic, r, f, f.derivative(), 0.0, 1.0);
}

MapSpec MapSpec::quadratic(double c) {
  RealPolynomial f{{c, 0.0, 1.0}};
  return MapSpec(Kind::quadratic, c, f, f.derivative(), -2.0, 2.0);
}

MapSpec MapSpec::polynomial(RealPolynomial f, double lo, double hi) {
  RealPolynomial df = f.derivative();
  return MapSpec(Kind::custom, 0.0, std::move(f), std::move(df), lo, hi);
}

double MapSpec::value(double x) const { return f_(x); }

double MapSpec::derivative(double x) const { return df_(x); }

std::vector<CycleDescriptor> find_cycle(const MapSpec& map, int period) {
  if (period < 1 || period > 8)
    throw std::invalid_argument("find_cycle: period must be in [1, 8]");

  const auto iterate = [&](double x, double& derivative_product) {
    derivative_product = 1.0;
    for (int j = 0; j < period; ++j) {
      derivative_product *= map.derivative(x);
      x = map.value(x);
    }
    return x;
  };

  std::vector<CycleDescriptor> found;
  for (int s = 0; s < kSeeds; ++s) {
    double x = map.domain_lo() +
               (map.domain_hi() - map.domain_lo()) * (s + 0.5) / kSeeds;
    bool accepted = false;
    for (int it = 0; it < kNewtonIterations; ++it) {
      if (!std::isfinite(x) || std::abs(x) > kDivergenceGuard) break;
      double dprod = 1.0;
      const double h = iterate(x, dprod) - x;
      if (std::abs(h) <= kNewtonAcceptance) {
        accepted = true;
        break;
      }
      const double dh = dprod - 1.0;
      if (dh == 0.0) break;
      x -= h / dh;
    }
    if (!accepted) continue;

    // Build the orbit, reject sub-period solutions, canonicalize.
    std::vector<double> orbit(static_cast<std::size_t>(period));
    double p = x;
    for (int j = 0; j < period; ++j) {
      orbit[static_cast<std::size_t>(j)] = p;
      p = map.value(p);
    }
    bool distinct = true;
    for (int i = 0; i < period && distinct; ++i)
      for (int j = i + 1; j < period; ++j)
        if (std::abs(orbit[static_cast<std::size_t>(i)] -
                     orbit[static_cast<std::size_t>(j)]) < kOrbitSeparation) {
          distinct = false;
          break;
        }
    if (!distinct) continue;

    const auto min_it = std::min_element(orbit.begin(), orbit.end());
    std::rotate(orbit.begin(), min_it, orbit.end());

    bool duplicate = false;
    for (const auto& known : found)
      if (std::abs(known.points.front() - orbit.front()) < kOrbitDedupe) {
        duplicate = true;
        break;
      }
    if (duplicate) continue;

    CycleDescriptor cycle;
    cycle.period = period;
    cycle.points = orbit;
    double mu = 1.0;
    double residual = 0.0;
    for (int j = 0; j < period; ++j) {
      const double xj = orbit[static_cast<std::size_t>(j)];
      mu *= map.derivative(xj);
      const double next = orbit[static_cast<std::size_t>((j + 1) % period)];
      residual = std::max(residual, std::abs(map.value(xj) - next));
    }
    cycle.multiplier = mu;
    cycle.residual = residual;
    found.push_back(std::move(cycle));
  }

  if (found.empty())
    throw NoCycleFound("find_cycle: no orbit of the requested period");
  std::sort(found.begin(), found.end(),
            [](const CycleDescriptor& a, const CycleDescriptor& b) {
              return a.points.front() < b.points.front();
            });
  return found;
}

SimulationTrace simulate(const MapSpec& map, const CoefficientVector& coeffs,
                         int period, std::span<const double> history,
                         std::int64_t steps, const CycleDescriptor* reference) {
  if (period < 1) throw std::invalid_argument("simulate: period >= 1");
  const int depth = coeffs.depth;
  if (depth < 1 || coeffs.a.size() != static_cast<std::size_t>(depth))
    throw std::invalid_argument("simulate: inconsistent coefficient vector");
  const std::size_t length = static_cast<std::size_t>((depth - 1) * period) + 1;
  if (history.size() != length)
    throw DimensionMismatch("simulate: history must have (N-1)T + 1 entries");

  // Ring buffer of f-values; slot(k) holds f(x(k)) for the last L times.
  std::vector<double> fbuf(length);
  for (std::size_t i = 0; i < length; ++i) fbuf[i] = map.value(history[i]);
  std::size_t head = length - 1;  // slot of the current time k

  const auto delayed = [&](int lag) {
    return fbuf[(head + length - static_cast<std::size_t>(lag)) % length];
  };

  SimulationTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(steps) + 1);

  double x = history.back();
  for (std::int64_t k = 0; k <= steps; ++k) {
    detail::NeumaierSum next;
    for (int i = 1; i <= depth; ++i)
      next.add(coeffs.a[static_cast<std::size_t>(i - 1)] *
               delayed((i - 1) * period));
    const double x_next = next.result();
    const double u = x_next - delayed(0);

    const double dist = reference
                            ? orbit_distance(*reference, x)
                            : std::numeric_limits<double>::quiet_NaN();
    trace.steps.push_back({x, u, dist});

    if (k == steps) break;
    if (!std::isfinite(x_next) || std::abs(x_next) > kDivergenceGuard) {
      trace.diverged = true;
      break;
    }
    x = x_next;
    head = (head + 1) % length;
    fbuf[head] = map.value(x);
  }
  return trace;
}

std::vector<double> perturbed_history(const CycleDescriptor& cycle, int depth,
                                      double delta) {
  const int period = cycle.period;
  const std::size_t length = static_cast<std::size_t>((depth - 1) * period) + 1;
  std::vector<double> history(length);
  for (std::size_t i = 0; i < length; ++i)
    history[i] = cycle.points[i % static_cast<std::size_t>(period)] + delta;
  return history;
}

RealPolynomial augmented_charpoly(const MapSpec& map,
                                  const CycleDescriptor& cycle,
                                  const CoefficientVector& coeffs) {
  if (cycle.period != coeffs.period)
    throw DimensionMismatch("augmented_charpoly: cycle period != coeffs period");
  if (cycle.residual > 1e-10)
    throw std::invalid_argument("augmented_charpoly: cycle residual too large");

  const int period = cycle.period;
  const int depth = coeffs.depth;
  const int dim = period * (depth - 1) + 1;

  // Lifted state in time order; consecutive entries advance by one f-step.
  std::vector<double> state(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i)
    state[static_cast<std::size_t>(i)] =
        cycle.points[static_cast<std::size_t>(i % period)];

  Eigen::MatrixXd jacobian = Eigen::MatrixXd::Identity(dim, dim);
  for (int step = 0; step < period; ++step) {
    Eigen::MatrixXd one_step = Eigen::MatrixXd::Zero(dim, dim);
    for (int r = 0; r + 1 < dim; ++r) one_step(r, r + 1) = 1.0;
    for (int i = 1; i <= depth; ++i) {
      const int col = period * (depth - i);
      one_step(dim - 1, col) +=
          coeffs.a[static_cast<std::size_t>(i - 1)] *
          map.derivative(state[static_cast<std::size_t>(col)]);
    }
    jacobian = one_step * jacobian;

    // Advance the lifted state by the shift map.
    detail::NeumaierSum next;
    for (int i = 1; i <= depth; ++i)
      next.add(coeffs.a[static_cast<std::size_t>(i - 1)] *
               map.value(state[static_cast<std::size_t>(period * (depth - i))]));
    std::rotate(state.begin(), state.begin() + 1, state.end());
    state.back() = next.result();
  }

  // Faddeev-LeVerrier recursion for det(lambda I - jacobian).
  std::vector<double> c(static_cast<std::size_t>(dim) + 1, 0.0);
  c[static_cast<std::size_t>(dim)] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 1; k <= dim; ++k) {
    if (k == 1)
      m = jacobian;
    else
      m = jacobian *
          (m + c[static_cast<std::size_t>(dim - k + 1)] *
                   Eigen::MatrixXd::Identity(dim, dim));
    c[static_cast<std::size_t>(dim - k)] = -m.trace() / k;
  }
  return RealPolynomial(std::move(c));
}

ConvergenceVerdict detect_convergence(const SimulationTrace& trace,
                                      const CycleDescriptor& cycle,
                                      double tol) {
  constexpr int kRunLength = 100;
  int run = 0;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    if (orbit_distance(cycle, trace.steps[k].x) < tol) {
      ++run;
      if (run >= kRunLength)
        return {true, static_cast<std::int64_t>(k) - kRunLength + 1};
    } else {
      run = 0;
    }
  }
  return {false, -1};
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
  out << "k,x,u,dist\n";
  char line[128];
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", k, s.x, s.u,
                  s.dist);
    out << line;
  }
}

}  // namespace dfc
