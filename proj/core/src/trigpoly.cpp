#include "dfc/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dfc/errors.hpp"

namespace dfc {

namespace {

constexpr double kPi = std::numbers::pi;

// Monomial coefficients of Chebyshev polynomials, built with the shared
// integer recurrence P_{k+1} = 2x P_k - P_{k-1}. The degree-1 seed picks the
// kind: {0, 1} gives T_k, {0, 2} gives U_k.
std::vector<std::vector<double>> chebyshev_rows(int count, double seed) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(count));
  if (count >= 1) rows[0] = {1.0};
  if (count >= 2) rows[1] = {0.0, seed};
  for (int k = 2; k < count; ++k) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
    const auto& prev = rows[static_cast<std::size_t>(k - 1)];
    const auto& prev2 = rows[static_cast<std::size_t>(k - 2)];
    for (std::size_t i = 0; i < prev.size(); ++i) row[i + 1] = 2.0 * prev[i];
    for (std::size_t i = 0; i < prev2.size(); ++i) row[i] -= prev2[i];
    rows[static_cast<std::size_t>(k)] = std::move(row);
  }
  return rows;
}

std::vector<std::vector<double>> chebyshev_u_rows(int count) {
  return chebyshev_rows(count, 2.0);
}

std::vector<std::vector<double>> chebyshev_t_rows(int count) {
  return chebyshev_rows(count, 1.0);
}

double frequency(TrigMode mode, int j) {
  return mode == TrigMode::T1 ? static_cast<double>(j)
                              : static_cast<double>(2 * j - 1);
}

// d/dt of the sine member: sum_j w_j a_j cos(w_j t).
double sine_derivative(const ConjugateTrigPair& pair, double t) {
  detail::NeumaierSum acc;
  const auto a = pair.coefficients();
  for (int j = 1; j <= pair.depth(); ++j) {
    const double w = frequency(pair.mode(), j);
    acc.add(w * a[static_cast<std::size_t>(j - 1)] * std::cos(w * t));
  }
  return acc.result();
}

// d2/dt2 of the sine member.
double sine_second_derivative(const ConjugateTrigPair& pair, double t) {
  detail::NeumaierSum acc;
  const auto a = pair.coefficients();
  for (int j = 1; j <= pair.depth(); ++j) {
    const double w = frequency(pair.mode(), j);
    acc.add(-w * w * a[static_cast<std::size_t>(j - 1)] * std::sin(w * t));
  }
  return acc.result();
}

// d/dt of the cosine member: -sum_j w_j a_j sin(w_j t).
double cosine_derivative(const ConjugateTrigPair& pair, double t) {
  detail::NeumaierSum acc;
  const auto a = pair.coefficients();
  for (int j = 1; j <= pair.depth(); ++j) {
    const double w = frequency(pair.mode(), j);
    acc.add(-w * a[static_cast<std::size_t>(j - 1)] * std::sin(w * t));
  }
  return acc.result();
}

double cosine_second_derivative(const ConjugateTrigPair& pair, double t) {
  detail::NeumaierSum acc;
  const auto a = pair.coefficients();
  for (int j = 1; j <= pair.depth(); ++j) {
    const double w = frequency(pair.mode(), j);
    acc.add(-w * w * a[static_cast<std::size_t>(j - 1)] * std::cos(w * t));
  }
  return acc.result();
}

// A few Newton steps in t for a zero of f (or of f' for tangential zeros),
// constrained to stay inside (lo, hi). Returns the refined point, or the
// starting point when refinement does not improve |f|.
template <typename F, typename DF>
double polish_zero(double t0, double lo, double hi, F f, DF df) {
  double t = t0;
  double best = t0;
  double best_abs = std::abs(f(t0));
  for (int it = 0; it < 12; ++it) {
    const double fv = f(t);
    const double dv = df(t);
    if (dv == 0.0) break;
    const double step = fv / dv;
    t -= step;
    if (!(t > lo && t < hi)) break;
    const double cur = std::abs(f(t));
    if (cur < best_abs) {
      best_abs = cur;
      best = t;
    }
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(t))) break;
  }
  return best;
}

// Refines one interior candidate zero of the constraint function `value`.
// Tangentiality is decided in t-space by sign sampling: around a touch the
// roundoff-flat region makes the underlying algebraic hint unreliable.
// Sign-change zeros are polished on `value`; touches on `d1`, whose root
// (the extremum location) stays well conditioned even when the touch
// degenerates.
template <typename F, typename D1, typename D2>
bool refine_interior_zero(double& t, double lo, double hi, double sign_tol,
                          F value, D1 d1, D2 d2, bool& tangential) {
  double h = 1e-6;
  double left = 0.0, right = 0.0;
  for (; h <= 1e-3; h *= 10.0) {
    left = value(t - h);
    right = value(t + h);
    if (std::abs(left) > sign_tol && std::abs(right) > sign_tol) break;
  }
  tangential = left * right > 0.0;
  if (tangential)
    t = polish_zero(t, lo, hi, d1, d2);
  else
    t = polish_zero(t, lo, hi, value, d1);
  return t > lo && t < hi;
}

// Sorts reported zeros and merges points that refined onto the same spot
// (a rounding-split even root yields one candidate per companion
// eigenvalue).
void finalize_points(std::vector<RootPoint>& points) {
  std::sort(points.begin(), points.end(),
            [](const RootPoint& l, const RootPoint& r) { return l.t < r.t; });
  std::vector<RootPoint> merged;
  for (const RootPoint& p : points) {
    if (!merged.empty() && p.t - merged.back().t <= 1e-8) {
      RootPoint& last = merged.back();
      last.tangential = last.tangential || p.tangential;
      if (p.residual < last.residual) {
        last.t = p.t;
        last.residual = p.residual;
      }
      continue;
    }
    merged.push_back(p);
  }
  points = std::move(merged);
}

// Closed-form real roots for degree <= 2, classified by discriminant.
bool quadratic_roots(const RealPolynomial& p, std::vector<RealRoot>& out) {
  const int d = p.degree();
  if (d == 1) {
    out.push_back({-p.coefficient(0) / p.coefficient(1), false});
    return true;
  }
  if (d == 2) {
    const double a = p.coefficient(2);
    const double b = p.coefficient(1);
    const double c = p.coefficient(0);
    const double disc = b * b - 4.0 * a * c;
    const double disc_scale = b * b + std::abs(4.0 * a * c);
    if (std::abs(disc) <= 256.0 * 1e-16 * disc_scale) {
      out.push_back({-b / (2.0 * a), true});
      return true;
    }
    if (disc < 0.0) return true;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    out.push_back({q / a, false});
    out.push_back({c / q, false});
    std::sort(out.begin(), out.end(),
              [](const RealRoot& l, const RealRoot& r) { return l.x < r.x; });
    return true;
  }
  return false;
}

}  // namespace

ConjugateTrigPair::ConjugateTrigPair(TrigMode mode,
                                     std::vector<double> coefficients)
    : mode_(mode), a_(std::move(coefficients)) {
  if (a_.empty())
    throw std::invalid_argument("ConjugateTrigPair: empty coefficient list");
  detail::NeumaierSum s, as;
  for (double v : a_) {
    s.add(v);
    as.add(std::abs(v));
  }
  sum_ = s.result();
  abs_sum_ = as.result();
}

std::pair<double, double> ConjugateTrigPair::evaluate(double t) const {
  detail::NeumaierSum c, s;
  for (int j = 1; j <= depth(); ++j) {
    const double w = frequency(mode_, j);
    const double aj = a_[static_cast<std::size_t>(j - 1)];
    c.add(aj * std::cos(w * t));
    s.add(aj * std::sin(w * t));
  }
  return {c.result(), s.result()};
}

RealPolynomial reduce_sine_t1(const ConjugateTrigPair& pair) {
  if (pair.mode() != TrigMode::T1)
    throw std::invalid_argument("reduce_sine_t1: requires mode T1");
  const int n = pair.depth();
  const auto rows = chebyshev_u_rows(n);
  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  const auto a = pair.coefficients();
  for (int j = 1; j <= n; ++j) {
    const auto& row = rows[static_cast<std::size_t>(j - 1)];
    for (std::size_t i = 0; i < row.size(); ++i)
      acc[i] += a[static_cast<std::size_t>(j - 1)] * row[i];
  }
  return RealPolynomial(std::move(acc));
}

RealPolynomial reduce_cosine_t2(const ConjugateTrigPair& pair) {
  if (pair.mode() != TrigMode::T2)
    throw std::invalid_argument("reduce_cosine_t2: requires mode T2");
  const int n = pair.depth();
  const auto rows = chebyshev_t_rows(2 * n);
  // cos((2j-1)t) = cos t * R_{j-1}(cos^2 t): odd monomial coefficients of
  // T_{2j-1} become the coefficients of R_{j-1} in u = cos^2 t.
  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  const auto a = pair.coefficients();
  for (int j = 1; j <= n; ++j) {
    const auto& row = rows[static_cast<std::size_t>(2 * j - 1)];
    for (std::size_t i = 1; i < row.size(); i += 2)
      acc[(i - 1) / 2] += a[static_cast<std::size_t>(j - 1)] * row[i];
  }
  return RealPolynomial(std::move(acc));
}

std::vector<RealRoot> real_roots_in_interval(const RealPolynomial& p,
                                             double lo, double hi) {
  if (p.is_zero())
    throw DegenerateInput("real_roots_in_interval: zero polynomial");
  if (!(lo < hi))
    throw std::invalid_argument("real_roots_in_interval: requires lo < hi");
  if (p.degree() == 0) return {};

  std::vector<RealRoot> candidates;
  if (!quadratic_roots(p, candidates)) {
    const auto complex_roots = detail::companion_roots(p);
    std::vector<double> reals;
    for (const auto& z : complex_roots)
      if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z.real())))
        reals.push_back(z.real());

    // An exact even-multiplicity root is split off the axis by coefficient
    // rounding, by about sqrt(eps); such conjugate pairs fail the realness
    // filter but still mark a point where p dips to roundoff level. Recover
    // it as the nearby real extremum and keep it when the polynomial-level
    // residual bound is met.
    const RealPolynomial dp = p.derivative();
    const RealPolynomial ddp = dp.derivative();
    const double residual_tol = 1e-10 * p.max_abs_coefficient();
    for (const auto& z : complex_roots) {
      const double im = std::abs(z.imag());
      const double scale = std::max(1.0, std::abs(z.real()));
      if (im <= 1e-9 * scale || im > 1e-2 * scale) continue;
      double x = z.real();
      for (int it = 0; it < 20; ++it) {
        const double d1 = dp(x);
        const double d2 = ddp(x);
        if (d2 == 0.0) break;
        const double step = d1 / d2;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
      }
      if (std::isfinite(x) && std::abs(p(x)) <= residual_tol) reals.push_back(x);
    }
    std::sort(reals.begin(), reals.end());
    // Polished copies of a multiple root collapse onto one point; merge them
    // and classify by sign sampling below.
    for (std::size_t i = 0; i < reals.size();) {
      std::size_t j = i + 1;
      while (j < reals.size() &&
             reals[j] - reals[i] <= 1e-9 * std::max(1.0, std::abs(reals[i])))
        ++j;
      candidates.push_back({reals[(i + j - 1) / 2], false});
      i = j;
    }
    // Sign-sampling classification: tangential iff p keeps its sign across
    // the root.
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      double gap = std::numeric_limits<double>::infinity();
      if (i > 0) gap = std::min(gap, candidates[i].x - candidates[i - 1].x);
      if (i + 1 < candidates.size())
        gap = std::min(gap, candidates[i + 1].x - candidates[i].x);
      const double x = candidates[i].x;
      double h = 1e-5 * std::max(1.0, std::abs(x));
      if (std::isfinite(gap)) h = std::min(h, 0.45 * gap);
      const double left = p(x - h);
      const double right = p(x + h);
      candidates[i].tangential = left * right > 0.0;
    }
  }

  const double edge = 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<RealRoot> result;
  for (const auto& r : candidates) {
    if (r.x < lo - edge || r.x > hi + edge) continue;
    result.push_back({std::clamp(r.x, lo, hi), r.tangential});
  }
  std::sort(result.begin(), result.end(),
            [](const RealRoot& l, const RealRoot& r) { return l.x < r.x; });
  return result;
}

RealRootSet constraint_zeros_t1(const ConjugateTrigPair& pair) {
  if (pair.mode() != TrigMode::T1)
    throw std::invalid_argument("constraint_zeros_t1: requires mode T1");
  if (pair.abs_sum() == 0.0)
    throw AllZero("constraint_zeros_t1: all coefficients are zero");

  const RealPolynomial factor = reduce_sine_t1(pair);
  if (factor.is_zero())
    throw AllZero("constraint_zeros_t1: sine member is identically zero");

  RealRootSet set;
  set.lo = 0.0;
  set.hi = kPi;
  set.points.push_back({0.0, false, std::abs(pair.sine(0.0))});
  set.points.push_back({kPi, false, std::abs(pair.sine(kPi))});

  if (factor.degree() >= 1) {
    const double residual_tol = 1e-9 * pair.abs_sum();
    for (const auto& root : real_roots_in_interval(factor, -1.0, 1.0)) {
      if (root.x >= 1.0 - 1e-12 || root.x <= -1.0 + 1e-12) continue;
      double t = std::acos(root.x);
      bool tangential = false;
      if (!refine_interior_zero(
              t, 0.0, kPi, residual_tol,
              [&](double s) { return pair.sine(s); },
              [&](double s) { return sine_derivative(pair, s); },
              [&](double s) { return sine_second_derivative(pair, s); },
              tangential))
        continue;
      if (t <= 1e-9 || t >= kPi - 1e-9) continue;
      const double residual = std::abs(pair.sine(t));
      if (residual > residual_tol) continue;
      set.points.push_back({t, tangential, residual});
    }
  }
  finalize_points(set.points);
  return set;
}

RealRootSet constraint_zeros_t2(const ConjugateTrigPair& pair) {
  if (pair.mode() != TrigMode::T2)
    throw std::invalid_argument("constraint_zeros_t2: requires mode T2");
  if (pair.abs_sum() == 0.0)
    throw AllZero("constraint_zeros_t2: all coefficients are zero");

  const RealPolynomial factor = reduce_cosine_t2(pair);
  if (factor.is_zero())
    throw AllZero("constraint_zeros_t2: cosine member is identically zero");

  const double half_pi = kPi / 2.0;
  RealRootSet set;
  set.lo = 0.0;
  set.hi = half_pi;
  set.points.push_back({half_pi, false, std::abs(pair.cosine(half_pi))});

  if (factor.degree() >= 1) {
    const double residual_tol = 1e-9 * pair.abs_sum();
    for (const auto& root : real_roots_in_interval(factor, 0.0, 1.0)) {
      if (root.x <= 1e-12) continue;  // u = 0 is the pi/2 endpoint
      const double u = std::min(root.x, 1.0);
      double t = std::acos(std::sqrt(u));
      bool tangential = false;
      if (!refine_interior_zero(
              t, -1e-3, half_pi, residual_tol,
              [&](double s) { return pair.cosine(s); },
              [&](double s) { return cosine_derivative(pair, s); },
              [&](double s) { return cosine_second_derivative(pair, s); },
              tangential))
        continue;
      t = std::clamp(t, 0.0, half_pi);
      if (t >= half_pi - 1e-9) continue;
      const double residual = std::abs(pair.cosine(t));
      if (residual > residual_tol) continue;
      set.points.push_back({t, tangential, residual});
    }
  }
  finalize_points(set.points);
  return set;
}

std::vector<double> factor_pair(const ConjugateTrigPair& pair,
                                std::span<const double> zeros, double gamma) {
  if (pair.mode() != TrigMode::T1)
    throw std::invalid_argument("factor_pair: requires mode T1");
  const int n = pair.depth();
  const int m = static_cast<int>(zeros.size());
  if (pair.abs_sum() == 0.0)
    throw NotAZero("factor_pair: all coefficients are zero");
  if (2 * m > n)
    throw NotAZero("factor_pair: more zeros than the degree admits (2m > n)");

  const double tol = 1e-8 * std::max(1.0, pair.abs_sum());
  for (double t : zeros) {
    if (!(t > 1e-12 && t < kPi - 1e-12))
      throw NotAZero("factor_pair: zero outside (0, pi)");
    const auto [c, s] = pair.evaluate(t);
    if (std::abs(s) > tol || std::abs(c - gamma) > tol)
      throw NotAZero("factor_pair: listed point is not a joint zero");
  }

  // F(z) = -gamma + sum_j a_j z^j, divided by prod_k (z^2 - 2 z cos t_k + 1).
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
  f[0] = -gamma;
  const auto a = pair.coefficients();
  for (int j = 1; j <= n; ++j) f[static_cast<std::size_t>(j)] = a[j - 1];
  RealPolynomial dividend{std::move(f)};

  RealPolynomial divisor{{1.0}};
  for (double t : zeros)
    divisor = divisor * RealPolynomial{{1.0, -2.0 * std::cos(t), 1.0}};

  const auto [quotient, remainder] = dividend.divmod(divisor);
  const double remainder_tol = 1e-8 * pair.abs_sum();
  if (remainder.max_abs_coefficient() > remainder_tol)
    throw RemainderTooLarge("factor_pair: inconsistent synthetic division");
  if (std::abs(quotient.coefficient(0) + gamma) > remainder_tol)
    throw RemainderTooLarge("factor_pair: quotient constant drifted from -gamma");

  const double two_m = std::ldexp(1.0, m);
  std::vector<double> alpha(static_cast<std::size_t>(n - 2 * m) + 1, 0.0);
  alpha[0] = -two_m * gamma;
  for (int k = 1; k <= n - 2 * m; ++k)
    alpha[static_cast<std::size_t>(k)] = two_m * quotient.coefficient(k);
  return alpha;
}

}  // namespace dfc
