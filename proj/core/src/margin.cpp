#include "dfc/margin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dfc/charpoly.hpp"
#include "dfc/errors.hpp"

namespace dfc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unit_sum(const CoefficientVector& coeffs) {
  if (coeffs.a.empty() ||
      coeffs.a.size() != static_cast<std::size_t>(coeffs.depth))
    throw std::invalid_argument("margin: inconsistent coefficient vector");
  if (std::abs(coeffs.sum() - 1.0) > 1e-8)
    throw std::invalid_argument("margin: coefficients must sum to 1");
}

// q(z) and z q'(z) at z = e^{it}, in the descending layout
// q(z) = a_1 z^{N-1} + ... + a_N.
struct QValues {
  std::complex<double> q;
  std::complex<double> zdq;  // z * q'(z)
};

QValues eval_q(const CoefficientVector& coeffs, double t) {
  const std::complex<double> z = std::polar(1.0, t);
  std::complex<double> q = 0.0, dq = 0.0;
  for (double aj : coeffs.a) {
    dq = dq * z + q;
    q = q * z + aj;
  }
  return {q, z * dq};
}

}  // namespace

const char* to_string(MarginMethod method) {
  switch (method) {
    case MarginMethod::closed_t1: return "closed_t1";
    case MarginMethod::closed_t2: return "closed_t2";
    case MarginMethod::curve: return "curve";
    case MarginMethod::bisect: return "bisect";
  }
  return "unknown";
}

CurveSample curve_point(const CoefficientVector& coeffs, int period,
                        double t) {
  const int degree = (coeffs.depth - 1) * period + 1;
  std::complex<double> phi = std::polar(1.0, -degree * t);
  const std::complex<double> q = eval_q(coeffs, t).q;
  for (int k = 0; k < period; ++k) phi *= q;
  return {t, phi.real(), phi.imag()};
}

MarginReport margin_t1(const CoefficientVector& coeffs) {
  check_unit_sum(coeffs);
  const ConjugateTrigPair pair(TrigMode::T1, {coeffs.a.begin(), coeffs.a.end()});
  const RealRootSet zeros = constraint_zeros_t1(pair);

  MarginReport report;
  report.method = MarginMethod::closed_t1;
  double best = std::numeric_limits<double>::infinity();
  for (const RootPoint& point : zeros.points) {
    const auto [c, s] = pair.evaluate(point.t);
    report.constraint_points.push_back({point.t, c, s});
    if (c < best) {
      best = c;
      report.witness_t = point.t;
    }
  }
  if (!(best < 0.0))
    throw NonNegativeInfimum("margin_t1: constrained cosine minimum is >= 0");
  report.witness_value = best;
  report.mu_tilde = 1.0 / best;
  return report;
}

MarginReport margin_t2(const CoefficientVector& coeffs) {
  check_unit_sum(coeffs);
  const ConjugateTrigPair pair(TrigMode::T2, {coeffs.a.begin(), coeffs.a.end()});
  const RealRootSet zeros = constraint_zeros_t2(pair);

  MarginReport report;
  report.method = MarginMethod::closed_t2;
  double best = 0.0;
  for (const RootPoint& point : zeros.points) {
    const auto [c, s] = pair.evaluate(point.t);
    report.constraint_points.push_back({point.t, c, s});
    if (std::abs(s) > best) {
      best = std::abs(s);
      report.witness_t = point.t;
    }
  }
  if (best <= 1e-12)
    throw ZeroMax("margin_t2: constrained |S| maximum vanished");
  report.witness_value = -best * best;
  report.mu_tilde = -1.0 / (best * best);
  return report;
}

namespace {

double curve_im(const CoefficientVector& coeffs, int period, double t) {
  return curve_point(coeffs, period, t).im;
}

// d/dt Im Phi, from Phi'(t) = i e^{-iLt} q^{T-1} (T z q' - L q); no division,
// so the expression is safe where q vanishes.
double curve_im_derivative(const CoefficientVector& coeffs, int period,
                           double t) {
  const int degree = (coeffs.depth - 1) * period + 1;
  const auto [q, zdq] = eval_q(coeffs, t);
  std::complex<double> qpow = 1.0;
  for (int k = 0; k < period - 1; ++k) qpow *= q;
  const std::complex<double> d =
      std::complex<double>(0.0, 1.0) * std::polar(1.0, -degree * t) * qpow *
      (static_cast<double>(period) * zdq - static_cast<double>(degree) * q);
  return d.imag();
}

}  // namespace

MarginReport margin_curve(const CoefficientVector& coeffs, int period) {
  check_unit_sum(coeffs);
  if (period < 1) throw std::invalid_argument("margin_curve: period >= 1");

  const int samples = std::max(4096, 64 * coeffs.depth * period);
  const double touch_tol =
      1e-9 * std::pow(coeffs.abs_sum(), static_cast<double>(period));

  std::vector<double> ts(static_cast<std::size_t>(samples) + 1);
  std::vector<double> ims(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] = kPi * static_cast<double>(i) / samples;
    ims[i] = curve_im(coeffs, period, ts[i]);
  }

  std::vector<double> located{0.0, kPi};

  // Simple zeros: sign changes of Im, refined by bisection.
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ims[i - 1] == 0.0) {
      located.push_back(ts[i - 1]);
      continue;
    }
    if (ims[i - 1] * ims[i] >= 0.0) continue;
    double lo = ts[i - 1], hi = ts[i];
    double flo = ims[i - 1];
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = curve_im(coeffs, period, mid);
      if (fmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if (flo * fmid < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fmid;
      }
    }
    located.push_back(0.5 * (lo + hi));
  }

  // Tangential zeros: interior local minima of |Im| without a sign change,
  // refined on the analytic derivative of Im and accepted when the touch
  // is genuinely below tolerance.
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double mag = std::abs(ims[i]);
    if (mag > std::abs(ims[i - 1]) || mag > std::abs(ims[i + 1])) continue;
    if (ims[i - 1] * ims[i + 1] <= 0.0) continue;  // handled as sign change
    double lo = ts[i - 1], hi = ts[i + 1];
    double dlo = curve_im_derivative(coeffs, period, lo);
    const double dhi = curve_im_derivative(coeffs, period, hi);
    if (dlo * dhi > 0.0) continue;  // no interior extremum bracketed
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const double dmid = curve_im_derivative(coeffs, period, mid);
      if (dmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if (dlo * dmid < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        dlo = dmid;
      }
    }
    const double candidate = 0.5 * (lo + hi);
    if (std::abs(curve_im(coeffs, period, candidate)) <= touch_tol)
      located.push_back(candidate);
  }

  // Inside a roundoff-flat touch the sampled Im shows noise-level sign
  // changes anywhere in the window, while the extremum location (the root
  // of Im') stays well conditioned. Snap each located point onto that root
  // whenever the curve genuinely touches there.
  for (double& t : located) {
    double lo = std::max(t - 1e-6, 0.0);
    double hi = std::min(t + 1e-6, kPi);
    double dlo = curve_im_derivative(coeffs, period, lo);
    const double dhi = curve_im_derivative(coeffs, period, hi);
    if (dlo * dhi > 0.0) continue;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const double dmid = curve_im_derivative(coeffs, period, mid);
      if (dmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if (dlo * dmid < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        dlo = dmid;
      }
    }
    const double snapped = 0.5 * (lo + hi);
    if (std::abs(curve_im(coeffs, period, snapped)) <= touch_tol) t = snapped;
  }

  std::sort(located.begin(), located.end());
  located.erase(std::unique(located.begin(), located.end(),
                            [](double a, double b) { return b - a <= 1e-9; }),
                located.end());

  MarginReport report;
  report.method = MarginMethod::curve;
  double best = std::numeric_limits<double>::infinity();
  for (double t : located) {
    const CurveSample sample = curve_point(coeffs, period, t);
    report.constraint_points.push_back({sample.t, sample.re, sample.im});
    if (sample.re < best) {
      best = sample.re;
      report.witness_t = t;
    }
  }
  if (!(best < 0.0)) {
    report.no_negative_crossing = true;
    report.mu_tilde = -std::numeric_limits<double>::infinity();
    report.witness_value = std::numeric_limits<double>::quiet_NaN();
    report.witness_t = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.witness_value = best;
  report.mu_tilde = 1.0 / best;
  return report;
}

double margin_bisect(const CoefficientVector& coeffs, int period) {
  if (period < 1) throw std::invalid_argument("margin_bisect: period >= 1");
  if (coeffs.a.empty() ||
      coeffs.a.size() != static_cast<std::size_t>(coeffs.depth))
    throw std::invalid_argument("margin_bisect: inconsistent coefficients");

  const auto verdict_at = [&](double mu) {
    return schur_stable(build_char_poly(coeffs, period, mu));
  };
  const auto stable_at = [&](double mu) { return verdict_at(mu).stable; };

  double hi = -1e-6;  // stable side of the bracket
  double lo;
  if (!stable_at(hi)) {
    lo = hi;
    hi = 0.0;  // mu = 0 is always stable
  } else {
    const double guard = std::ldexp(4.0, coeffs.depth + period);
    lo = 2.0 * hi;
    while (stable_at(lo)) {
      hi = lo;
      lo *= 2.0;
      if (-lo > guard)
        throw NeverUnstable("margin_bisect: stable beyond the guard bound");
    }
  }

  // The stable set along the real axis can be disconnected (roots may exit
  // and re-enter the disc as mu decreases), and the doubling phase can land
  // both bracket probes in different stable components, skipping an
  // unstable window. The margin is the FIRST transition below zero, so
  // after each bisection pass rescan geometrically above the found
  // transition and rebracket on any unstable point encountered.
  for (int pass = 0; pass < 8; ++pass) {
    for (int step = 0; step < 200; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (stable_at(mid))
        hi = mid;
      else
        lo = mid;
    }
    bool rebracketed = false;
    if (-hi > 2e-6) {
      constexpr int kScan = 1024;
      const double ratio = std::pow(-hi / 1e-6, 1.0 / kScan);
      double above = -1e-6;
      for (int i = 1; i < kScan; ++i) {
        const double mu = -1e-6 * std::pow(ratio, i);
        if (mu <= hi) break;
        if (!stable_at(mu)) {
          lo = mu;
          hi = above;
          rebracketed = true;
          break;
        }
        above = mu;
      }
    }
    if (!rebracketed) break;
  }

  // The reflection-coefficient test carries a marginality band around the
  // true transition; the bracket above stops at its stable-side edge. When
  // the band is resolvable, locate its unstable-side edge as well and
  // report the midpoint, which cancels the band offset to second order.
  if (verdict_at(lo).marginal) {
    double below = lo;
    double step = std::max(1e-12, 2.0 * (hi - lo));
    bool found = false;
    for (int it = 0; it < 80; ++it) {
      below = lo - step;
      const auto verdict = verdict_at(below);
      if (!verdict.stable && !verdict.marginal) {
        found = true;
        break;
      }
      step *= 2.0;
    }
    if (found) {
      double marginal_side = lo;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (below + marginal_side);
        if (mid == below || mid == marginal_side) break;
        const auto verdict = verdict_at(mid);
        if (!verdict.stable && !verdict.marginal)
          below = mid;
        else
          marginal_side = mid;
      }
      return 0.5 * (0.5 * (below + marginal_side) + 0.5 * (lo + hi));
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace dfc
