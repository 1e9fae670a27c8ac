#include "numindex/constants.hpp"

#include <cmath>
#include <numbers>

#include "numindex/lp_space.hpp"

namespace numindex {

namespace {

// Objective on t >= 1 with the absolute value resolved by branch:
// t^(p-1) >= t there when p > 2, the other way when p < 2.
double g_of(double t, double p) {
  const double u = std::pow(t, p - 1.0) - t;
  return std::abs(u) / (1.0 + std::pow(t, p));
}

// Derivative of the branch-resolved objective.
double dg_of(double t, double p) {
  const double sgn = p > 2.0 ? 1.0 : -1.0;
  const double u = sgn * (std::pow(t, p - 1.0) - t);
  const double du = sgn * ((p - 1.0) * std::pow(t, p - 2.0) - 1.0);
  const double tp = std::pow(t, p);
  const double denom = 1.0 + tp;
  return (du * denom - u * p * std::pow(t, p - 1.0)) / (denom * denom);
}

}  // namespace

MpResult compute_Mp(double p, double tol) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("compute_Mp: need 1 < p < inf");
  }
  if (!(tol > 0.0)) {
    throw DomainError("compute_Mp: tol must be positive");
  }
  MpResult res;
  res.p = p;
  if (p == 2.0) return res;  // objective identically zero

  const double t_max = std::max(100.0, std::pow(10.0, 6.0 / p));

  // Golden-section bracketing of the interior maximum.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1.0, b = t_max;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = g_of(c, p), fd = g_of(d, p);
  while (b - a > std::max(tol, 1e-13)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = g_of(c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = g_of(d, p);
    }
  }
  double t = 0.5 * (a + b);

  // Derivative bisection inside the final bracket when the sign change is
  // visible; tightens the stationarity residual well below the t-tolerance.
  double lo = std::max(1.0, t - 10.0 * (b - a) - 1e-6);
  double hi = t + 10.0 * (b - a) + 1e-6;
  if (dg_of(lo, p) > 0.0 && dg_of(hi, p) < 0.0) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (dg_of(mid, p) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    t = 0.5 * (lo + hi);
  }

  res.t_star = t;
  res.value = g_of(t, p);
  res.residual = std::abs(dg_of(t, p));
  return res;
}

BoundSet bounds(double p) {
  const MpResult mp = compute_Mp(p);
  const double q = p / (p - 1.0);
  BoundSet b;
  b.mp = mp.value;
  b.mp_over_6 = mp.value / 6.0;
  b.mp_over_12e = mp.value / (12.0 * std::numbers::e);
  b.lower_2d =
      std::max(std::pow(2.0, -1.0 / p), std::pow(2.0, -1.0 / q)) * mp.value;
  b.upper = mp.value;
  b.complex_floor = 1.0 / std::numbers::e;
  return b;
}

}  // namespace numindex
