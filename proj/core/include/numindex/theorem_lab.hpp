#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "numindex/constants.hpp"
#include "numindex/lp_space.hpp"
#include "numindex/operator.hpp"
#include "numindex/radii.hpp"

namespace numindex {

/// Audit trail of the numerical-radius lower-bound construction applied to a
/// concrete (T, x): the sign split A/B of x^# Tx, the retained half beta, the
/// optional flip to -T, and the bound beta * |t^(p-1) - t| / (t - 1 + 2 t^p)
/// sampled over a t-grid.
struct Theorem1Certificate {
  Vector x;
  std::vector<std::size_t> A;  // {i : (x^#)_i (Tx)_i >= 0} (after flip)
  std::vector<std::size_t> B;
  double beta0 = 0.0;  // half of sum w |x^# Tx|
  double beta = 0.0;   // retained A-side sum, >= beta0
  bool flipped = false;
  double a = 0.0;  // beta^{-1} sum_A w x^# T(x chi_B)
  std::vector<std::pair<double, double>> samples;  // (t, bound at t)
  double best_bound = 0.0;
  double eps = 0.0;  // gap |v|(T) - 2 beta0 when an |v| estimate is supplied
};

struct LskfResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct SignPatternMax {
  double value = 0.0;
  std::vector<int> z;  // entries in {-1, +1}, lexicographically smallest argmax
};

struct ComplexificationReport {
  std::vector<double> alpha;  // m x m row-major, alpha_jk = w_j M_jk
  double lhs = 0.0;           // |pair(x^#, T_C x)| for the probe x
  double vertex_max = 0.0;
  std::vector<int> z;
  double absrad_lb = 0.0;  // value of the |v| objective at y_(z)
  bool chain_ok = false;
};

struct CorollaryReport {
  double v = 0.0;
  double absv = 0.0;
  double op = 0.0;
  double v_c = 0.0;
  double op_c = 0.0;
  double mp = 0.0;
  double tol = 1e-7;
  bool thm1_ok = false;           // v >= (mp/6) |v| - tol
  bool thm2_ok = false;           // |v| >= ||T|| / (2e) - tol
  bool cor1_ok = false;           // v >= mp/(12e) ||T|| - tol
  bool complex_floor_ok = false;  // v(T_C) >= ||T_C|| / e - tol_c
  bool penultimate_ok = false;    // 2 |v|(T) >= v(T_C) - tol
  bool all_ok = false;
};

/// Log-spaced grid of 512 points on [1, max(10, 3 t*)] plus the exact t*
/// reported by compute_Mp.
std::vector<double> default_t_grid(double p);

/// Builds the certificate for a real operator (caller normalizes T to unit
/// norm estimate) and a unit vector x. If absv_estimate is finite it is
/// recorded as eps = absv_estimate - 2 beta0.
Theorem1Certificate build_certificate_thm1(
    const LpSpace& space, const Operator& T, const Vector& x,
    const std::vector<double>& t_grid,
    double absv_estimate = std::numeric_limits<double>::quiet_NaN());

/// Both sides of the central lambda-inequality for given (T, x, lambda),
/// with v(T) supplied as a numerical estimate; holds = (lhs >= rhs - 1e-7).
LskfResult verify_lskf(const LpSpace& space, const Operator& T, const Vector& x,
                       double lambda, double v_estimate);

/// Same matrix acting on complex vectors: T(Re x) + i T(Im x).
Operator complexify(const Operator& T);

/// Exhaustive maximum over z in {-1,1}^m of
/// f(z) = sum_j a_j^(p-1) |sum_k a_k z_k alpha_jk| (m <= 24).
SignPatternMax sign_pattern_max(const LpSpace& space,
                                const std::vector<double>& amplitudes,
                                const std::vector<double>& alpha);

/// Runs the complexification inequality chain for a real T and a complex unit
/// probe x: decomposes x into amplitudes and phases, enumerates the vertex
/// maximum, and evaluates the |v| objective at the maximizing sign vector.
ComplexificationReport verify_thm2_chain(const LpSpace& space,
                                         const Operator& T, const Vector& x);

/// Solves for v, |v|, ||T||, and the complexified v, ||T_C||, then checks the
/// inequality chain linking them (tolerance tol; the complex floor check uses
/// tol_c).
CorollaryReport verify_corollaries(const LpSpace& space, const Operator& T,
                                   const SolverConfig& cfg, double tol = 1e-7,
                                   double tol_c = 1e-6);

}  // namespace numindex
