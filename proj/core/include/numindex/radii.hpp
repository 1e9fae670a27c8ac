#pragma once

#include <cstdint>
#include <vector>

#include "numindex/lp_space.hpp"
#include "numindex/operator.hpp"

namespace numindex {

enum class Objective { OpNorm, NumRadius, AbsNumRadius };

const char* objective_name(Objective obj);

struct SolverConfig {
  int restarts = 64;
  int max_iterations = 400;
  /// Stop a restart once the objective improves by less than tol (relative to
  /// max(1, |value|)) for a few consecutive accepted steps.
  double tol = 1e-13;
  double initial_step = 0.5;
  int max_backtracks = 45;
  std::uint64_t seed = 0;
  /// Nonsmooth guard: for p < 2 gradients are never evaluated at points with
  /// a coordinate of magnitude below delta_guard.
  double delta_guard = 1e-12;
  unsigned threads = 0;  // 0 = hardware concurrency
  /// Extra deterministic starting points, run before the random restarts.
  std::vector<Vector> warm_starts;

  SolverConfig with_restarts(int r) const {
    SolverConfig c = *this;
    c.restarts = r;
    return c;
  }
};

struct RadiusEstimate {
  double value = 0.0;
  Vector witness;
  int restarts = 0;
  long iterations = 0;
  bool converged = false;
  Objective objective = Objective::OpNorm;
};

/// Witness-certified lower bound on ||T|| = sup ||Tx||_p over the unit sphere.
/// Multi-start nonlinear power iteration interleaved with projected gradient
/// ascent; best over restarts, deterministic for a fixed master seed.
RadiusEstimate op_norm(const LpSpace& space, const Operator& T,
                       const SolverConfig& cfg);

/// Lower bound on v(T) = sup |pair(sharp(x), Tx)| over the unit sphere
/// (real sphere for real field, 2m-real parameterization for complex).
RadiusEstimate num_radius(const LpSpace& space, const Operator& T,
                          const SolverConfig& cfg);

/// Lower bound on |v|(T) = sup sum_i w_i |x_i|^(p-1) |(Tx)_i|. Real field
/// only; alternates a sign-assignment step with smooth ascent.
RadiusEstimate abs_num_radius(const LpSpace& space, const Operator& T,
                              const SolverConfig& cfg);

struct AllRadii {
  RadiusEstimate op_norm;
  RadiusEstimate num_radius;
  RadiusEstimate abs_num_radius;
};

/// All three radii of a real operator, witness-chained so that the computed
/// estimates always satisfy v <= |v| <= ||T|| (each later solve starts from
/// the previous witness, whose objective value can only be larger).
AllRadii all_radii(const LpSpace& space, const Operator& T,
                   const SolverConfig& cfg);

/// The objective the solvers maximize, evaluated exactly at x (no unit-norm
/// requirement). OpNorm reports ||Tx||_p.
double objective_value(const LpSpace& space, const Operator& T, const Vector& x,
                       Objective obj);

/// Euclidean gradient before tangent projection. Differentiates ||Tx||_p^p for
/// OpNorm, |pair(sharp(x), Tx)| for NumRadius, and the sigma-smoothed
/// sum_i w_i |x_i|^(p-1) sigma_i (Tx)_i for AbsNumRadius (sigma required).
/// Complex vectors get the gradient with respect to (Re x_k, Im x_k) packed as
/// d/du + i d/dv. Throws DomainError if p < 2 and some |x_i| < delta_guard.
Vector radius_gradient(const LpSpace& space, const Operator& T, const Vector& x,
                       Objective obj,
                       const std::vector<double>* sigma = nullptr,
                       double delta_guard = 1e-12);

/// Projection of g onto the tangent space of the unit p-sphere at x.
Vector tangent_project(const LpSpace& space, const Vector& x, const Vector& g);

/// Grid oracle on the unit sphere of a 2-atom real space: the p-circle
/// parameterization theta -> (|cos|^(2/p) sgn(cos) w1^(-1/p),
/// |sin|^(2/p) sgn(sin) w2^(-1/p)) evaluated at `resolution` angles.
/// Precomputes the point table once; value() is then cheap per operator.
class Brute2dOracle {
 public:
  Brute2dOracle(const LpSpace& space, std::size_t resolution,
                unsigned threads = 0);

  double value(const Operator& T, Objective obj) const;

 private:
  const LpSpace space_;
  unsigned threads_;
  std::vector<double> x1_, x2_;  // sphere points
  std::vector<double> s1_, s2_;  // |x|^(p-1) sgn(x)
};

double brute_radius_2d(const LpSpace& space, const Operator& T, Objective obj,
                       std::size_t resolution);

}  // namespace numindex
