#include "numindex/radii.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "numindex/detail/parallel.hpp"
#include "numindex/detail/rng.hpp"

namespace numindex {

namespace {

using detail::csign;

/// z -> |z|^(e-1) sign(conj z), the pointwise duality map with exponent e.
cplx sharp_pointwise(cplx z, double e) {
  const double a = std::abs(z);
  if (a == 0.0) return {0.0, 0.0};
  return std::pow(a, e - 1.0) * csign(std::conj(z));
}

Vector normalized(const LpSpace& space, const Vector& x, bool* ok = nullptr) {
  const double n = norm(space, x);
  Vector out = x;
  if (n == 0.0 || !std::isfinite(n)) {
    if (ok) *ok = false;
    return out;
  }
  if (ok) *ok = true;
  for (cplx& e : out.entries) e /= n;
  return out;
}

Vector random_unit(const LpSpace& space, Field field, detail::Rng& rng) {
  Vector x = Vector::zeros(space.dim(), field);
  for (;;) {
    for (cplx& e : x.entries) {
      const double re = rng.gaussian();
      const double im = field == Field::Complex ? rng.gaussian() : 0.0;
      e = {re, im};
    }
    bool ok = false;
    Vector u = normalized(space, x, &ok);
    if (ok) return u;
  }
}

/// Copy of x with coordinates inside the delta-guard pushed out to magnitude
/// delta (keeping the phase, zero entries pushed along +1). Only needed for
/// p < 2, where |x|^(p-2) blows up at zero.
Vector guarded(const LpSpace& space, const Vector& x, double delta) {
  if (space.p() >= 2.0 || delta <= 0.0) return x;
  Vector out = x;
  for (cplx& e : out.entries) {
    if (std::abs(e) < delta) {
      const cplx s = csign(e);
      e = (s == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : s) * delta;
    }
  }
  return out;
}

std::vector<double> sign_state(const Vector& y) {
  std::vector<double> sigma(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    sigma[i] = y.entries[i].real() >= 0.0 ? 1.0 : -1.0;
  }
  return sigma;
}

double euclid_norm(const Vector& v) {
  double s = 0.0;
  for (const cplx& e : v.entries) s += std::norm(e);
  return std::sqrt(s);
}

/// Gradient kernel shared by the public radius_gradient and the solver; the
/// solver has already pushed x out of the guard region.
Vector gradient_unguarded(const LpSpace& space, const Operator& T,
                          const Vector& x, Objective obj,
                          const std::vector<double>* sigma) {
  const std::size_t m = space.dim();
  const double p = space.p();
  const Vector y = apply(space, T, x);
  Vector g = Vector::zeros(m, x.field);

  if (obj == Objective::OpNorm) {
    // d/dx of sum_i w_i |y_i|^p: p * conj(M^T (w o y^#)), real conj trivial.
    const Vector ys = sharp(space, y);
    for (std::size_t k = 0; k < m; ++k) {
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < m; ++i) {
        s += space.weight(i) * ys.entries[i] * T.at(i, k);
      }
      g.entries[k] = p * std::conj(s);
    }
    return g;
  }

  if (obj == Objective::AbsNumRadius) {
    if (x.field != Field::Real) {
      throw DomainError("radius_gradient: abs_num_radius is real-only");
    }
    if (sigma == nullptr || sigma->size() != m) {
      throw DomainError("radius_gradient: abs_num_radius needs a sign state");
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double xk = x.entries[k].real();
      double s = space.weight(k) * (p - 1.0) *
                 std::pow(std::abs(xk), p - 2.0) * (xk >= 0.0 ? 1.0 : -1.0) *
                 (*sigma)[k] * y.entries[k].real();
      for (std::size_t i = 0; i < m; ++i) {
        s += space.weight(i) * std::pow(std::abs(x.entries[i].real()), p - 1.0) *
             (*sigma)[i] * T.at(i, k).real();
      }
      g.entries[k] = {s, 0.0};
    }
    return g;
  }

  // NumRadius: |q(x)| with q = sum_j w_j x^#_j y_j. Wirtinger pieces:
  //   dq/dconj(x_k) = w_k (p/2) |x_k|^(p-2) y_k
  //   dq/dx_k       = (M^T (w o x^#))_k + w_k ((p-2)/2)|x_k|^(p-2) ph_k^2 y_k
  // with ph = sign(conj x); packed real gradient c*dq/dconj + conj(c*dq/dx)
  // where c turns the pairing onto the positive real axis.
  const Vector xs = sharp(space, x);
  cplx P{0.0, 0.0};
  for (std::size_t j = 0; j < m; ++j) {
    P += space.weight(j) * xs.entries[j] * y.entries[j];
  }
  const cplx c = std::abs(P) == 0.0 ? cplx{1.0, 0.0} : std::conj(P) / std::abs(P);
  for (std::size_t k = 0; k < m; ++k) {
    const double ak = std::abs(x.entries[k]);
    const double apm2 = ak == 0.0 ? 0.0 : std::pow(ak, p - 2.0);
    const cplx ph = csign(std::conj(x.entries[k]));
    cplx dq_dx{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
      dq_dx += space.weight(j) * xs.entries[j] * T.at(j, k);
    }
    dq_dx += space.weight(k) * 0.5 * (p - 2.0) * apm2 * ph * ph * y.entries[k];
    const cplx dq_dconj = space.weight(k) * 0.5 * p * apm2 * y.entries[k];
    g.entries[k] = c * dq_dconj + std::conj(c * dq_dx);
  }
  if (x.field == Field::Real) {
    for (cplx& e : g.entries) e = {e.real(), 0.0};
  }
  return g;
}

struct RestartResult {
  double value = 0.0;
  Vector witness;
  long iterations = 0;
  bool converged = false;
};

RestartResult ascend(const LpSpace& space, const Operator& T, Objective obj,
                     const Vector& x0, const SolverConfig& cfg) {
  RestartResult res;
  bool ok = false;
  Vector x = normalized(space, x0, &ok);
  if (!ok) return res;

  double f = objective_value(space, T, x, obj);
  double step = cfg.initial_step;
  int stall = 0;
  const double p = space.p();

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    ++res.iterations;
    bool power_improved = false;

    if (obj == Objective::OpNorm) {
      // Nonlinear power step: x^# proportional to M^T (w o (Tx)^#) / w.
      const Vector y = apply(space, T, x);
      Vector u = Vector::zeros(space.dim(), x.field);
      for (std::size_t k = 0; k < space.dim(); ++k) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < space.dim(); ++i) {
          s += space.weight(i) * sharp_pointwise(y.entries[i], p) * T.at(i, k);
        }
        u.entries[k] = sharp_pointwise(s / space.weight(k), space.q());
      }
      bool uok = false;
      Vector xp = normalized(space, u, &uok);
      if (uok) {
        const double fp = objective_value(space, T, xp, obj);
        if (fp > f) {
          power_improved = fp - f > cfg.tol * std::max(1.0, fp);
          x = std::move(xp);
          f = fp;
        }
      }
    }

    Vector xg = guarded(space, x, cfg.delta_guard);
    std::vector<double> sigma;
    const std::vector<double>* sig = nullptr;
    if (obj == Objective::AbsNumRadius) {
      sigma = sign_state(apply(space, T, xg));
      sig = &sigma;
    }
    const Vector g = gradient_unguarded(space, T, xg, obj, sig);
    const Vector gt = tangent_project(space, xg, g);
    const double gn = euclid_norm(gt);
    if (gn <= 1e-13 * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    double trial_step = step;
    // Sufficient-increase (Armijo) acceptance: a plain ft > f test lets full
    // steps hop across the maximizer to a marginally better mirror point
    // forever; requiring a fixed fraction of the first-order gain forces the
    // step to shrink and restores fast local convergence.
    const double armijo = 0.1 * gn * gn;
    for (int b = 0; b < cfg.max_backtracks; ++b) {
      Vector xt = xg;
      for (std::size_t i = 0; i < xt.size(); ++i) {
        xt.entries[i] += trial_step * gt.entries[i];
      }
      bool tok = false;
      Vector xn = normalized(space, xt, &tok);
      if (tok) {
        const double ft = objective_value(space, T, xn, obj);
        if (ft > f + trial_step * armijo) {
          const double gain = ft - f;
          x = std::move(xn);
          f = ft;
          step = (b == 0) ? trial_step * 2.0 : trial_step;
          accepted = true;
          if (gain < cfg.tol * std::max(1.0, std::abs(f))) {
            ++stall;
          } else {
            stall = 0;
          }
          break;
        }
      }
      trial_step *= 0.5;
    }
    // The power step alone can still be contracting linearly when the
    // gradient line search stalls; only stop once both have flatlined.
    if (!power_improved && (!accepted || stall >= 3)) {
      res.converged = true;
      break;
    }
  }

  res.value = f;
  res.witness = std::move(x);
  return res;
}

RadiusEstimate solve(const LpSpace& space, const Operator& T, Objective obj,
                     const SolverConfig& cfg) {
  T.validate();
  if (T.m != space.dim()) {
    throw DimensionError("solver: operator size does not match space");
  }
  const Field field =
      obj == Objective::AbsNumRadius ? Field::Real : T.field;
  if (obj == Objective::AbsNumRadius && T.field != Field::Real) {
    throw DomainError("abs_num_radius: complex field is not supported");
  }

  const std::size_t warm = cfg.warm_starts.size();
  const std::size_t total = warm + static_cast<std::size_t>(
                                       std::max(1, cfg.restarts));
  std::vector<RestartResult> slots(total);
  detail::parallel_for(total, cfg.threads, [&](std::size_t r) {
    Vector x0;
    if (r < warm) {
      x0 = cfg.warm_starts[r];
      if (field == Field::Complex && x0.field == Field::Real) {
        x0.field = Field::Complex;
      }
    } else {
      detail::Rng rng(cfg.seed, r - warm);
      x0 = random_unit(space, field, rng);
    }
    slots[r] = ascend(space, T, obj, x0, cfg);
  });

  RadiusEstimate est;
  est.objective = obj;
  est.restarts = static_cast<int>(total);
  std::size_t best = 0;
  for (std::size_t r = 0; r < total; ++r) {
    est.iterations += slots[r].iterations;
    if (slots[r].value > slots[best].value) best = r;  // ties keep smaller r
  }
  est.value = slots[best].value;
  est.witness = slots[best].witness;
  est.converged = slots[best].converged;
  if (est.witness.size() != space.dim()) {
    // Degenerate inputs (all restarts failed to normalize) fall back to e_1.
    Vector e = Vector::zeros(space.dim(), field);
    e.entries[0] = 1.0;
    est.witness = normalized(space, e);
    est.value = objective_value(space, T, est.witness, obj);
    est.converged = true;
  }
  return est;
}

}  // namespace

const char* objective_name(Objective obj) {
  switch (obj) {
    case Objective::OpNorm: return "op_norm";
    case Objective::NumRadius: return "num_radius";
    case Objective::AbsNumRadius: return "abs_num_radius";
  }
  return "?";
}

double objective_value(const LpSpace& space, const Operator& T, const Vector& x,
                       Objective obj) {
  switch (obj) {
    case Objective::OpNorm:
      return norm(space, apply(space, T, x));
    case Objective::NumRadius:
      return std::abs(pair(space, sharp(space, x), apply(space, T, x)));
    case Objective::AbsNumRadius: {
      if (x.field != Field::Real || T.field != Field::Real) {
        throw DomainError("abs_num_radius: complex field is not supported");
      }
      const Vector y = apply(space, T, x);
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        s += space.weight(i) *
             std::pow(std::abs(x.entries[i].real()), space.p() - 1.0) *
             std::abs(y.entries[i].real());
      }
      return s;
    }
  }
  return 0.0;
}

Vector radius_gradient(const LpSpace& space, const Operator& T, const Vector& x,
                       Objective obj, const std::vector<double>* sigma,
                       double delta_guard) {
  detail::check_conforms(space, x, "radius_gradient");
  if (space.p() < 2.0) {
    for (const cplx& e : x.entries) {
      if (std::abs(e) < delta_guard) {
        throw DomainError(
            "radius_gradient: coordinate inside the nonsmooth guard for p < 2;"
            " perturb the point first");
      }
    }
  }
  return gradient_unguarded(space, T, x, obj, sigma);
}

Vector tangent_project(const LpSpace& space, const Vector& x, const Vector& g) {
  // Constraint normal: grad of ||x||_p^p, n_k = p w_k |x_k|^(p-2) x_k.
  const double p = space.p();
  Vector n = Vector::zeros(x.size(), x.field);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double a = std::abs(x.entries[k]);
    n.entries[k] =
        a == 0.0 ? cplx{0.0, 0.0}
                 : p * space.weight(k) * std::pow(a, p - 2.0) * x.entries[k];
  }
  double gn = 0.0, nn = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    gn += g.entries[k].real() * n.entries[k].real() +
          g.entries[k].imag() * n.entries[k].imag();
    nn += std::norm(n.entries[k]);
  }
  Vector out = g;
  if (nn > 0.0) {
    const double c = gn / nn;
    for (std::size_t k = 0; k < x.size(); ++k) {
      out.entries[k] -= c * n.entries[k];
    }
  }
  return out;
}

RadiusEstimate op_norm(const LpSpace& space, const Operator& T,
                       const SolverConfig& cfg) {
  return solve(space, T, Objective::OpNorm, cfg);
}

RadiusEstimate num_radius(const LpSpace& space, const Operator& T,
                          const SolverConfig& cfg) {
  return solve(space, T, Objective::NumRadius, cfg);
}

RadiusEstimate abs_num_radius(const LpSpace& space, const Operator& T,
                              const SolverConfig& cfg) {
  return solve(space, T, Objective::AbsNumRadius, cfg);
}

AllRadii all_radii(const LpSpace& space, const Operator& T,
                   const SolverConfig& cfg) {
  if (T.field != Field::Real) {
    throw DomainError("all_radii: real operators only (complex |v| undefined)");
  }
  AllRadii out;
  out.num_radius = num_radius(space, T, cfg);
  // Chaining: |v| objective at the v witness dominates v, and ||T .|| at the
  // |v| witness dominates |v| (Holder), so the returned estimates are ordered.
  SolverConfig cfg_abs = cfg;
  cfg_abs.warm_starts.push_back(out.num_radius.witness);
  out.abs_num_radius = abs_num_radius(space, T, cfg_abs);
  SolverConfig cfg_op = cfg;
  cfg_op.warm_starts.push_back(out.abs_num_radius.witness);
  out.op_norm = op_norm(space, T, cfg_op);
  return out;
}

Brute2dOracle::Brute2dOracle(const LpSpace& space, std::size_t resolution,
                             unsigned threads)
    : space_(space), threads_(threads) {
  if (space.dim() != 2) {
    throw DimensionError("Brute2dOracle: needs a 2-atom space");
  }
  if (resolution < 4) {
    throw DomainError("Brute2dOracle: resolution too small");
  }
  const double p = space.p();
  const double c1 = std::pow(space.weight(0), -1.0 / p);
  const double c2 = std::pow(space.weight(1), -1.0 / p);
  x1_.resize(resolution);
  x2_.resize(resolution);
  s1_.resize(resolution);
  s2_.resize(resolution);
  detail::parallel_for(resolution, threads_, [&](std::size_t k) {
    const double th = 2.0 * std::numbers::pi * double(k) / double(resolution);
    const double ct = std::cos(th), st = std::sin(th);
    const double u = std::copysign(std::pow(std::abs(ct), 2.0 / p), ct) * c1;
    const double v = std::copysign(std::pow(std::abs(st), 2.0 / p), st) * c2;
    x1_[k] = u;
    x2_[k] = v;
    s1_[k] = std::copysign(std::pow(std::abs(u), p - 1.0), u);
    s2_[k] = std::copysign(std::pow(std::abs(v), p - 1.0), v);
  });
}

double Brute2dOracle::value(const Operator& T, Objective obj) const {
  if (T.field != Field::Real || T.m != 2) {
    throw DimensionError("Brute2dOracle: real 2x2 operator required");
  }
  const double a = T.at(0, 0).real(), b = T.at(0, 1).real();
  const double c = T.at(1, 0).real(), d = T.at(1, 1).real();
  const double w1 = space_.weight(0), w2 = space_.weight(1);
  const double p = space_.p();
  const std::size_t n = x1_.size();

  const unsigned threads = detail::resolve_threads(threads_);
  std::vector<double> part(threads, 0.0);
  detail::parallel_for(threads, threads, [&](std::size_t t) {
    double best = 0.0;
    for (std::size_t k = t; k < n; k += threads) {
      const double y1 = a * x1_[k] + b * x2_[k];
      const double y2 = c * x1_[k] + d * x2_[k];
      double v = 0.0;
      switch (obj) {
        case Objective::OpNorm:
          v = w1 * std::pow(std::abs(y1), p) + w2 * std::pow(std::abs(y2), p);
          break;
        case Objective::NumRadius:
          v = std::abs(w1 * s1_[k] * y1 + w2 * s2_[k] * y2);
          break;
        case Objective::AbsNumRadius:
          v = w1 * std::abs(s1_[k]) * std::abs(y1) +
              w2 * std::abs(s2_[k]) * std::abs(y2);
          break;
      }
      if (v > best) best = v;
    }
    part[t] = best;
  });
  double best = 0.0;
  for (double v : part) best = std::max(best, v);
  if (obj == Objective::OpNorm) best = std::pow(best, 1.0 / p);
  return best;
}

double brute_radius_2d(const LpSpace& space, const Operator& T, Objective obj,
                       std::size_t resolution) {
  return Brute2dOracle(space, resolution).value(T, obj);
}

}  // namespace numindex
