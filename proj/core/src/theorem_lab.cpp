#include "numindex/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace numindex {

namespace {

void require_real_unit(const LpSpace& space, const Vector& x,
                       const char* what) {
  detail::check_conforms(space, x, what);
  if (x.field != Field::Real) {
    throw DomainError(std::string(what) + ": real vectors only");
  }
  const double n = norm(space, x);
  if (std::abs(n - 1.0) > 1e-6) {
    throw DomainError(std::string(what) + ": x must be unit-norm, got " +
                      std::to_string(n));
  }
}

struct SignSplit {
  std::vector<std::size_t> A, B;
  double beta_a = 0.0;  // sum_A w x^# Tx >= 0
  double beta_b = 0.0;  // -sum_B w x^# Tx >= 0
};

// A-membership uses >= 0, so exact zeros land in A.
SignSplit split(const LpSpace& space, const Operator& T, const Vector& x) {
  const Vector xs = sharp(space, x);
  const Vector y = apply(space, T, x);
  SignSplit s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c =
        space.weight(i) * xs.entries[i].real() * y.entries[i].real();
    if (c >= 0.0) {
      s.A.push_back(i);
      s.beta_a += c;
    } else {
      s.B.push_back(i);
      s.beta_b -= c;
    }
  }
  return s;
}

double a_side_cross_term(const LpSpace& space, const Operator& T,
                         const Vector& x, const SignSplit& s) {
  const Vector xs = sharp(space, x);
  const Vector txb = apply(space, T, restrict(x, s.B, x.size()));
  double v = 0.0;
  for (std::size_t i : s.A) {
    v += space.weight(i) * xs.entries[i].real() * txb.entries[i].real();
  }
  return v;
}

}  // namespace

std::vector<double> default_t_grid(double p) {
  const MpResult mp = compute_Mp(p);
  const double t_hi = std::max(10.0, 3.0 * mp.t_star);
  std::vector<double> grid;
  grid.reserve(513);
  const int n = 512;
  for (int i = 0; i < n; ++i) {
    grid.push_back(std::exp(std::log(t_hi) * double(i) / double(n - 1)));
  }
  grid.push_back(mp.t_star);
  std::sort(grid.begin(), grid.end());
  return grid;
}

Theorem1Certificate build_certificate_thm1(const LpSpace& space,
                                           const Operator& T, const Vector& x,
                                           const std::vector<double>& t_grid,
                                           double absv_estimate) {
  require_real_unit(space, x, "build_certificate_thm1");
  if (T.field != Field::Real) {
    throw DomainError("build_certificate_thm1: real operators only");
  }

  Theorem1Certificate cert;
  cert.x = x;

  SignSplit s = split(space, T, x);
  cert.beta0 = 0.5 * (s.beta_a + s.beta_b);
  cert.flipped = s.beta_b > s.beta_a;  // ties keep T
  const Operator Teff = cert.flipped ? T.negated() : T;
  if (cert.flipped) s = split(space, Teff, x);

  cert.A = s.A;
  cert.B = s.B;
  cert.beta = s.beta_a;
  cert.a = cert.beta > 0.0
               ? a_side_cross_term(space, Teff, x, s) / cert.beta
               : 0.0;

  const double p = space.p();
  cert.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < 1.0) {
      throw DomainError("build_certificate_thm1: t-grid entries must be >= 1");
    }
    const double num = std::abs(std::pow(t, p - 1.0) - t);
    const double den = t - 1.0 + 2.0 * std::pow(t, p);
    const double bound = cert.beta * num / den;
    cert.samples.emplace_back(t, bound);
    cert.best_bound = std::max(cert.best_bound, bound);
  }
  if (std::isfinite(absv_estimate)) {
    cert.eps = absv_estimate - 2.0 * cert.beta0;
  }
  return cert;
}

LskfResult verify_lskf(const LpSpace& space, const Operator& T, const Vector& x,
                       double lambda, double v_estimate) {
  require_real_unit(space, x, "verify_lskf");
  if (T.field != Field::Real) {
    throw DomainError("verify_lskf: real operators only");
  }
  if (lambda < -1.0) {
    throw DomainError("verify_lskf: lambda must lie in [-1, inf)");
  }
  const SignSplit s = split(space, T, x);
  const double beta = s.beta_a;
  const double cross = a_side_cross_term(space, T, x, s);

  const double p = space.p();
  const double opl = std::pow(1.0 + lambda, p - 1.0);
  LskfResult res;
  res.lhs = v_estimate * ((1.0 + std::abs(lambda)) * opl +
                          std::max(1.0, std::pow(1.0 + lambda, p)));
  res.rhs = std::abs((1.0 - opl) * beta + lambda * cross);
  res.holds = res.lhs >= res.rhs - 1e-7;
  return res;
}

Operator complexify(const Operator& T) {
  if (T.field != Field::Real) {
    throw DomainError("complexify: operator is already complex");
  }
  Operator Tc = T;
  Tc.field = Field::Complex;
  return Tc;
}

SignPatternMax sign_pattern_max(const LpSpace& space,
                                const std::vector<double>& amplitudes,
                                const std::vector<double>& alpha) {
  const std::size_t m = amplitudes.size();
  if (m == 0 || m > 24) {
    throw DomainError("sign_pattern_max: need 1 <= m <= 24 for enumeration");
  }
  if (alpha.size() != m * m) {
    throw DimensionError("sign_pattern_max: alpha must be m x m");
  }
  for (double a : amplitudes) {
    if (!(a >= 0.0)) {
      throw DomainError("sign_pattern_max: amplitudes must be nonnegative");
    }
  }
  const double pm1 = space.p() - 1.0;
  std::vector<double> apow(m);
  for (std::size_t j = 0; j < m; ++j) apow[j] = std::pow(amplitudes[j], pm1);

  std::vector<int> z(m, 1);
  std::vector<double> r(m, 0.0);  // r_j = sum_k a_k z_k alpha_jk
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      r[j] += amplitudes[k] * alpha[j * m + k];
    }
  }
  auto eval = [&] {
    double v = 0.0;
    for (std::size_t j = 0; j < m; ++j) v += apow[j] * std::abs(r[j]);
    return v;
  };
  auto refresh = [&] {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        s += amplitudes[k] * double(z[k]) * alpha[j * m + k];
      }
      r[j] = s;
    }
  };

  SignPatternMax best;
  best.value = eval();
  best.z = z;

  // Codes run in ascending order, which is lexicographic order of z with
  // +1 preferred over -1 and z_1 most significant; the first maximum
  // encountered is the lexicographically smallest one. r is updated by the
  // counter's bit flips and refreshed periodically against float drift.
  const std::uint64_t total = std::uint64_t(1) << m;
  for (std::uint64_t code = 1; code < total; ++code) {
    // Bits of (code-1) -> code that changed: trailing block.
    const std::uint64_t diff = code ^ (code - 1);
    for (std::size_t b = 0; b < m; ++b) {
      if (diff & (std::uint64_t(1) << b)) {
        const std::size_t k = m - 1 - b;  // bit b holds z_{m-b}
        const int nz = (code >> b) & 1 ? -1 : 1;
        const double delta = double(nz - z[k]) * amplitudes[k];
        z[k] = nz;
        for (std::size_t j = 0; j < m; ++j) r[j] += delta * alpha[j * m + k];
      }
    }
    if ((code & 0xffff) == 0) refresh();
    const double v = eval();
    if (v > best.value) {
      best.value = v;
      best.z = z;
    }
  }
  return best;
}

ComplexificationReport verify_thm2_chain(const LpSpace& space,
                                         const Operator& T, const Vector& x) {
  detail::check_conforms(space, x, "verify_thm2_chain");
  if (T.field != Field::Real) {
    throw DomainError("verify_thm2_chain: real operators only");
  }
  const double n = norm(space, x);
  if (std::abs(n - 1.0) > 1e-6) {
    throw DomainError("verify_thm2_chain: x must be unit-norm");
  }

  const std::size_t m = space.dim();
  const AmplitudePhase ap = amplitude_phase(x);

  ComplexificationReport rep;
  rep.alpha.resize(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      rep.alpha[j * m + k] = space.weight(j) * T.at(j, k).real();
    }
  }

  // lhs = |sum_j a_j^(p-1) e^{-i th_j} sum_k a_k e^{i th_k} alpha_jk|.
  const double pm1 = space.p() - 1.0;
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < m; ++j) {
    cplx inner{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) {
      inner += ap.amplitude[k] * std::polar(1.0, ap.phase[k]) *
               rep.alpha[j * m + k];
    }
    acc += std::pow(ap.amplitude[j], pm1) * std::polar(1.0, -ap.phase[j]) *
           inner;
  }
  rep.lhs = std::abs(acc);

  const SignPatternMax spm = sign_pattern_max(space, ap.amplitude, rep.alpha);
  rep.vertex_max = spm.value;
  rep.z = spm.z;

  std::vector<double> yv(m);
  for (std::size_t j = 0; j < m; ++j) {
    yv[j] = ap.amplitude[j] * double(spm.z[j]);
  }
  rep.absrad_lb = objective_value(space, T, Vector::real(yv),
                                  Objective::AbsNumRadius);

  rep.chain_ok = rep.lhs <= 2.0 * rep.vertex_max + 1e-9 &&
                 rep.vertex_max <= rep.absrad_lb + 1e-9;
  return rep;
}

CorollaryReport verify_corollaries(const LpSpace& space, const Operator& T,
                                   const SolverConfig& cfg, double tol,
                                   double tol_c) {
  if (T.field != Field::Real) {
    throw DomainError("verify_corollaries: real operators only");
  }
  CorollaryReport rep;
  rep.tol = tol;

  const AllRadii ar = all_radii(space, T, cfg);
  rep.v = ar.num_radius.value;
  rep.absv = ar.abs_num_radius.value;
  rep.op = ar.op_norm.value;

  const Operator Tc = complexify(T);
  // Real witnesses embed: the complex estimates always dominate the real ones.
  SolverConfig cfg_c = cfg;
  cfg_c.warm_starts.push_back(ar.op_norm.witness);
  rep.op_c = op_norm(space, Tc, cfg_c).value;
  SolverConfig cfg_vc = cfg;
  cfg_vc.warm_starts.push_back(ar.num_radius.witness);
  rep.v_c = num_radius(space, Tc, cfg_vc).value;

  rep.mp = compute_Mp(space.p()).value;
  const double e = std::numbers::e;
  rep.thm1_ok = rep.v >= (rep.mp / 6.0) * rep.absv - tol;
  rep.thm2_ok = rep.absv >= rep.op / (2.0 * e) - tol;
  rep.cor1_ok = rep.v >= rep.mp / (12.0 * e) * rep.op - tol;
  rep.complex_floor_ok = rep.v_c >= rep.op_c / e - tol_c;
  rep.penultimate_ok = 2.0 * rep.absv >= rep.v_c - tol;
  rep.all_ok = rep.thm1_ok && rep.thm2_ok && rep.cor1_ok &&
               rep.complex_floor_ok && rep.penultimate_ok;
  return rep;
}

}  // namespace numindex
