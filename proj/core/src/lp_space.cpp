#include "numindex/lp_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace numindex {

LpSpace::LpSpace(double p, std::vector<double> weights)
    : p_(p), q_(p / (p - 1.0)), weights_(std::move(weights)) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("LpSpace: exponent p must satisfy 1 < p < inf, got " +
                      std::to_string(p));
  }
  if (weights_.empty()) {
    throw DomainError("LpSpace: need at least one atom");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("LpSpace: weights must be strictly positive and finite");
    }
  }
}

LpSpace LpSpace::uniform(std::size_t m, double p) {
  return LpSpace(p, std::vector<double>(m, 1.0));
}

Vector Vector::real(std::vector<double> v) {
  Vector out;
  out.field = Field::Real;
  out.entries.reserve(v.size());
  for (double t : v) out.entries.emplace_back(t, 0.0);
  return out;
}

Vector Vector::complex(std::vector<cplx> v) {
  Vector out;
  out.field = Field::Complex;
  out.entries = std::move(v);
  return out;
}

Vector Vector::zeros(std::size_t m, Field f) {
  Vector out;
  out.field = f;
  out.entries.assign(m, cplx(0.0, 0.0));
  return out;
}

namespace detail {

cplx csign(cplx z) {
  double a = std::abs(z);
  if (a == 0.0) return {0.0, 0.0};
  return z / a;
}

void check_conforms(const LpSpace& space, const Vector& x, const char* what) {
  if (x.size() != space.dim()) {
    throw DimensionError(std::string(what) + ": vector has " +
                         std::to_string(x.size()) + " entries, space has " +
                         std::to_string(space.dim()) + " atoms");
  }
  for (const cplx& e : x.entries) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw DomainError(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace detail

double norm(const LpSpace& space, const Vector& x) {
  detail::check_conforms(space, x, "norm");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += space.weight(i) * std::pow(std::abs(x.entries[i]), space.p());
  }
  return std::pow(s, 1.0 / space.p());
}

Vector sharp(const LpSpace& space, const Vector& x) {
  detail::check_conforms(space, x, "sharp");
  Vector out;
  out.field = x.field;
  out.entries.resize(x.size());
  const double pm1 = space.p() - 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx z = x.entries[i];
    const double a = std::abs(z);
    if (a == 0.0) {
      out.entries[i] = {0.0, 0.0};
    } else {
      out.entries[i] = std::pow(a, pm1) * detail::csign(std::conj(z));
    }
  }
  return out;
}

cplx pair(const LpSpace& space, const Vector& g, const Vector& x) {
  detail::check_conforms(space, g, "pair");
  detail::check_conforms(space, x, "pair");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += space.weight(i) * g.entries[i] * x.entries[i];
  }
  return s;
}

Vector restrict(const Vector& x, const std::vector<std::size_t>& S,
                std::size_t m) {
  if (x.size() != m) {
    throw DimensionError("restrict: vector length does not match m");
  }
  Vector out = Vector::zeros(m, x.field);
  for (std::size_t i : S) {
    if (i >= m) {
      throw DimensionError("restrict: index " + std::to_string(i) +
                           " out of range for m=" + std::to_string(m));
    }
    out.entries[i] = x.entries[i];
  }
  return out;
}

AmplitudePhase amplitude_phase(const Vector& x) {
  AmplitudePhase out;
  out.amplitude.resize(x.size());
  out.phase.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx z = x.entries[i];
    const double a = std::abs(z);
    out.amplitude[i] = a;
    if (a == 0.0) {
      out.phase[i] = 0.0;
    } else {
      double th = std::arg(z);
      if (th < 0.0) th += 2.0 * std::numbers::pi;
      // arg(-|t|) = pi exactly; the wrap only fires for negative angles.
      if (th >= 2.0 * std::numbers::pi) th = 0.0;
      out.phase[i] = th;
    }
  }
  return out;
}

}  // namespace numindex
