#include "numindex/operator.hpp"

#include <cmath>
#include <string>

namespace numindex {

Operator Operator::real(std::size_t m, const std::vector<double>& rowmajor) {
  Operator T;
  T.field = Field::Real;
  T.m = m;
  T.data.reserve(m * m);
  for (double v : rowmajor) T.data.emplace_back(v, 0.0);
  T.validate();
  return T;
}

Operator Operator::complex(std::size_t m, std::vector<cplx> rowmajor) {
  Operator T;
  T.field = Field::Complex;
  T.m = m;
  T.data = std::move(rowmajor);
  T.validate();
  return T;
}

Operator Operator::identity(std::size_t m, Field f) {
  Operator T = zero(m, f);
  for (std::size_t i = 0; i < m; ++i) T.at(i, i) = 1.0;
  return T;
}

Operator Operator::zero(std::size_t m, Field f) {
  Operator T;
  T.field = f;
  T.m = m;
  T.data.assign(m * m, cplx(0.0, 0.0));
  return T;
}

Operator Operator::rotation2() {
  return Operator::real(2, {0.0, -1.0, 1.0, 0.0});
}

Operator Operator::scaled(cplx c) const {
  Operator T = *this;
  if (c.imag() != 0.0) T.field = Field::Complex;
  for (cplx& e : T.data) e *= c;
  return T;
}

void Operator::validate() const {
  if (data.size() != m * m) {
    throw DimensionError("Operator: matrix is not " + std::to_string(m) + "x" +
                         std::to_string(m));
  }
  for (const cplx& e : data) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw DomainError("Operator: non-finite entry");
    }
    if (field == Field::Real && e.imag() != 0.0) {
      throw DomainError("Operator: real field tag with nonzero imaginary part");
    }
  }
}

Vector apply(const LpSpace& space, const Operator& T, const Vector& x) {
  detail::check_conforms(space, x, "apply");
  if (T.m != space.dim()) {
    throw DimensionError("apply: operator size does not match space");
  }
  Vector y;
  y.field = (T.field == Field::Complex || x.field == Field::Complex)
                ? Field::Complex
                : Field::Real;
  y.entries.assign(T.m, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < T.m; ++i) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < T.m; ++k) s += T.at(i, k) * x.entries[k];
    y.entries[i] = s;
  }
  return y;
}

Vector apply_adjoint(const LpSpace& space, const Operator& T, const Vector& x) {
  detail::check_conforms(space, x, "apply_adjoint");
  if (T.m != space.dim()) {
    throw DimensionError("apply_adjoint: operator size does not match space");
  }
  const bool conj = T.field == Field::Complex;
  Vector y;
  y.field = (T.field == Field::Complex || x.field == Field::Complex)
                ? Field::Complex
                : Field::Real;
  y.entries.assign(T.m, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < T.m; ++k) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < T.m; ++i) {
      const cplx a = conj ? std::conj(T.at(i, k)) : T.at(i, k);
      s += a * x.entries[i];
    }
    y.entries[k] = s;
  }
  return y;
}

}  // namespace numindex
