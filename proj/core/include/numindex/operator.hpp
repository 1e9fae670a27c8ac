#pragma once

#include <cstddef>
#include <vector>

#include "numindex/lp_space.hpp"

namespace numindex {

/// m x m matrix acting coordinatewise: (Tx)_i = sum_k M_ik x_k.
struct Operator {
  Field field = Field::Real;
  std::size_t m = 0;
  std::vector<cplx> data;  // row-major, m*m entries

  cplx& at(std::size_t i, std::size_t j) { return data[i * m + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return data[i * m + j]; }

  static Operator real(std::size_t m, const std::vector<double>& rowmajor);
  static Operator complex(std::size_t m, std::vector<cplx> rowmajor);
  static Operator identity(std::size_t m, Field f = Field::Real);
  static Operator zero(std::size_t m, Field f = Field::Real);
  /// The plane rotation generator (x, y) -> (-y, x) on m = 2.
  static Operator rotation2();

  Operator scaled(cplx c) const;
  Operator negated() const { return scaled(cplx(-1.0, 0.0)); }

  void validate() const;
};

Vector apply(const LpSpace& space, const Operator& T, const Vector& x);

/// y = T^T x for real T, conjugate-transpose action for complex T
/// (the adjoint with respect to the unweighted dot product).
Vector apply_adjoint(const LpSpace& space, const Operator& T, const Vector& x);

}  // namespace numindex
