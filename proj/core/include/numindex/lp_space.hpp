#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace numindex {

using cplx = std::complex<double>;

enum class Field { Real, Complex };

/// Thrown when vector/matrix sizes do not match the ambient space.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown on out-of-range parameters (p outside (1,inf), bad weights, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Finite weighted L_p space: m atoms with strictly positive weights and
/// exponent 1 < p < inf. q is the conjugate exponent, 1/p + 1/q = 1.
class LpSpace {
 public:
  LpSpace(double p, std::vector<double> weights);

  static LpSpace uniform(std::size_t m, double p);

  double p() const { return p_; }
  double q() const { return q_; }
  std::size_t dim() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  double p_;
  double q_;
  std::vector<double> weights_;
};

/// A point of the space. Real vectors keep all imaginary parts exactly zero;
/// the field tag is explicit so real-only code paths can reject complex input.
struct Vector {
  Field field = Field::Real;
  std::vector<cplx> entries;

  static Vector real(std::vector<double> v);
  static Vector complex(std::vector<cplx> v);
  static Vector zeros(std::size_t m, Field f = Field::Real);

  std::size_t size() const { return entries.size(); }
  bool is_real() const { return field == Field::Real; }

  /// Real part view of entry i (the value itself for real vectors).
  double re(std::size_t i) const { return entries[i].real(); }
};

struct AmplitudePhase {
  std::vector<double> amplitude;  // |x_j| >= 0
  std::vector<double> phase;      // arg(x_j) in [0, 2*pi), 0 at zero entries
};

/// (sum_i w_i |x_i|^p)^(1/p).
double norm(const LpSpace& space, const Vector& x);

/// Duality map into L_q: coordinatewise |x|^(p-1) * sign(x), conjugated sign
/// in the complex case, sign(0) = 0.
Vector sharp(const LpSpace& space, const Vector& x);

/// sum_i w_i g_i x_i, no conjugation (the complex convention lives in sharp).
cplx pair(const LpSpace& space, const Vector& g, const Vector& x);

/// Multiplication by the indicator of S: entries in S kept, others zeroed.
Vector restrict(const Vector& x, const std::vector<std::size_t>& S,
                std::size_t m);

AmplitudePhase amplitude_phase(const Vector& x);

namespace detail {
/// sign(z) = z/|z| with sign(0) = 0.
cplx csign(cplx z);
void check_conforms(const LpSpace& space, const Vector& x, const char* what);
}  // namespace detail

}  // namespace numindex
