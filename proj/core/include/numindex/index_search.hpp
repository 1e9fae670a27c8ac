#pragma once

#include <cstdint>
#include <vector>

#include "numindex/lp_space.hpp"
#include "numindex/operator.hpp"
#include "numindex/radii.hpp"

namespace numindex {

/// Empirical upper estimate of the numerical index: min over evaluated
/// candidates of v(T)/||T||. Each candidate certifies n <= v/||T|| up to
/// solver slack on v.
struct IndexEstimate {
  double p = 0.0;
  std::size_t m = 0;
  std::vector<double> weights;
  Field field = Field::Real;
  double estimate = 1.0;
  Operator best_T;  // normalized, ||best_T|| estimate within 1e-6 of 1
  std::size_t candidates = 0;
  std::uint64_t seed = 0;
};

struct SearchConfig {
  std::size_t random_candidates = 256;
  std::size_t skew_candidates = 64;
  std::size_t permdiff_candidates = 64;
  std::size_t descent_top = 8;
  std::size_t descent_steps = 40;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  /// Screening solves use this restart count; candidates near the minimum are
  /// re-solved with strong_restarts before the estimate is reported.
  int screening_restarts = 16;
  int strong_restarts = 64;
};

IndexEstimate estimate_index(const LpSpace& space, Field field,
                             const SearchConfig& cfg);

struct SweepRow {
  IndexEstimate est;
  double mp = 0.0;
  double floor = 0.0;  // mp / (12 e)
  bool floor_ok = false;
  bool monotone_ok = true;  // soft: estimate(m) <= estimate(prev m) + 1e-3
};

/// One row per (p, m) with uniform weights; monotonicity in m and the
/// M_p/(12e) floor are reported as soft diagnostics.
std::vector<SweepRow> sweep(const std::vector<double>& p_list,
                            const std::vector<std::size_t>& m_list, Field field,
                            const SearchConfig& cfg);

}  // namespace numindex
