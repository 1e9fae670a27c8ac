#include <doctest.h>

#include <cmath>

#include "numindex/constants.hpp"
#include "numindex/index_search.hpp"
#include "test_util.hpp"

using namespace numindex;
using doctest::Approx;

namespace {

SearchConfig small_cfg(std::uint64_t seed = 0) {
  SearchConfig cfg;
  cfg.random_candidates = 24;
  cfg.skew_candidates = 8;
  cfg.permdiff_candidates = 8;
  cfg.descent_top = 2;
  cfg.descent_steps = 10;
  cfg.screening_restarts = 8;
  cfg.strong_restarts = 24;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("estimate_index: real Hilbert plane collapses to zero") {
  const LpSpace space = LpSpace::uniform(2, 2.0);
  const auto est = estimate_index(space, Field::Real, small_cfg());
  CHECK(est.estimate <= 1e-4);
  CHECK(est.p == 2.0);
  CHECK(est.m == 2);
  CHECK(est.field == Field::Real);
  CHECK(est.candidates > 0);
}

TEST_CASE("estimate_index: complex Hilbert plane lands on one half") {
  const LpSpace space = LpSpace::uniform(2, 2.0);
  const auto est = estimate_index(space, Field::Complex, small_cfg());
  CHECK(est.estimate == Approx(0.5).epsilon(2e-3));
}

TEST_CASE("estimate_index: real p = 3 plane finds the rotation value") {
  const LpSpace space = LpSpace::uniform(2, 3.0);
  const auto est = estimate_index(space, Field::Real, small_cfg());
  const BoundSet b = bounds(3.0);
  CHECK(est.estimate >= b.lower_2d - 1e-4);
  CHECK(est.estimate <= b.mp + 1e-4);
}

TEST_CASE("estimate_index: the reported witness is normalized") {
  const LpSpace space = LpSpace::uniform(3, 2.5);
  const auto est = estimate_index(space, Field::Real, small_cfg(5));
  SolverConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 32;
  const double nrm = op_norm(space, est.best_T, cfg).value;
  CHECK(nrm == Approx(1.0).epsilon(1e-6));
  // The estimate is attainable: v(best_T)/||best_T|| reproduces it.
  const double v = num_radius(space, est.best_T, cfg).value;
  CHECK(v / nrm <= est.estimate + 1e-6);
}

TEST_CASE("estimate_index: deterministic under a fixed seed") {
  const LpSpace space = LpSpace::uniform(2, 1.7);
  const auto a = estimate_index(space, Field::Real, small_cfg(9));
  const auto b = estimate_index(space, Field::Real, small_cfg(9));
  CHECK(a.estimate == b.estimate);
  for (std::size_t k = 0; k < a.best_T.data.size(); ++k) {
    CHECK(a.best_T.data[k] == b.best_T.data[k]);
  }
  const auto c = estimate_index(space, Field::Real, small_cfg(10));
  CHECK(c.estimate <= a.estimate + 1e-3);  // different seed, same landscape
}

TEST_CASE("estimate_index: respects the M_p/(12e) floor") {
  for (double p : {1.5, 2.5, 4.0}) {
    const LpSpace space = LpSpace::uniform(2, p);
    const auto est = estimate_index(space, Field::Real, small_cfg());
    CHECK(est.estimate >= bounds(p).mp_over_12e - 1e-6);
  }
}

TEST_CASE("sweep: rows carry the floor and monotonicity diagnostics") {
  const auto rows = sweep({2.0, 3.0}, {2}, Field::Real, small_cfg());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].est.p == 2.0);
  CHECK(rows[1].est.p == 3.0);
  CHECK(rows[1].mp == Approx(compute_Mp(3.0).value).epsilon(1e-14));
  CHECK(rows[1].floor == Approx(rows[1].mp / (12.0 * std::exp(1.0))));
  for (const auto& r : rows) {
    CHECK(r.floor_ok);
    CHECK(r.monotone_ok);
  }
}
