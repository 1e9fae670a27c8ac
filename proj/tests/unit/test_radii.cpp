#include <doctest.h>

#include <cmath>

#include "numindex/constants.hpp"
#include "numindex/radii.hpp"
#include "test_util.hpp"

using namespace numindex;
using namespace testutil;
using doctest::Approx;

namespace {

SolverConfig quick_cfg(std::uint64_t seed = 0, int restarts = 24) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  return cfg;
}

// Central finite difference of the gradient's target function.
double fd_target(const LpSpace& space, const Operator& T, const Vector& x,
                 Objective obj, const std::vector<double>* sigma) {
  switch (obj) {
    case Objective::OpNorm:
      return std::pow(norm(space, apply(space, T, x)), space.p());
    case Objective::NumRadius:
      return std::abs(pair(space, sharp(space, x), apply(space, T, x)));
    case Objective::AbsNumRadius: {
      const Vector y = apply(space, T, x);
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        s += space.weight(i) *
             std::pow(std::abs(x.entries[i].real()), space.p() - 1.0) *
             (*sigma)[i] * y.entries[i].real();
      }
      return s;
    }
  }
  return 0.0;
}

}  // namespace

TEST_CASE("apply: identity, rotation, zero") {
  const LpSpace space = LpSpace::uniform(2, 3.0);
  const Vector x = Vector::real({1.0, 0.5});
  const Vector ix = apply(space, Operator::identity(2), x);
  CHECK(ix.re(0) == 1.0);
  CHECK(ix.re(1) == 0.5);

  const Vector rx = apply(space, Operator::rotation2(), Vector::real({1.0, 0.0}));
  CHECK(rx.re(0) == 0.0);
  CHECK(rx.re(1) == 1.0);

  const Vector zx = apply(space, Operator::zero(2), x);
  CHECK(zx.re(0) == 0.0);
  CHECK(zx.re(1) == 0.0);

  CHECK_THROWS_AS(apply(space, Operator::identity(3), x), DimensionError);
}

TEST_CASE("op_norm: anchors") {
  for (double p : {1.5, 2.0, 3.0}) {
    const LpSpace space = LpSpace::uniform(2, p);
    CHECK(op_norm(space, Operator::identity(2), quick_cfg()).value ==
          Approx(1.0).epsilon(1e-9));
    CHECK(op_norm(space, Operator::real(2, {2.0, 0.0, 0.0, 1.0}), quick_cfg())
              .value == Approx(2.0).epsilon(1e-9));
  }
  const LpSpace l2 = LpSpace::uniform(2, 2.0);
  CHECK(op_norm(l2, Operator::rotation2(), quick_cfg()).value ==
        Approx(1.0).epsilon(1e-9));
}

TEST_CASE("num_radius: anchors") {
  for (double p : {1.5, 2.5, 3.0}) {
    const LpSpace space = LpSpace::uniform(2, p);
    CHECK(num_radius(space, Operator::identity(2), quick_cfg()).value ==
          Approx(1.0).epsilon(1e-9));
  }
  // Rotation: v = M_p on the real two-dimensional space.
  const LpSpace l3 = LpSpace::uniform(2, 3.0);
  CHECK(num_radius(l3, Operator::rotation2(), quick_cfg()).value ==
        Approx(compute_Mp(3.0).value).epsilon(1e-8));
  // Hilbert case: v = 0 in the real plane.
  const LpSpace l2 = LpSpace::uniform(2, 2.0);
  CHECK(num_radius(l2, Operator::rotation2(), quick_cfg()).value <= 1e-12);
}

TEST_CASE("abs_num_radius: anchors and complex rejection") {
  const LpSpace l2 = LpSpace::uniform(2, 2.0);
  CHECK(abs_num_radius(l2, Operator::identity(2), quick_cfg()).value ==
        Approx(1.0).epsilon(1e-9));
  CHECK(abs_num_radius(l2, Operator::rotation2(), quick_cfg()).value ==
        Approx(1.0).epsilon(1e-8));
  CHECK(abs_num_radius(l2, Operator::zero(2), quick_cfg()).value == 0.0);
  CHECK_THROWS_AS(
      abs_num_radius(l2, Operator::identity(2, Field::Complex), quick_cfg()),
      DomainError);
}

TEST_CASE("witness invariant: unit norm, value matches objective") {
  detail::Rng rng(3, 0);
  for (int i = 0; i < 10; ++i) {
    const double p = i % 2 == 0 ? 1.7 : 3.2;
    const LpSpace space = LpSpace::uniform(3, p);
    const Operator T = random_real_op(3, rng);
    for (Objective obj : {Objective::OpNorm, Objective::NumRadius,
                          Objective::AbsNumRadius}) {
      RadiusEstimate est;
      switch (obj) {
        case Objective::OpNorm: est = op_norm(space, T, quick_cfg(i)); break;
        case Objective::NumRadius: est = num_radius(space, T, quick_cfg(i)); break;
        case Objective::AbsNumRadius:
          est = abs_num_radius(space, T, quick_cfg(i));
          break;
      }
      CHECK(std::abs(norm(space, est.witness) - 1.0) <= 1e-9);
      CHECK(std::abs(objective_value(space, T, est.witness, obj) - est.value) <=
            1e-9 * std::max(1.0, est.value));
    }
  }
}

TEST_CASE("radius_gradient: finite differences, real objectives") {
  const double h = 1e-6;
  for (Objective obj : {Objective::OpNorm, Objective::NumRadius,
                        Objective::AbsNumRadius}) {
    int checked = 0;
    for (int trial = 0; checked < 100; ++trial) {
      detail::Rng rng(11, 100 * int(obj) + trial);
      const double p = trial % 2 == 0 ? 2.5 : 3.5;
      const std::size_t m = 2 + trial % 3;
      const LpSpace space = LpSpace::uniform(m, p);
      const Operator T = random_real_op(m, rng);
      const Vector x = random_smooth_unit(space, rng);
      std::vector<double> sigma;
      const std::vector<double>* sig = nullptr;
      if (obj == Objective::AbsNumRadius) {
        const Vector y = apply(space, T, x);
        sigma.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
          sigma[i] = y.entries[i].real() >= 0.0 ? 1.0 : -1.0;
        }
        sig = &sigma;
      }
      if (obj == Objective::NumRadius &&
          std::abs(pair(space, sharp(space, x), apply(space, T, x))) < 0.05) {
        continue;  // keep away from the |.| kink
      }
      const Vector g = radius_gradient(space, T, x, obj, sig);
      double gnorm = 0.0, enorm = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        Vector xp = x, xm = x;
        xp.entries[k] += h;
        xm.entries[k] -= h;
        const double fd = (fd_target(space, T, xp, obj, sig) -
                           fd_target(space, T, xm, obj, sig)) /
                          (2.0 * h);
        enorm += (fd - g.re(k)) * (fd - g.re(k));
        gnorm += g.re(k) * g.re(k);
      }
      CHECK(std::sqrt(enorm) <= 1e-5 * std::max(1.0, std::sqrt(gnorm)));
      ++checked;
    }
  }
}

TEST_CASE("radius_gradient: complex num_radius against finite differences") {
  const double h = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    detail::Rng rng(13, trial);
    const double p = trial % 2 == 0 ? 2.5 : 4.0;
    const std::size_t m = 2 + trial % 2;
    const LpSpace space = LpSpace::uniform(m, p);
    const Operator T = random_complex_op(m, rng);
    const Vector x = unit(space, random_complex_vec(m, rng));
    if (std::abs(pair(space, sharp(space, x), apply(space, T, x))) < 0.05) {
      continue;
    }
    const Vector g = radius_gradient(space, T, x, Objective::NumRadius);
    for (std::size_t k = 0; k < m; ++k) {
      for (int part = 0; part < 2; ++part) {
        Vector xp = x, xm = x;
        const cplx dh = part == 0 ? cplx{h, 0.0} : cplx{0.0, h};
        xp.entries[k] += dh;
        xm.entries[k] -= dh;
        const double fd =
            (fd_target(space, T, xp, Objective::NumRadius, nullptr) -
             fd_target(space, T, xm, Objective::NumRadius, nullptr)) /
            (2.0 * h);
        const double an = part == 0 ? g.entries[k].real() : g.entries[k].imag();
        CHECK(fd == Approx(an).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("radius_gradient: identity at p = 2 is the weighted double") {
  const LpSpace space(2.0, {1.5, 0.5, 2.0});
  const Vector x = Vector::real({0.3, -0.7, 0.4});
  const Vector g =
      radius_gradient(space, Operator::identity(3), x, Objective::NumRadius);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(g.re(k) == Approx(2.0 * space.weight(k) * x.re(k)).epsilon(1e-12));
  }
}

TEST_CASE("radius_gradient: nonsmooth guard for p < 2") {
  const LpSpace space = LpSpace::uniform(2, 1.5);
  const Vector x = Vector::real({1.0, 0.0});
  CHECK_THROWS_AS(
      radius_gradient(space, Operator::identity(2), x, Objective::OpNorm),
      DomainError);
}

TEST_CASE("solver stationarity: projected gradient at the found maximum") {
  const LpSpace space = LpSpace::uniform(2, 3.0);
  const Operator R = Operator::rotation2();
  const RadiusEstimate est = num_radius(space, R, quick_cfg(0, 32));
  const Vector g = radius_gradient(space, R, est.witness, Objective::NumRadius);
  const Vector gt = tangent_project(space, est.witness, g);
  double n = 0.0;
  for (const cplx& e : gt.entries) n += std::norm(e);
  CHECK(std::sqrt(n) <= 1e-6);
}

TEST_CASE("ordering and seminorm properties on random operators") {
  detail::Rng rng(17, 0);
  for (int i = 0; i < 25; ++i) {
    const double p = std::vector<double>{1.3, 1.7, 2.5, 4.0}[i % 4];
    const std::size_t m = 2 + i % 4;
    const LpSpace space = LpSpace::uniform(m, p);
    const Operator T = random_real_op(m, rng);
    const AllRadii ar = all_radii(space, T, quick_cfg(i));
    CHECK(ar.num_radius.value <= ar.abs_num_radius.value + 1e-7);
    CHECK(ar.abs_num_radius.value <= ar.op_norm.value + 1e-7);

    // Homogeneity of v under scaling (shared witness keeps it exact).
    SolverConfig warm = quick_cfg(i);
    warm.warm_starts.push_back(ar.num_radius.witness);
    const double v3 = num_radius(space, T.scaled(3.0), warm).value;
    CHECK(v3 == Approx(3.0 * ar.num_radius.value).epsilon(1e-7));
  }
}

TEST_CASE("subadditivity of the three radii") {
  detail::Rng rng(19, 0);
  for (int i = 0; i < 12; ++i) {
    const double p = i % 2 == 0 ? 1.7 : 3.0;
    const LpSpace space = LpSpace::uniform(2, p);
    const Operator S = random_real_op(2, rng);
    const Operator T = random_real_op(2, rng);
    Operator ST = S;
    for (std::size_t k = 0; k < ST.data.size(); ++k) ST.data[k] += T.data[k];
    const SolverConfig cfg = quick_cfg(i, 32);
    const AllRadii as = all_radii(space, S, cfg);
    const AllRadii at = all_radii(space, T, cfg);
    const AllRadii ast = all_radii(space, ST, cfg);
    CHECK(ast.num_radius.value <=
          as.num_radius.value + at.num_radius.value + 2e-7);
    CHECK(ast.abs_num_radius.value <=
          as.abs_num_radius.value + at.abs_num_radius.value + 2e-7);
    CHECK(ast.op_norm.value <= as.op_norm.value + at.op_norm.value + 2e-7);
  }
}

TEST_CASE("abs_num_radius: sign invariance is exact") {
  detail::Rng rng(23, 0);
  for (int i = 0; i < 8; ++i) {
    const LpSpace space = LpSpace::uniform(3, 2.4);
    const Operator T = random_real_op(3, rng);
    const double a = abs_num_radius(space, T, quick_cfg(i)).value;
    const double b = abs_num_radius(space, T.negated(), quick_cfg(i)).value;
    CHECK(a == b);
  }
}

TEST_CASE("determinism: seed fixes the estimate bit-for-bit") {
  const LpSpace space = LpSpace::uniform(3, 2.6);
  detail::Rng rng(29, 0);
  const Operator T = random_real_op(3, rng);
  SolverConfig c1 = quick_cfg(77);
  c1.threads = 1;
  SolverConfig c8 = c1;
  c8.threads = 8;
  const RadiusEstimate a = num_radius(space, T, c1);
  const RadiusEstimate b = num_radius(space, T, c8);
  CHECK(a.value == b.value);
  for (std::size_t k = 0; k < a.witness.size(); ++k) {
    CHECK(a.witness.entries[k] == b.witness.entries[k]);
  }
}

TEST_CASE("brute_radius_2d: anchors and solver agreement") {
  for (double p : {1.5, 3.0}) {
    const LpSpace space = LpSpace::uniform(2, p);
    CHECK(std::abs(brute_radius_2d(space, Operator::identity(2),
                                   Objective::OpNorm, 200000) -
                   1.0) <= 1e-6);
    CHECK(brute_radius_2d(space, Operator::zero(2), Objective::NumRadius,
                          1000) == 0.0);
  }
  const LpSpace l3 = LpSpace::uniform(2, 3.0);
  const double oracle =
      brute_radius_2d(l3, Operator::rotation2(), Objective::NumRadius, 1000000);
  const double solver = num_radius(l3, Operator::rotation2(), quick_cfg()).value;
  CHECK(std::abs(oracle - solver) <= 1e-4);
  CHECK_THROWS_AS(
      brute_radius_2d(LpSpace::uniform(3, 2.0), Operator::identity(3),
                      Objective::OpNorm, 1000),
      DimensionError);
}

TEST_CASE("brute_radius_2d: weighted sphere stays feasible") {
  const LpSpace space(2.5, {0.4, 3.0});
  detail::Rng rng(31, 0);
  const Operator T = random_real_op(2, rng);
  const AllRadii ar = all_radii(space, T, quick_cfg(0, 32));
  const Brute2dOracle oracle(space, 400000);
  CHECK(std::abs(oracle.value(T, Objective::OpNorm) - ar.op_norm.value) <= 1e-4);
  CHECK(std::abs(oracle.value(T, Objective::NumRadius) - ar.num_radius.value) <=
        1e-4);
  CHECK(std::abs(oracle.value(T, Objective::AbsNumRadius) -
                 ar.abs_num_radius.value) <= 1e-4);
}
