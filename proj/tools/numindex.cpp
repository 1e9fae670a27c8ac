// Command-line frontend: mp, radius, certify, complexify, index, sweep,
// verify. JSON for single results, CSV for sweeps, deterministic output for a
// fixed seed. Exit codes: 0 all checks pass, 1 a verified mathematical
// invariant failed, 2 input/usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numindex/constants.hpp"
#include "numindex/detail/parallel.hpp"
#include "numindex/detail/rng.hpp"
#include "numindex/index_search.hpp"
#include "numindex/lp_space.hpp"
#include "numindex/radii.hpp"
#include "numindex/spec_io.hpp"
#include "numindex/theorem_lab.hpp"

namespace {

using namespace numindex;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::uint64_t seed = 0;
  int restarts = 64;
  double tol = 1e-13;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "Master RNG seed");
  cmd->add_option("--restarts", o.restarts, "Solver restarts");
  cmd->add_option("--tol", o.tol, "Solver improvement tolerance");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)")
      ->envname("NUMINDEX_THREADS");
  cmd->add_option("--format", o.format, "Output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "Output path (default stdout)");
}

SolverConfig solver_config(const CommonOpts& o) {
  SolverConfig cfg;
  cfg.restarts = o.restarts;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  return cfg;
}

void write_output(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw SpecParseError("cannot open output path: " + o.out);
  f << text << "\n";
}

void emit_vector(JsonOut& j, const Vector& v) {
  j.begin_array();
  for (const cplx& e : v.entries) {
    if (v.field == Field::Real) {
      j.value(e.real());
    } else {
      j.begin_array();
      j.value(e.real());
      j.value(e.imag());
      j.end_array();
    }
  }
  j.end_array();
}

void emit_matrix(JsonOut& j, const Operator& T) {
  j.begin_array();
  for (std::size_t i = 0; i < T.m; ++i) {
    j.begin_array();
    for (std::size_t k = 0; k < T.m; ++k) {
      const cplx e = T.at(i, k);
      if (T.field == Field::Real) {
        j.value(e.real());
      } else {
        j.begin_array();
        j.value(e.real());
        j.value(e.imag());
        j.end_array();
      }
    }
    j.end_array();
  }
  j.end_array();
}

void emit_estimate(JsonOut& j, const RadiusEstimate& est) {
  j.begin_object();
  j.key("objective");
  j.value(objective_name(est.objective));
  j.key("value");
  j.value(est.value);
  j.key("witness");
  emit_vector(j, est.witness);
  j.key("restarts");
  j.value(est.restarts);
  j.key("iterations");
  j.value(est.iterations);
  j.key("converged");
  j.value(est.converged);
  j.end_object();
}

// ---------------------------------------------------------------- mp

int run_mp(const std::vector<double>& ps, double tol, const CommonOpts& o) {
  std::vector<MpResult> rs;
  std::vector<BoundSet> bs;
  for (double p : ps) {
    rs.push_back(compute_Mp(p, tol));
    bs.push_back(bounds(p));
  }
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "p,value,t_star,residual,mp_over_6,mp_over_12e,lower_2d,upper,"
           "complex_floor";
    for (std::size_t i = 0; i < rs.size(); ++i) {
      csv << "\n"
          << fmt_double(rs[i].p) << "," << fmt_double(rs[i].value) << ","
          << fmt_double(rs[i].t_star) << "," << fmt_double(rs[i].residual)
          << "," << fmt_double(bs[i].mp_over_6) << ","
          << fmt_double(bs[i].mp_over_12e) << "," << fmt_double(bs[i].lower_2d)
          << "," << fmt_double(bs[i].upper) << ","
          << fmt_double(bs[i].complex_floor);
    }
    write_output(o, csv.str());
    return kExitOk;
  }
  JsonOut j;
  j.begin_array();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    j.begin_object();
    j.key("p");
    j.value(rs[i].p);
    j.key("value");
    j.value(rs[i].value);
    j.key("t_star");
    j.value(rs[i].t_star);
    j.key("residual");
    j.value(rs[i].residual);
    j.key("bounds");
    j.begin_object();
    j.key("mp_over_6");
    j.value(bs[i].mp_over_6);
    j.key("mp_over_12e");
    j.value(bs[i].mp_over_12e);
    j.key("lower_2d");
    j.value(bs[i].lower_2d);
    j.key("upper");
    j.value(bs[i].upper);
    j.key("complex_floor");
    j.value(bs[i].complex_floor);
    j.end_object();
    j.end_object();
  }
  j.end_array();
  write_output(o, j.str());
  return kExitOk;
}

// ------------------------------------------------------------ radius

int run_radius(const std::string& spec_path, const std::string& objective,
               const CommonOpts& o) {
  const OperatorSpec spec = load_operator_spec(spec_path);
  const SolverConfig cfg = solver_config(o);

  std::vector<RadiusEstimate> ests;
  bool ordering_checked = false;
  bool ordering_ok = true;
  if (objective == "all") {
    if (spec.T.field != Field::Real) {
      throw SpecParseError(
          "--objective all needs a real spec (complex |v| is unsupported)");
    }
    const AllRadii ar = all_radii(spec.space, spec.T, cfg);
    ests = {ar.num_radius, ar.abs_num_radius, ar.op_norm};
    ordering_checked = true;
    ordering_ok = ar.num_radius.value <= ar.abs_num_radius.value + 1e-7 &&
                  ar.abs_num_radius.value <= ar.op_norm.value + 1e-7;
  } else if (objective == "norm") {
    ests.push_back(op_norm(spec.space, spec.T, cfg));
  } else if (objective == "v") {
    ests.push_back(num_radius(spec.space, spec.T, cfg));
  } else if (objective == "absv") {
    if (spec.T.field != Field::Real) {
      throw SpecParseError("absv is undefined for complex operators");
    }
    ests.push_back(abs_num_radius(spec.space, spec.T, cfg));
  }

  JsonOut j;
  j.begin_object();
  j.key("objective");
  j.value(objective);
  j.key("estimates");
  j.begin_array();
  for (const RadiusEstimate& e : ests) emit_estimate(j, e);
  j.end_array();
  if (ordering_checked) {
    j.key("ordering_ok");
    j.value(ordering_ok);
  }
  j.end_object();
  write_output(o, j.str());
  return ordering_ok ? kExitOk : kExitCheckFailed;
}

// ----------------------------------------------------------- certify

std::vector<double> make_t_grid(double p, int t_points, double t_max) {
  if (t_points <= 0 && t_max <= 0.0) return default_t_grid(p);
  const MpResult mp = compute_Mp(p);
  const int n = t_points > 0 ? t_points : 512;
  const double hi = t_max > 1.0 ? t_max : std::max(10.0, 3.0 * mp.t_star);
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) {
    grid.push_back(std::exp(std::log(hi) * double(i) / double(n - 1)));
  }
  grid.push_back(mp.t_star);
  std::sort(grid.begin(), grid.end());
  return grid;
}

struct CertifyOutcome {
  Theorem1Certificate cert;
  double v_est = 0.0;
  double absv_est = 0.0;
  bool v_ge_bound = false;
  bool thm1 = false;
};

CertifyOutcome certify_once(const LpSpace& space, const Operator& T_unit,
                            const Vector& x, const std::vector<double>& grid,
                            const SolverConfig& cfg) {
  CertifyOutcome out;
  const AllRadii ar = all_radii(space, T_unit, cfg);
  out.v_est = ar.num_radius.value;
  out.absv_est = ar.abs_num_radius.value;
  out.cert = build_certificate_thm1(space, T_unit, x, grid, out.absv_est);
  const double mp = compute_Mp(space.p()).value;
  out.v_ge_bound = out.v_est >= out.cert.best_bound - 1e-6;
  out.thm1 = out.v_est >= (mp / 6.0) * out.absv_est - 1e-7;
  return out;
}

int run_certify(const std::string& spec_path, const std::string& witness,
                const std::string& witness_file, int t_points, double t_max,
                int random_count, const CommonOpts& o) {
  const OperatorSpec spec = load_operator_spec(spec_path);
  if (spec.T.field != Field::Real) {
    throw SpecParseError("certify needs a real operator spec");
  }
  SolverConfig cfg = solver_config(o);
  const std::vector<double> grid = make_t_grid(spec.space.p(), t_points, t_max);

  // Randomized corpus mode: certify `random_count` random unit witnesses.
  if (random_count > 0) {
    const RadiusEstimate opn = op_norm(spec.space, spec.T, cfg);
    if (!(opn.value > 0.0)) {
      throw SpecParseError("certify --random: operator is (numerically) zero");
    }
    const Operator Tn = spec.T.scaled(1.0 / opn.value);
    const AllRadii ar = all_radii(spec.space, Tn, cfg);
    int passes = 0;
    for (int i = 0; i < random_count; ++i) {
      detail::Rng rng(o.seed, 7000 + std::uint64_t(i));
      std::vector<double> raw(spec.space.dim());
      for (double& t : raw) t = rng.gaussian();
      Vector x = Vector::real(raw);
      const double n = norm(spec.space, x);
      for (cplx& e : x.entries) e /= n;
      const Theorem1Certificate cert =
          build_certificate_thm1(spec.space, Tn, x, grid, ar.abs_num_radius.value);
      if (ar.num_radius.value >= cert.best_bound - 1e-6) ++passes;
    }
    JsonOut j;
    j.begin_object();
    j.key("random_witnesses");
    j.value(random_count);
    j.key("passes");
    j.value(passes);
    j.key("all_pass");
    j.value(passes == random_count);
    j.end_object();
    write_output(o, j.str());
    return passes == random_count ? kExitOk : kExitCheckFailed;
  }

  const RadiusEstimate opn = op_norm(spec.space, spec.T, cfg);
  if (!(opn.value > 0.0)) {
    throw SpecParseError("certify: operator is (numerically) zero");
  }
  const Operator Tn = spec.T.scaled(1.0 / opn.value);

  Vector x;
  if (witness == "file") {
    std::ifstream in(witness_file);
    if (!in) throw SpecParseError("cannot open witness file: " + witness_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    x = parse_vector_json(ss.str(), Field::Real);
    const double n = norm(spec.space, x);
    if (!(n > 0.0)) throw SpecParseError("witness file: zero vector");
    for (cplx& e : x.entries) e /= n;
  } else {
    x = abs_num_radius(spec.space, Tn, cfg).witness;
  }

  CertifyOutcome out = certify_once(spec.space, Tn, x, grid, cfg);
  if (!(out.v_ge_bound && out.thm1)) {
    // Restart escalation before declaring an invariant failure.
    out = certify_once(spec.space, Tn, x, grid,
                       cfg.with_restarts(cfg.restarts * 4));
  }

  JsonOut j;
  j.begin_object();
  j.key("p");
  j.value(spec.space.p());
  j.key("flipped");
  j.value(out.cert.flipped);
  j.key("beta0");
  j.value(out.cert.beta0);
  j.key("beta");
  j.value(out.cert.beta);
  j.key("a");
  j.value(out.cert.a);
  j.key("eps");
  j.value(out.cert.eps);
  j.key("A");
  j.begin_array();
  for (std::size_t i : out.cert.A) j.value(i);
  j.end_array();
  j.key("B");
  j.begin_array();
  for (std::size_t i : out.cert.B) j.value(i);
  j.end_array();
  j.key("x");
  emit_vector(j, out.cert.x);
  j.key("samples");
  j.begin_array();
  for (const auto& [t, b] : out.cert.samples) {
    j.begin_array();
    j.value(t);
    j.value(b);
    j.end_array();
  }
  j.end_array();
  j.key("best_bound");
  j.value(out.cert.best_bound);
  j.key("v_estimate");
  j.value(out.v_est);
  j.key("absv_estimate");
  j.value(out.absv_est);
  j.key("checks");
  j.begin_object();
  j.key("v_ge_bound");
  j.value(out.v_ge_bound);
  j.key("thm1");
  j.value(out.thm1);
  j.end_object();
  j.end_object();
  write_output(o, j.str());
  return out.v_ge_bound && out.thm1 ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------- complexify

int run_complexify(const std::string& spec_path, const CommonOpts& o) {
  const OperatorSpec spec = load_operator_spec(spec_path);
  if (spec.T.field != Field::Real) {
    throw SpecParseError("complexify needs a real operator spec");
  }
  const SolverConfig cfg = solver_config(o);
  const Operator Tc = complexify(spec.T);
  const RadiusEstimate opn = op_norm(spec.space, spec.T, cfg);
  SolverConfig cfg_c = cfg;
  cfg_c.warm_starts.push_back(opn.witness);
  const RadiusEstimate opn_c = op_norm(spec.space, Tc, cfg_c);
  const RadiusEstimate v_c = num_radius(spec.space, Tc, cfg);
  const bool embed_ok = opn.value <= opn_c.value + 1e-7;

  JsonOut j;
  j.begin_object();
  j.key("op_norm_T");
  j.value(opn.value);
  j.key("op_norm_Tc");
  j.value(opn_c.value);
  j.key("num_radius_Tc");
  j.value(v_c.value);
  j.key("embed_ok");
  j.value(embed_ok);
  j.end_object();
  write_output(o, j.str());
  return embed_ok ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------- index

int run_index(double p, std::size_t m, std::vector<double> weights,
              const std::string& field_s, std::size_t budget_random,
              std::size_t budget_skew, std::size_t budget_permdiff,
              const CommonOpts& o) {
  if (weights.empty()) weights.assign(m, 1.0);
  const LpSpace space(p, std::move(weights));
  const Field field = field_s == "complex" ? Field::Complex : Field::Real;
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.random_candidates = budget_random;
  cfg.skew_candidates = budget_skew;
  cfg.permdiff_candidates = budget_permdiff;
  const IndexEstimate est = estimate_index(space, field, cfg);

  JsonOut j;
  j.begin_object();
  j.key("p");
  j.value(est.p);
  j.key("m");
  j.value(est.m);
  j.key("field");
  j.value(field_s);
  j.key("estimate");
  j.value(est.estimate);
  j.key("candidates");
  j.value(est.candidates);
  j.key("seed");
  j.value(static_cast<long long>(est.seed));
  j.key("weights");
  j.begin_array();
  for (double w : est.weights) j.value(w);
  j.end_array();
  j.key("best_T");
  emit_matrix(j, est.best_T);
  j.end_object();
  write_output(o, j.str());
  return kExitOk;
}

// ------------------------------------------------------------- sweep

int run_sweep(const std::vector<double>& ps, const std::vector<std::size_t>& ms,
              const std::string& field_s, std::size_t random_candidates,
              std::size_t skew_candidates, std::size_t permdiff_candidates,
              const CommonOpts& o) {
  const Field field = field_s == "complex" ? Field::Complex : Field::Real;
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.random_candidates = random_candidates;
  cfg.skew_candidates = skew_candidates;
  cfg.permdiff_candidates = permdiff_candidates;
  const std::vector<SweepRow> rows = sweep(ps, ms, field, cfg);

  std::ostringstream csv;
  csv << "p,m,estimate,mp,floor";
  for (const SweepRow& r : rows) {
    csv << "\n"
        << fmt_double(r.est.p) << "," << r.est.m << ","
        << fmt_double(r.est.estimate) << "," << fmt_double(r.mp) << ","
        << fmt_double(r.floor);
  }
  write_output(o, csv.str());
  return kExitOk;
}

// ------------------------------------------------------------ verify

struct CheckResult {
  std::string name;
  long count = 0;
  long failures = 0;
};

Operator random_real_op(std::size_t m, detail::Rng& rng) {
  Operator T = Operator::zero(m, Field::Real);
  for (cplx& e : T.data) e = {rng.gaussian(), 0.0};
  return T;
}

Vector random_real_unit(const LpSpace& space, detail::Rng& rng) {
  std::vector<double> raw(space.dim());
  for (double& t : raw) t = rng.gaussian();
  Vector x = Vector::real(raw);
  const double n = norm(space, x);
  for (cplx& e : x.entries) e /= n;
  return x;
}

Vector random_complex_unit(const LpSpace& space, detail::Rng& rng) {
  Vector x = Vector::zeros(space.dim(), Field::Complex);
  for (cplx& e : x.entries) e = {rng.gaussian(), rng.gaussian()};
  const double n = norm(space, x);
  for (cplx& e : x.entries) e /= n;
  return x;
}

int run_verify(bool quick, const CommonOpts& o) {
  const std::vector<double> p_set = {1.3, 1.7, 2.5, 4.0};
  SolverConfig scfg = solver_config(o);
  scfg.restarts = quick ? 12 : 24;
  scfg.threads = 1;  // outer corpus loops own the parallelism

  std::vector<CheckResult> checks;

  // Ordering + the (M_p/6) lower bound + certificates on a shared corpus.
  {
    const long n = quick ? 30 : 100;
    std::vector<int> fail_ord(n, 0), fail_thm1(n, 0), fail_cert(n, 0);
    detail::parallel_for(std::size_t(n), o.threads, [&](std::size_t i) {
      detail::Rng rng(o.seed, 100 + i);
      const std::size_t m = 2 + i % 4;
      const double p = p_set[i % p_set.size()];
      const LpSpace space = LpSpace::uniform(m, p);
      const Operator T = random_real_op(m, rng);
      const AllRadii ar = all_radii(space, T, scfg);
      const double mp = compute_Mp(p).value;
      if (!(ar.num_radius.value <= ar.abs_num_radius.value + 1e-7 &&
            ar.abs_num_radius.value <= ar.op_norm.value + 1e-7)) {
        fail_ord[i] = 1;
      }
      if (!(ar.num_radius.value >=
            (mp / 6.0) * ar.abs_num_radius.value - 1e-7)) {
        fail_thm1[i] = 1;
      }
      if (ar.op_norm.value > 0.0) {
        const Operator Tn = T.scaled(1.0 / ar.op_norm.value);
        const Vector x = ar.abs_num_radius.witness;
        const Theorem1Certificate cert = build_certificate_thm1(
            space, Tn, x, default_t_grid(p),
            ar.abs_num_radius.value / ar.op_norm.value);
        if (!(ar.num_radius.value / ar.op_norm.value >=
              cert.best_bound - 1e-6)) {
          fail_cert[i] = 1;
        }
      }
    });
    CheckResult ord{"ordering", n, 0}, thm1{"theorem1", n, 0},
        cert{"certificate", n, 0};
    for (long i = 0; i < n; ++i) {
      ord.failures += fail_ord[i];
      thm1.failures += fail_thm1[i];
      cert.failures += fail_cert[i];
    }
    checks.push_back(ord);
    checks.push_back(thm1);
    checks.push_back(cert);
  }

  // lambda-inequality triples.
  {
    const long n = quick ? 100 : 300;
    std::vector<int> fails(n, 0);
    detail::parallel_for(std::size_t(n), o.threads, [&](std::size_t i) {
      detail::Rng rng(o.seed, 2000 + i);
      const std::size_t m = 2 + i % 3;
      const double p = p_set[i % p_set.size()];
      const LpSpace space = LpSpace::uniform(m, p);
      Operator T = random_real_op(m, rng);
      const RadiusEstimate opn = op_norm(space, T, scfg);
      if (!(opn.value > 0.0)) return;
      T = T.scaled(1.0 / opn.value);
      const Vector x = random_real_unit(space, rng);
      const double v = num_radius(space, T, scfg).value;
      const double lambda = rng.uniform(-1.0, 10.0);
      if (!verify_lskf(space, T, x, lambda, v).holds) fails[i] = 1;
    });
    CheckResult c{"lskf", n, 0};
    for (int f : fails) c.failures += f;
    checks.push_back(c);
  }

  // Complexification chain probes.
  {
    const long n = quick ? 100 : 300;
    std::vector<int> fails(n, 0);
    detail::parallel_for(std::size_t(n), o.threads, [&](std::size_t i) {
      detail::Rng rng(o.seed, 3000 + i);
      const std::size_t m = 2 + i % 3;
      const double p = p_set[i % p_set.size()];
      const LpSpace space = LpSpace::uniform(m, p);
      const Operator T = random_real_op(m, rng);
      const Vector x = random_complex_unit(space, rng);
      if (!verify_thm2_chain(space, T, x).chain_ok) fails[i] = 1;
    });
    CheckResult c{"thm2_chain", n, 0};
    for (int f : fails) c.failures += f;
    checks.push_back(c);
  }

  // Full corollary chain (includes complex solves).
  {
    const long n = quick ? 8 : 20;
    std::vector<int> fails(n, 0);
    detail::parallel_for(std::size_t(n), o.threads, [&](std::size_t i) {
      detail::Rng rng(o.seed, 4000 + i);
      const std::size_t m = 2 + i % 3;
      const double p = p_set[i % p_set.size()];
      const LpSpace space = LpSpace::uniform(m, p);
      const Operator T = random_real_op(m, rng);
      if (!verify_corollaries(space, T, scfg).all_ok) fails[i] = 1;
    });
    CheckResult c{"corollaries", n, 0};
    for (int f : fails) c.failures += f;
    checks.push_back(c);
  }

  // 2-d oracle agreement.
  {
    const long n = quick ? 6 : 12;
    const std::size_t resolution = quick ? 100000 : 200000;
    std::vector<int> fails(n, 0);
    for (long i = 0; i < n; ++i) {
      detail::Rng rng(o.seed, 5000 + std::uint64_t(i));
      const double p = p_set[i % p_set.size()];
      const LpSpace space = LpSpace::uniform(2, p);
      const Operator T = random_real_op(2, rng);
      const Brute2dOracle oracle(space, resolution, o.threads);
      const AllRadii ar = all_radii(space, T, scfg);
      const double tol = 1e-4;
      if (std::abs(ar.op_norm.value - oracle.value(T, Objective::OpNorm)) > tol ||
          std::abs(ar.num_radius.value -
                   oracle.value(T, Objective::NumRadius)) > tol ||
          std::abs(ar.abs_num_radius.value -
                   oracle.value(T, Objective::AbsNumRadius)) > tol) {
        fails[i] = 1;
      }
    }
    CheckResult c{"oracle_2d", n, 0};
    for (int f : fails) c.failures += f;
    checks.push_back(c);
  }

  JsonOut j;
  j.begin_object();
  j.key("seed");
  j.value(static_cast<long long>(o.seed));
  j.key("quick");
  j.value(quick);
  j.key("checks");
  j.begin_array();
  bool all_pass = true;
  for (const CheckResult& c : checks) {
    j.begin_object();
    j.key("name");
    j.value(c.name);
    j.key("count");
    j.value(c.count);
    j.key("failures");
    j.value(c.failures);
    j.key("pass");
    j.value(c.failures == 0);
    j.end_object();
    if (c.failures != 0) all_pass = false;
  }
  j.end_array();
  j.key("all_pass");
  j.value(all_pass);
  j.end_object();
  write_output(o, j.str());
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius laboratory for finite weighted L_p spaces"};
  app.require_subcommand(1);

  // mp
  CommonOpts mp_o;
  std::vector<double> mp_ps;
  double mp_tol = 1e-12;
  CLI::App* mp_cmd = app.add_subcommand("mp", "Compute M_p and derived bounds");
  mp_cmd->add_option("--p", mp_ps, "Exponent(s) p in (1, inf)")->required();
  mp_cmd->add_option("--mp-tol", mp_tol, "Absolute accuracy in t");
  add_common(mp_cmd, mp_o);

  // radius
  CommonOpts rad_o;
  std::string rad_spec, rad_obj = "all";
  CLI::App* rad_cmd =
      app.add_subcommand("radius", "Estimate ||T||, v(T), |v|(T)");
  rad_cmd->add_option("--spec", rad_spec, "Operator spec file (JSON)")
      ->required();
  rad_cmd->add_option("--objective", rad_obj, "norm|v|absv|all")
      ->check(CLI::IsMember({"norm", "v", "absv", "all"}));
  add_common(rad_cmd, rad_o);

  // certify
  CommonOpts cert_o;
  std::string cert_spec, cert_witness = "solve", cert_witness_file;
  int cert_tpoints = 0, cert_random = 0;
  double cert_tmax = 0.0;
  CLI::App* cert_cmd = app.add_subcommand(
      "certify", "Build and check the numerical-radius lower-bound certificate");
  cert_cmd->add_option("--spec", cert_spec, "Operator spec file (JSON)")
      ->required();
  cert_cmd->add_option("--witness", cert_witness, "solve|file")
      ->check(CLI::IsMember({"solve", "file"}));
  cert_cmd->add_option("--witness-file", cert_witness_file,
                       "Witness vector (JSON array), used with --witness file");
  cert_cmd->add_option("--t-points", cert_tpoints, "t-grid size");
  cert_cmd->add_option("--t-max", cert_tmax, "t-grid upper end");
  cert_cmd->add_option("--random", cert_random,
                       "Certify this many random unit witnesses instead");
  add_common(cert_cmd, cert_o);

  // complexify
  CommonOpts cx_o;
  std::string cx_spec;
  CLI::App* cx_cmd = app.add_subcommand(
      "complexify", "Compare a real operator with its complex extension");
  cx_cmd->add_option("--spec", cx_spec, "Operator spec file (JSON)")
      ->required();
  add_common(cx_cmd, cx_o);

  // index
  CommonOpts idx_o;
  double idx_p = 2.0;
  std::size_t idx_m = 2;
  std::vector<double> idx_w;
  std::string idx_field = "real";
  std::size_t idx_random = 256, idx_skew = 64, idx_permdiff = 64;
  CLI::App* idx_cmd = app.add_subcommand(
      "index", "Upper estimate of the numerical index by candidate search");
  idx_cmd->add_option("--p", idx_p, "Exponent")->required();
  idx_cmd->add_option("--m", idx_m, "Dimension")->required();
  idx_cmd->add_option("--weights", idx_w, "Atom weights (default uniform)");
  idx_cmd->add_option("--field", idx_field, "real|complex")
      ->check(CLI::IsMember({"real", "complex"}));
  idx_cmd->add_option("--candidates", idx_random, "Random dense candidates");
  idx_cmd->add_option("--skew", idx_skew, "Skew-symmetric candidates");
  idx_cmd->add_option("--permdiff", idx_permdiff,
                      "Signed permutation-difference candidates");
  add_common(idx_cmd, idx_o);

  // sweep
  CommonOpts sw_o;
  std::vector<double> sw_ps;
  std::vector<std::size_t> sw_ms;
  std::string sw_field = "real";
  std::size_t sw_random = 256, sw_skew = 64, sw_permdiff = 64;
  CLI::App* sw_cmd =
      app.add_subcommand("sweep", "Index estimates over a (p, m) grid (CSV)");
  sw_cmd->add_option("--p", sw_ps, "Exponent(s)")->required();
  sw_cmd->add_option("--m", sw_ms, "Dimension(s)")->required();
  sw_cmd->add_option("--field", sw_field, "real|complex")
      ->check(CLI::IsMember({"real", "complex"}));
  sw_cmd->add_option("--candidates", sw_random, "Random dense candidates");
  sw_cmd->add_option("--skew", sw_skew, "Skew-symmetric candidates");
  sw_cmd->add_option("--permdiff", sw_permdiff,
                     "Signed permutation-difference candidates");
  add_common(sw_cmd, sw_o);

  // verify
  CommonOpts vf_o;
  bool vf_quick = false;
  CLI::App* vf_cmd =
      app.add_subcommand("verify", "Run the full property corpus");
  vf_cmd->add_flag("--quick", vf_quick, "Smaller corpus");
  add_common(vf_cmd, vf_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mp_cmd->parsed()) return run_mp(mp_ps, mp_tol, mp_o);
    if (rad_cmd->parsed()) return run_radius(rad_spec, rad_obj, rad_o);
    if (cert_cmd->parsed()) {
      return run_certify(cert_spec, cert_witness, cert_witness_file,
                         cert_tpoints, cert_tmax, cert_random, cert_o);
    }
    if (cx_cmd->parsed()) return run_complexify(cx_spec, cx_o);
    if (idx_cmd->parsed()) {
      return run_index(idx_p, idx_m, idx_w, idx_field, idx_random, idx_skew,
                       idx_permdiff, idx_o);
    }
    if (sw_cmd->parsed()) {
      return run_sweep(sw_ps, sw_ms, sw_field, sw_random, sw_skew, sw_permdiff,
                       sw_o);
    }
    if (vf_cmd->parsed()) return run_verify(vf_quick, vf_o);
  } catch (const SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
