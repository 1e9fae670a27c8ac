#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "numindex/spec_io.hpp"

using namespace numindex;
using doctest::Approx;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string("/tmp/numindex_test_") + name;
  std::ofstream f(path);
  f << text;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

#ifdef NUMINDEX_CLI
int run_cli(const std::string& args, const std::string& out_path) {
  const std::string cmd =
      std::string(NUMINDEX_CLI) + " " + args + " > " + out_path + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
#endif

}  // namespace

TEST_CASE("parse_operator_spec: real operator round trip") {
  const auto spec = parse_operator_spec(R"({
    "p": 3.0,
    "weights": [0.5, 0.5],
    "field": "real",
    "matrix": [[0.0, -1.0], [1.0, 0.0]]
  })");
  CHECK(spec.space.p() == 3.0);
  CHECK(spec.space.dim() == 2);
  CHECK(spec.T.field == Field::Real);
  CHECK(spec.T.data[1].real() == -1.0);
}

TEST_CASE("parse_operator_spec: complex entries are [re, im] pairs") {
  const auto spec = parse_operator_spec(R"({
    "p": 2.0,
    "weights": [1.0],
    "field": "complex",
    "matrix": [[[0.0, 1.0]]]
  })");
  CHECK(spec.T.field == Field::Complex);
  CHECK(spec.T.data[0] == cplx(0.0, 1.0));
}

TEST_CASE("parse_operator_spec: diagnostics name the offending field") {
  auto expect_mention = [](const std::string& text, const std::string& where) {
    try {
      parse_operator_spec(text);
      FAIL("expected SpecParseError");
    } catch (const SpecParseError& e) {
      CHECK(std::string(e.what()).find(where) != std::string::npos);
    }
  };
  expect_mention(R"({"weights": [1.0], "field": "real", "matrix": [[1.0]]})",
                 "p");
  expect_mention(R"({"p": 2.0, "field": "real", "matrix": [[1.0]]})",
                 "weights");
  expect_mention(
      R"({"p": 2.0, "weights": [1.0], "field": "quaternion", "matrix": [[1.0]]})",
      "field");
  expect_mention(
      R"({"p": 2.0, "weights": [1.0], "field": "real", "matrix": [[1.0, 2.0]]})",
      "matrix");
  expect_mention("{not json", "");
  expect_mention(
      R"({"p": 0.5, "weights": [1.0], "field": "real", "matrix": [[1.0]]})",
      "p");
}

TEST_CASE("parse_vector_json") {
  const Vector r = parse_vector_json("[1.0, -2.5]", Field::Real);
  CHECK(r.re(0) == 1.0);
  CHECK(r.re(1) == -2.5);
  const Vector c = parse_vector_json("[[1.0, 2.0]]", Field::Complex);
  CHECK(c.entries[0] == cplx(1.0, 2.0));
  CHECK_THROWS_AS(parse_vector_json("[\"x\"]", Field::Real), SpecParseError);
}

TEST_CASE("fmt_double and JsonOut: deterministic emission") {
  CHECK(fmt_double(0.1) == "0.10000000000000001");
  JsonOut j;
  j.begin_object();
  j.key("a");
  j.value(1.5);
  j.key("b");
  j.begin_array();
  j.value(true);
  j.value(std::size_t{3});
  j.value("s");
  j.end_array();
  j.end_object();
  CHECK(j.str() == R"({"a":1.5,"b":[true,3,"s"]})");
}

TEST_CASE("load_operator_spec: missing file") {
  CHECK_THROWS_AS(load_operator_spec("/tmp/numindex_no_such_file.json"),
                  SpecParseError);
}

#ifdef NUMINDEX_CLI

TEST_CASE("cli: mp subcommand prints the anchor value") {
  const std::string out = "/tmp/numindex_test_mp_out.txt";
  CHECK(run_cli("mp --p 3.0", out) == 0);
  CHECK(read_file(out).find("0.22708334621107") != std::string::npos);
}

TEST_CASE("cli: radius all enforces the ordering and exits 0") {
  const std::string spec = write_temp("rot.json", R"({
    "p": 3.0,
    "weights": [0.5, 0.5],
    "field": "real",
    "matrix": [[0.0, -1.0], [1.0, 0.0]]
  })");
  const std::string out = "/tmp/numindex_test_radius_out.txt";
  CHECK(run_cli("radius --spec " + spec + " --objective all --seed 1", out) ==
        0);
  const std::string text = read_file(out);
  CHECK(text.find("\"num_radius\"") != std::string::npos);
  CHECK(text.find("\"op_norm\"") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  const std::string out = "/tmp/numindex_test_err_out.txt";
  CHECK(run_cli("radius", out) == 2);                       // missing --spec
  CHECK(run_cli("nonsense", out) == 2);                     // unknown command
  CHECK(run_cli("mp --p 1.0", out) == 2);                   // p out of range
  const std::string bad = write_temp("bad.json", "{broken");
  CHECK(run_cli("radius --spec " + bad + " --objective norm", out) == 2);
}

TEST_CASE("cli: sweep emits the CSV header") {
  const std::string out = "/tmp/numindex_test_sweep_out.txt";
  CHECK(run_cli("sweep --p 2.0 --m 2 --candidates 8 --skew 4 --permdiff 4",
                out) == 0);
  CHECK(read_file(out).rfind("p,m,estimate,mp,floor", 0) == 0);
}

TEST_CASE("cli: certify on the rotation passes") {
  const std::string spec = write_temp("rot2.json", R"({
    "p": 3.0,
    "weights": [0.5, 0.5],
    "field": "real",
    "matrix": [[0.0, -1.0], [1.0, 0.0]]
  })");
  const std::string out = "/tmp/numindex_test_cert_out.txt";
  CHECK(run_cli("certify --spec " + spec + " --seed 2", out) == 0);
  CHECK(read_file(out).find("\"best_bound\"") != std::string::npos);
}

#endif  // NUMINDEX_CLI
