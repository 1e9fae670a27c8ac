#include "numindex/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace numindex {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw SpecParseError(where + ": expected a number");
  }
  return j.get<double>();
}

cplx entry_at(const json& j, Field field, const std::string& where) {
  if (field == Field::Real) {
    return {number_at(j, where), 0.0};
  }
  if (!j.is_array() || j.size() != 2) {
    throw SpecParseError(where + ": complex entries must be [re, im] pairs");
  }
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

OperatorSpec from_json(const json& j) {
  if (!j.is_object()) {
    throw SpecParseError("spec: top level must be a JSON object");
  }
  for (const char* k : {"p", "weights", "field", "matrix"}) {
    if (!j.contains(k)) {
      throw SpecParseError(std::string("spec: missing field '") + k + "'");
    }
  }
  const double p = number_at(j["p"], "p");
  if (!j["weights"].is_array() || j["weights"].empty()) {
    throw SpecParseError("weights: expected a non-empty array");
  }
  std::vector<double> w;
  for (std::size_t i = 0; i < j["weights"].size(); ++i) {
    w.push_back(number_at(j["weights"][i], "weights[" + std::to_string(i) + "]"));
  }
  if (!j["field"].is_string()) {
    throw SpecParseError("field: expected \"real\" or \"complex\"");
  }
  const std::string fs = j["field"].get<std::string>();
  Field field;
  if (fs == "real") {
    field = Field::Real;
  } else if (fs == "complex") {
    field = Field::Complex;
  } else {
    throw SpecParseError("field: expected \"real\" or \"complex\", got \"" +
                         fs + "\"");
  }

  const std::size_t m = w.size();
  if (!j["matrix"].is_array() || j["matrix"].size() != m) {
    throw SpecParseError("matrix: expected " + std::to_string(m) + " rows");
  }
  std::vector<cplx> data;
  data.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const json& row = j["matrix"][i];
    if (!row.is_array() || row.size() != m) {
      throw SpecParseError("matrix[" + std::to_string(i) + "]: expected " +
                           std::to_string(m) + " entries");
    }
    for (std::size_t k = 0; k < m; ++k) {
      data.push_back(entry_at(row[k], field,
                              "matrix[" + std::to_string(i) + "][" +
                                  std::to_string(k) + "]"));
    }
  }

  try {
    OperatorSpec spec{LpSpace(p, std::move(w)),
                      field == Field::Real
                          ? Operator{Field::Real, m, std::move(data)}
                          : Operator::complex(m, std::move(data))};
    spec.T.validate();
    return spec;
  } catch (const std::invalid_argument& e) {
    throw SpecParseError(std::string("spec: ") + e.what());
  }
}

}  // namespace

OperatorSpec load_operator_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecParseError("cannot open spec file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_operator_spec(ss.str());
}

OperatorSpec parse_operator_spec(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw SpecParseError("spec: invalid JSON");
  }
  return from_json(j);
}

Vector parse_vector_json(const std::string& json_text, Field field) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    throw SpecParseError("vector: expected a JSON array");
  }
  std::vector<cplx> e;
  for (std::size_t i = 0; i < j.size(); ++i) {
    e.push_back(entry_at(j[i], field, "vector[" + std::to_string(i) + "]"));
  }
  Vector v;
  v.field = field;
  v.entries = std::move(e);
  return v;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonOut::sep() {
  if (need_comma_) out_ += ',';
  need_comma_ = false;
}

void JsonOut::open(char c) {
  sep();
  out_ += c;
}

void JsonOut::close(char c) {
  out_ += c;
  need_comma_ = true;
}

void JsonOut::key(const std::string& k) {
  sep();
  out_ += '"';
  out_ += k;
  out_ += "\":";
}

void JsonOut::value(double v) {
  sep();
  out_ += fmt_double(v);
  need_comma_ = true;
}

void JsonOut::value(long long v) {
  sep();
  out_ += std::to_string(v);
  need_comma_ = true;
}

void JsonOut::value(bool v) {
  sep();
  out_ += v ? "true" : "false";
  need_comma_ = true;
}

void JsonOut::value(const std::string& v) {
  sep();
  out_ += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
  need_comma_ = true;
}

void JsonOut::raw(const std::string& text) {
  sep();
  out_ += text;
  need_comma_ = true;
}

}  // namespace numindex
