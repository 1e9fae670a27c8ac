#pragma once

#include <optional>
#include <string>
#include <type_traits>

#include "numindex/lp_space.hpp"
#include "numindex/operator.hpp"

namespace numindex {

/// Thrown when an operator spec file fails to parse or violates an invariant;
/// the message carries a field diagnostic.
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk operator description: {"p": ..., "weights": [...],
/// "field": "real"|"complex", "matrix": [[...], ...]}. Complex matrix entries
/// are [re, im] pairs.
struct OperatorSpec {
  LpSpace space;
  Operator T;
};

OperatorSpec load_operator_spec(const std::string& path);
OperatorSpec parse_operator_spec(const std::string& json_text);

/// Vector from a JSON array: numbers for real, [re, im] pairs for complex.
Vector parse_vector_json(const std::string& json_text, Field field);

/// Shortest spelling of v with 17 significant digits ("%.17g").
std::string fmt_double(double v);

/// Minimal ordered JSON emitter; fields appear in insertion order and floats
/// go through fmt_double, so identical inputs give byte-identical output.
class JsonOut {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }
  void key(const std::string& k);
  void value(double v);
  void value(long long v);
  void value(bool v);
  template <typename T>
    requires(std::is_integral_v<T> && !std::is_same_v<T, bool> &&
             !std::is_same_v<T, long long>)
  void value(T v) {
    value(static_cast<long long>(v));
  }
  void value(const std::string& v);
  void value(const char* v) { value(std::string(v)); }
  void raw(const std::string& text);

  const std::string& str() const { return out_; }

 private:
  void sep();
  void open(char c);
  void close(char c);
  std::string out_;
  bool need_comma_ = false;
};

}  // namespace numindex
