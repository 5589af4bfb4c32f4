#pragma once

#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include "puritylab/linalg.hpp"

namespace puritylab {

/// Full-precision decimal form of a double: 17 significant digits, which
/// round-trips exactly. Used for every number we emit.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal deterministic JSON emitter. Fields appear exactly in insertion
// order and numbers go through format_double, so identical inputs produce
// byte-identical documents regardless of library or locale.
class JsonWriter {
 public:
  JsonWriter& begin_object() {
    separator();
    out_ += '{';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_object() {
    out_ += '}';
    fresh_ = false;
    return *this;
  }
  JsonWriter& begin_array() {
    separator();
    out_ += '[';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_array() {
    out_ += ']';
    fresh_ = false;
    return *this;
  }
  JsonWriter& key(const std::string& k) {
    separator();
    append_string(k);
    out_ += ':';
    fresh_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    separator();
    out_ += format_double(v);
    fresh_ = false;
    return *this;
  }
  JsonWriter& value(int v) { return value_integral(static_cast<long long>(v)); }
  JsonWriter& value(long v) { return value_integral(static_cast<long long>(v)); }
  JsonWriter& value(long long v) { return value_integral(v); }
  JsonWriter& value(std::uint64_t v) {
    separator();
    out_ += std::to_string(v);
    fresh_ = false;
    return *this;
  }
  JsonWriter& value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    fresh_ = false;
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    separator();
    append_string(v);
    fresh_ = false;
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  /// Splices a pre-serialized JSON fragment.
  JsonWriter& raw(const std::string& json) {
    separator();
    out_ += json;
    fresh_ = false;
    return *this;
  }

  const std::string& str() const { return out_; }

 private:
  JsonWriter& value_integral(long long v) {
    separator();
    out_ += std::to_string(v);
    fresh_ = false;
    return *this;
  }
  void separator() {
    if (!fresh_ && !out_.empty()) {
      const char last = out_.back();
      if (last != '{' && last != '[' && last != ':') out_ += ',';
    }
    fresh_ = false;
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  bool fresh_ = true;
};

/// Matrix as {"re": [[...]], "im": [[...]]} row-major arrays.
inline std::string matrix_json(const Matrix& m) {
  JsonWriter w;
  w.begin_object();
  w.key("rows").value(static_cast<long long>(m.rows()));
  w.key("cols").value(static_cast<long long>(m.cols()));
  for (int part = 0; part < 2; ++part) {
    w.key(part == 0 ? "re" : "im").begin_array();
    for (Index i = 0; i < m.rows(); ++i) {
      w.begin_array();
      for (Index j = 0; j < m.cols(); ++j)
        w.value(part == 0 ? m(i, j).real() : m(i, j).imag());
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();
  return w.str();
}

}  // namespace puritylab
