#pragma once

#include <stdexcept>
#include <string>

namespace trilat {

enum class ErrorKind {
  ConcentricIdentical,
  DegenerateDirection,
  DegenerateTriangle,
  DegenerateArrangement,
  PreconditionViolation,
  NoBracket,
  BoundsTooSmall,
  NoiseRejection,
  MissingIntersection,
  SchemaError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // geometry failures share one CLI exit code
  bool is_degenerate_geometry() const {
    return kind_ == ErrorKind::ConcentricIdentical || kind_ == ErrorKind::DegenerateDirection ||
           kind_ == ErrorKind::DegenerateTriangle || kind_ == ErrorKind::DegenerateArrangement;
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace trilat
