#pragma once

#include <stdexcept>
#include <string>

namespace fsgrid {

// Error categories; the CLI maps each category to a distinct exit code.
enum class ErrorCategory {
  io,
  parse,
  schema,
  degenerate,
  upstream_missing,
  parameter,
  internal,
};

inline const char* category_name(ErrorCategory cat) {
  switch (cat) {
    case ErrorCategory::io: return "io";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::schema: return "schema";
    case ErrorCategory::degenerate: return "degenerate";
    case ErrorCategory::upstream_missing: return "upstream-missing";
    case ErrorCategory::parameter: return "parameter";
    case ErrorCategory::internal: return "internal";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), category_(cat) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorCategory::io, m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorCategory::parse, m) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error(ErrorCategory::schema, m) {}
};
struct BadParameters : Error {
  explicit BadParameters(const std::string& m) : Error(ErrorCategory::parameter, m) {}
};

// All sample values equal; no finite bandwidth exists.
struct DegenerateSample : Error {
  explicit DegenerateSample(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};
struct InsufficientData : Error {
  explicit InsufficientData(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};
struct DegenerateSeries : Error {
  explicit DegenerateSeries(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};
struct EmptyMatrix : Error {
  explicit EmptyMatrix(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};
struct EmptyAxis : Error {
  explicit EmptyAxis(const std::string& m) : Error(ErrorCategory::parameter, m) {}
};
struct InsufficientPoints : Error {
  explicit InsufficientPoints(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};
struct DegenerateAbscissa : Error {
  explicit DegenerateAbscissa(const std::string& m) : Error(ErrorCategory::degenerate, m) {}
};

struct QuadratureFailure : Error {
  explicit QuadratureFailure(const std::string& m) : Error(ErrorCategory::internal, m) {}
};
struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& m) : Error(ErrorCategory::internal, m) {}
};

struct ModeOutOfRange : Error {
  explicit ModeOutOfRange(const std::string& m) : Error(ErrorCategory::parameter, m) {}
};
struct UnknownMeasure : Error {
  explicit UnknownMeasure(const std::string& m) : Error(ErrorCategory::parameter, m) {}
};
struct UnknownRegion : Error {
  explicit UnknownRegion(const std::string& m) : Error(ErrorCategory::parameter, m) {}
};
struct UnknownLocation : Error {
  explicit UnknownLocation(const std::string& m) : Error(ErrorCategory::parameter, m) {}
};
struct MissingUpstream : Error {
  explicit MissingUpstream(const std::string& m) : Error(ErrorCategory::upstream_missing, m) {}
};

}  // namespace fsgrid
