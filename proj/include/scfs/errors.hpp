// Exception hierarchy; every library error derives from scfs::Error.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scfs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violation: bad shape, non-finite entries, out-of-range argument.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Linear solve failed; carries the regression weights active at the time.
class SolveError : public Error {
 public:
  SolveError(const std::string& what, double alpha, double beta)
      : Error(what), alpha(alpha), beta(beta) {}

  double alpha;
  double beta;
};

// Objective became non-finite; carries the trace up to and including the bad step.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::vector<double> objective_trace,
                  std::vector<double> penalized_trace)
      : Error(what),
        objective_trace(std::move(objective_trace)),
        penalized_trace(std::move(penalized_trace)) {}

  std::vector<double> objective_trace;
  std::vector<double> penalized_trace;
};

// Malformed input file; row/column are 1-based, 0 means not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what), row(row), column(column) {}

  std::size_t row;
  std::size_t column;
};

// Report file is valid JSON but does not match the expected layout or version.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scfs
