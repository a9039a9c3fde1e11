#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace sorr {

// An index, rank or count lies outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

// A scalar or configuration parameter violates its precondition.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Matrix/vector dimensions disagree.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// A command or registry name is not recognised.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A data file is missing, unreadable or holds no usable rows.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; `line()` is 1-based (0 when not applicable).
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Training diverged (non-finite objective) at a given epoch.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, long epoch);
  long epoch() const { return epoch_; }

 private:
  long epoch_;
};

// Non-fatal diagnostics go through a replaceable sink (stderr by default).
using WarningSink = std::function<void(const std::string&)>;
void setWarningSink(WarningSink sink);
void warn(const std::string& message);

}  // namespace sorr
