#include "sorr/errors.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace sorr {

ParseError::ParseError(const std::string& what, std::size_t line)
    : DataError(line > 0 ? "line " + std::to_string(line) + ": " + what
                                  : what),
      line_(line) {}

NumericError::NumericError(const std::string& what, long epoch)
    : std::runtime_error(what + " (epoch " + std::to_string(epoch) + ")"),
      epoch_(epoch) {}

namespace {
std::mutex& sinkMutex() {
  static std::mutex m;
  return m;
}
WarningSink& sinkRef() {
  static WarningSink sink = [](const std::string& msg) {
    std::clog << "warning: " << msg << '\n';
  };
  return sink;
}
}  // namespace

void setWarningSink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(sinkMutex());
  sinkRef() = std::move(sink);
}

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(sinkMutex());
  if (sinkRef()) {
    sinkRef()(message);
  }
}

}  // namespace sorr
