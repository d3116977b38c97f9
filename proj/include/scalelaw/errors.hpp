#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace scalelaw {

// Every recoverable failure in the library throws Error. `kind` is a stable
// machine-readable tag (e.g. "row", "no_convergence"); `what()` carries the
// human-readable detail. The CLI forwards both on stderr as JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& message) {
  throw Error(std::move(kind), message);
}

inline void require(bool ok, const char* kind, const std::string& message) {
  if (!ok) throw Error(kind, message);
}

}  // namespace scalelaw
