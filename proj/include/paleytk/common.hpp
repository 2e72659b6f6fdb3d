#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace paleytk {

inline constexpr const char* kToolkitVersion = "0.1.0";

using u128 = unsigned __int128;
using i128 = __int128;

/// Domain error with a stable machine-readable name ("NotPrime",
/// "BadCongruence", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

[[noreturn]] inline void raise(const char* name, const std::string& message) {
  throw Error(name, message);
}

}  // namespace paleytk
