#pragma once

#include <stdexcept>
#include <string>

namespace carrisk {

// All recoverable failures (bad input files, invalid configuration,
// violated preconditions) surface as carrisk::Error.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

}  // namespace carrisk
