#pragma once

#include <stdexcept>
#include <string>

namespace frdm {

// Error taxonomy maps onto CLI exit codes:
//   InputError      -> 1  (bad files, bad config, guarded refusals)
//   DegenerateError -> 2  (unsatisfiable or degenerate problem instances)
//   InternalError   -> 3  (precondition/invariant breaches)
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class DegenerateError : public std::runtime_error {
public:
  explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::runtime_error {
public:
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void internal_check(bool ok, const std::string& msg) {
  if (!ok) throw InternalError(msg);
}

}  // namespace frdm
