#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Error categories shared with the C API (see bergman_capi.h).
enum class ErrorCode {
  InvalidArgument = 1,  // parameter outside its admissible range
  Domain = 2,           // point outside the domain of the operation
  NotConverged = 3,     // iterative/adaptive computation hit its cap
  IllConditioned = 4,   // linear solve residual above threshold
  Io = 5,               // malformed serialized record
  UnknownName = 6,      // unknown selector / suite / symbol name
  Internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bergman
