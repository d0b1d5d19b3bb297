#pragma once

#include <stdexcept>
#include <string>

namespace ksum {

enum class ErrorCode {
  Config = 1,      // bad precision or option
  Domain = 2,      // argument outside the function's domain
  Range = 3,       // index beyond what was generated
  Numerical = 4,   // iteration failed to converge
  DegenerateTerm = 5,
  Fit = 6,
  Parse = 7,
  Io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ksum
