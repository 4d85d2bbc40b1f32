#pragma once

#include <stdexcept>
#include <string>

namespace filadyn {

enum class ErrorCode {
  InvalidArgument,
  Domain,              // singular point of a coordinate map or a division by zero
  ValidityCondition,   // closed-form branch used outside the condition it was derived under
  NonConvergence,
  DegenerateFit,
  Transcription,       // internal consistency check on a printed formula failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace filadyn
