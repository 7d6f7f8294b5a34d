#pragma once

#include <stdexcept>
#include <string>

namespace icbargain {

enum class ErrorCode {
  kDomain,             // argument outside the function's domain
  kPrecondition,       // e.g. a strong-only routine called on a weak channel
  kNotEssential,       // no feasible point strictly dominates the disagreement point
  kHypothesisViolated, // disagreement point touches an upper constraint
  kNotRegular,
  kUnsupportedRegime,
  kRoundLimit,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace icbargain
