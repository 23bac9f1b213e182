#pragma once

#include <stdexcept>
#include <string>

namespace nlctc {

// Numeric values mirror nlctc_status in nlctc.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kArity = 2,
  kParse = 3,
  kInvariant = 4,
  kNotParity = 5,
  kParadox = 6,
  kNoConvergence = 7,
  kDimension = 8,
  kNotDensity = 9,
  kNotUnitary = 10,
  kNotPermutation = 11,
  kIo = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nlctc
