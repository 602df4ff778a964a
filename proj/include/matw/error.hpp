// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MATW_ERROR_HPP
#define MATW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace matw {

// Values mirror matw_status in matw.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kNotPsd = 2,
  kSingularWeight = 3,
  kDimensionMismatch = 4,
  kIo = 5,
  kParse = 6,
  kLimitExceeded = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace matw

#endif  // MATW_ERROR_HPP
