// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vscan {

enum class ErrorCode {
  InvalidArgument,
  EmptyScene,
  EmptyInput,
  VectorBudgetExceeded,
  OutOfVerticalRange,
  MismatchedOrigin,
  DegenerateObb,
  ParseError,
  MissingMesh,
  DuplicateId,
  IoError,
  IncompleteInputs,
  StyleError,
  NoFreePosition,
  UnknownPreset,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C boundary can translate exceptions into status values without string
// matching.
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

}  // namespace vscan
