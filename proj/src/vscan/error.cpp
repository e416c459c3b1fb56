// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/error.hpp"

namespace vscan {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::VectorBudgetExceeded: return "VectorBudgetExceeded";
    case ErrorCode::OutOfVerticalRange: return "OutOfVerticalRange";
    case ErrorCode::MismatchedOrigin: return "MismatchedOrigin";
    case ErrorCode::DegenerateObb: return "DegenerateObb";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingMesh: return "MissingMesh";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::IncompleteInputs: return "IncompleteInputs";
    case ErrorCode::StyleError: return "StyleError";
    case ErrorCode::NoFreePosition: return "NoFreePosition";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
  }
  return "Unknown";
}

}  // namespace vscan
