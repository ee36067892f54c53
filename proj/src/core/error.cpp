/*
 * Copyright 2026 The fairaudit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairaudit/error.hpp"

namespace fairaudit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kUnknownGroup: return "UnknownGroup";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kInvalidSchema: return "InvalidSchema";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kEmptyEvaluationSet: return "EmptyEvaluationSet";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kTooFewGroups: return "TooFewGroups";
    case ErrorCode::kDegenerateJoint: return "DegenerateJoint";
    case ErrorCode::kNoSupportedGroups: return "NoSupportedGroups";
    case ErrorCode::kNoPrivilegedSamples: return "NoPrivilegedSamples";
    case ErrorCode::kNoUnprivilegedSamples: return "NoUnprivilegedSamples";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kEmptyCell: return "EmptyCell";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kInvalidFraction: return "InvalidFraction";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kMissingProfileRow: return "MissingProfileRow";
    case ErrorCode::kMismatchedKeys: return "MismatchedKeys";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kUnmatchedId: return "UnmatchedId";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoFailure: return "IoFailure";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  return code == ErrorCode::kIoFailure ? ErrorCategory::kIo
                                       : ErrorCategory::kValidation;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fairaudit
