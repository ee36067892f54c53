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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairaudit {

// Every failure the library reports carries one of these codes. The CLI maps
// them onto exit statuses through error_category().
enum class ErrorCode {
  kUnknownAttribute,
  kUnknownGroup,
  kUnknownClass,
  kInvalidSchema,
  kInvalidRecord,
  kDuplicateId,
  kEmptyDataset,
  kEmptyTable,
  kEmptyEvaluationSet,
  kNotNormalized,
  kTooFewGroups,
  kDegenerateJoint,
  kNoSupportedGroups,
  kNoPrivilegedSamples,
  kNoUnprivilegedSamples,
  kZeroDenominator,
  kEmptyCell,
  kInsufficientSamples,
  kInvalidFraction,
  kInvalidSpec,
  kMissingProfileRow,
  kMismatchedKeys,
  kMissingColumn,
  kUnknownLabel,
  kUnmatchedId,
  kEmptyFile,
  kSchemaMismatch,
  kParseError,
  kIoFailure,
};

enum class ErrorCategory { kValidation, kIo };

std::string_view error_code_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace fairaudit
