// Copyright 2026 The NoisyFair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISYFAIR_STATUS_H_
#define NOISYFAIR_STATUS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace noisyfair {

enum class ErrorCode {
  kDimensionMismatch,
  kProbabilityOutOfRange,
  kNegativeUtility,
  kRowSumViolation,
  kInvalidRanking,
  kInvalidArgument,
  kZeroGroupSize,
  kPhiOutOfRange,
  kDeltaOutOfRange,
  kPsiAssumptionViolated,
  kNumericalFailure,
  kInfeasible,
  kTooLarge,
  kNotDecomposable,
  kIterationCapExceeded,
  kStuck,
  kEmptyNoisyGroup,
  kEtaTooLarge,
  kFamilyConditionViolated,
  kEmptyCheckpointSet,
  kConfigInvalid,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the library is reported through this exception type; the
// code identifies the failure class so callers (and the CLI exit-code logic)
// can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace noisyfair

#endif  // NOISYFAIR_STATUS_H_
