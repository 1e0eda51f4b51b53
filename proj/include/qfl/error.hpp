// Copyright 2026 The qfl Authors
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

#ifndef QFL_ERROR_HPP
#define QFL_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfl {

enum class ErrorCode {
    NotHermitian,
    NotADensityOperator,
    NotUnitary,
    NotPositive,
    DimensionMismatch,
    BadRank,
    NotAnEffect,
    BadCompleteness,
    NotInformationallyComplete,
    InconsistentSamples,
    NotAState,
    ZeroProbability,
    NotAProbability,
    NotAJoint,
    ZeroProbabilityData,
    NotEfficient,
    TooLarge,
    ImpossibleOutcome,
    InvalidArgument,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Domain error raised by every qfl operation. `stage` and `index` are set
/// when the failure can be localized (POVM tree stage, outcome, effect).
class QflError : public std::runtime_error {
   public:
    QflError(ErrorCode code, const std::string &message, std::optional<int> stage = std::nullopt,
             std::optional<int> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    /// The message without the code-name prefix that what() carries.
    const std::string &message() const noexcept { return message_; }
    std::optional<int> stage() const noexcept { return stage_; }
    std::optional<int> index() const noexcept { return index_; }

   private:
    ErrorCode code_;
    std::string message_;
    std::optional<int> stage_;
    std::optional<int> index_;
};

}  // namespace qfl

#endif
