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

#include "qfl/error.hpp"

namespace qfl {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotADensityOperator:
            return "NotADensityOperator";
        case ErrorCode::NotUnitary:
            return "NotUnitary";
        case ErrorCode::NotPositive:
            return "NotPositive";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::BadRank:
            return "BadRank";
        case ErrorCode::NotAnEffect:
            return "NotAnEffect";
        case ErrorCode::BadCompleteness:
            return "BadCompleteness";
        case ErrorCode::NotInformationallyComplete:
            return "NotInformationallyComplete";
        case ErrorCode::InconsistentSamples:
            return "InconsistentSamples";
        case ErrorCode::NotAState:
            return "NotAState";
        case ErrorCode::ZeroProbability:
            return "ZeroProbability";
        case ErrorCode::NotAProbability:
            return "NotAProbability";
        case ErrorCode::NotAJoint:
            return "NotAJoint";
        case ErrorCode::ZeroProbabilityData:
            return "ZeroProbabilityData";
        case ErrorCode::NotEfficient:
            return "NotEfficient";
        case ErrorCode::TooLarge:
            return "TooLarge";
        case ErrorCode::ImpossibleOutcome:
            return "ImpossibleOutcome";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

QflError::QflError(ErrorCode code, const std::string &message, std::optional<int> stage, std::optional<int> index)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      message_(message),
      stage_(stage),
      index_(index) {}

}  // namespace qfl
