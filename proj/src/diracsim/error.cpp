// Copyright 2026 The diracsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "diracsim/error.hpp"

namespace diracsim {

const char *error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "InvalidArgument";
    case ErrorCode::GridTooNarrow:
        return "GridTooNarrow";
    case ErrorCode::NotProductState:
        return "NotProductState";
    case ErrorCode::EdgeLeakage:
        return "EdgeLeakage";
    case ErrorCode::Truncation:
        return "Truncation";
    case ErrorCode::PadInsufficient:
        return "PadInsufficient";
    case ErrorCode::ZeroWeight:
        return "ZeroWeight";
    case ErrorCode::Indistinct:
        return "Indistinct";
    case ErrorCode::GridMismatch:
        return "GridMismatch";
    case ErrorCode::StepFailure:
        return "StepFailure";
    case ErrorCode::IllConditioned:
        return "IllConditioned";
    case ErrorCode::Singular:
        return "Singular";
    case ErrorCode::ZeroPopulation:
        return "ZeroPopulation";
    case ErrorCode::NotConverged:
        return "NotConverged";
    case ErrorCode::Config:
        return "Config";
    case ErrorCode::Io:
        return "Io";
    case ErrorCode::Partial:
        return "Partial";
    case ErrorCode::Internal:
        return "Internal";
    }
    return "Unknown";
}

} // namespace diracsim
