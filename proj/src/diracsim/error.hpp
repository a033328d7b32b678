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

#pragma once

#include <stdexcept>
#include <string>

namespace diracsim {

// Values mirror ds_status in the public C header.
enum class ErrorCode : int {
    InvalidArgument = 1,
    GridTooNarrow = 2,
    NotProductState = 3,
    EdgeLeakage = 4,
    Truncation = 5,
    PadInsufficient = 6,
    ZeroWeight = 7,
    Indistinct = 8,
    GridMismatch = 9,
    StepFailure = 10,
    IllConditioned = 11,
    Singular = 12,
    ZeroPopulation = 13,
    NotConverged = 14,
    Config = 15,
    Io = 16,
    Partial = 17,
    Internal = 18,
};

const char *error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

inline void require(bool cond, const std::string &what)
{
    if (!cond)
        fail(ErrorCode::InvalidArgument, what);
}

} // namespace diracsim
