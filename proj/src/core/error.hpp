// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lgimap {

enum class ErrorCode {
    InvalidArgument,
    InvalidDepth,
    BehindCamera,
    ShapeMismatch,
    DegenerateVector,
    DegenerateTime,
    DegenerateDenominator,
    DegenerateClass,
    DegenerateRegion,
    FormatError,
    ConfigError,
    IoError,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace lgimap
