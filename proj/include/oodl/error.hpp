// Copyright 2026 The oodl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodl {

enum class Errc {
    InvalidDimension,
    TooLarge,
    BadSubset,
    DimMismatch,
    NotUnitary,
    BadSpec,
    EmptyData,
    NotProduct,
    NotHermitian,
    BadParams,
    ShapeMismatch,
    NotLocallyScrambled,
    ConfigError,
    BoundViolation,
};

std::string_view errc_name(Errc code);

/// Library-wide exception. Every failure carries one of the Errc codes so
/// callers (and the CLI exit-code mapping) can branch on the kind.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {
    }

    Errc code() const noexcept {
        return code_;
    }

private:
    Errc code_;
};

inline std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidDimension: return "InvalidDimension";
        case Errc::TooLarge: return "TooLarge";
        case Errc::BadSubset: return "BadSubset";
        case Errc::DimMismatch: return "DimMismatch";
        case Errc::NotUnitary: return "NotUnitary";
        case Errc::BadSpec: return "BadSpec";
        case Errc::EmptyData: return "EmptyData";
        case Errc::NotProduct: return "NotProduct";
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::BadParams: return "BadParams";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::NotLocallyScrambled: return "NotLocallyScrambled";
        case Errc::ConfigError: return "ConfigError";
        case Errc::BoundViolation: return "BoundViolation";
    }
    return "Unknown";
}

}  // namespace oodl
