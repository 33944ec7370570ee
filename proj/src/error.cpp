/*
   Copyright 2026 The fqsums Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "fqsums/error.hpp"

namespace fqs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::CtxMismatch: return "CtxMismatch";
        case ErrorCode::ZeroElement: return "ZeroElement";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::DivByZeroPoly: return "DivByZeroPoly";
        case ErrorCode::ZeroPoly: return "ZeroPoly";
        case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
        case ErrorCode::NotInvariant: return "NotInvariant";
        case ErrorCode::ZeroMu: return "ZeroMu";
        case ErrorCode::NotABasis: return "NotABasis";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::NoRootInField: return "NoRootInField";
        case ErrorCode::BadCharacteristic: return "BadCharacteristic";
        case ErrorCode::HypothesisFailed: return "HypothesisFailed";
        case ErrorCode::DegenerateReduction: return "DegenerateReduction";
        case ErrorCode::MthPower: return "MthPower";
        case ErrorCode::NotExceptionalCell: return "NotExceptionalCell";
        case ErrorCode::RootsNotInBaseField: return "RootsNotInBaseField";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::Unsatisfiable: return "Unsatisfiable";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace fqs
