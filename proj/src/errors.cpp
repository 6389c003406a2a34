/**
 * Copyright 2026 The chaoscomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chaoscomp/errors.hpp"

namespace chaoscomp {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::contract_violation: return "ContractViolation";
        case Errc::divergent_trajectory: return "DivergentTrajectory";
        case Errc::numerical_error: return "NumericalError";
        case Errc::keygen_failure: return "KeyGenFailure";
        case Errc::key_parse_error: return "KeyParseError";
        case Errc::invalid_key: return "InvalidKey";
        case Errc::codec_unavailable: return "CodecUnavailable";
        case Errc::decode_error: return "DecodeError";
        case Errc::format_error: return "FormatError";
        case Errc::integrity_mismatch: return "IntegrityMismatch";
        case Errc::empty_input: return "EmptyInput";
        case Errc::undefined_correlation: return "UndefinedCorrelation";
        case Errc::undefined_similarity: return "UndefinedSimilarity";
        case Errc::sensitivity_unavailable: return "SensitivityUnavailable";
        case Errc::insufficient_data: return "InsufficientData";
        case Errc::io_error: return "IoError";
    }
    return "Unknown";
}

}  // namespace chaoscomp
