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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaoscomp {

/// Failure classes surfaced by the library. The CLI maps each one onto a
/// distinct exit code, so the numbering here is part of the public surface.
enum class Errc {
    contract_violation = 1,
    divergent_trajectory,
    numerical_error,
    keygen_failure,
    key_parse_error,
    invalid_key,
    codec_unavailable,
    decode_error,
    format_error,
    integrity_mismatch,
    empty_input,
    undefined_correlation,
    undefined_similarity,
    sensitivity_unavailable,
    insufficient_data,
    io_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Corrupt compressed stream. `offset` is the payload byte position at which
/// decoding gave up.
class DecodeError : public Error {
public:
    DecodeError(std::size_t offset, const std::string& what)
        : Error(Errc::decode_error, what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace chaoscomp
