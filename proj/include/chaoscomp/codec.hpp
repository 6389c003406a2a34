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

/**
 * @file codec.hpp
 * @brief Lossless codecs behind one interface: store (identity), the in-repo
 *        LZSS + canonical Huffman baseline, and an optional system zstd.
 *
 * Baseline payload layout (all integers little-endian):
 *
 *   offset  size  field
 *   0       1     method: 0 = stored, 1 = LZ + Huffman
 *   1       4     original length
 *   stored:
 *   5       n     the original bytes
 *   LZ + Huffman:
 *   5       143   literal/length code lengths, 286 x 4 bits, low nibble first
 *   148     15    distance code lengths, 30 x 4 bits, low nibble first
 *   163     ...   Huffman-coded symbols, packed LSB-first, ending with the
 *                 end-of-block symbol 256; unused high bits of the last byte
 *                 are zero
 *
 * Symbol alphabets and extra-bit tables follow deflate: literals 0-255,
 * end-of-block 256, length codes 257-285 (match lengths 4-258 are emitted),
 * distance codes 0-29 over a 32 KiB window. Codes are canonical, at most 15
 * bits, and written most-significant bit first. The encoder falls back to the
 * stored method whenever that is not larger.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace chaoscomp::codec {

enum class CodecId : std::uint8_t {
    store = 0,
    baseline = 1,
    external = 2,
};

std::string_view codec_name(CodecId id) noexcept;
CodecId codec_from_name(std::string_view name);

/// Throws format_error for ids outside {0, 1, 2}.
CodecId codec_from_byte(std::uint8_t id);

/// The external codec needs libzstd at run time; the others always work.
bool codec_available(CodecId id);

struct CompressedChunk {
    std::vector<std::uint8_t> payload;
    std::size_t original_length = 0;
};

/// Requires a non-empty input. Throws codec_unavailable for a missing
/// external codec.
CompressedChunk compress(std::span<const std::uint8_t> data, CodecId codec);

/// Throws DecodeError on a corrupt payload, including any payload that does
/// not expand to exactly `chunk.original_length` bytes.
std::vector<std::uint8_t> decompress(const CompressedChunk& chunk, CodecId codec);

namespace lzh {

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> decode(std::span<const std::uint8_t> payload, std::size_t expected_length);

}  // namespace lzh

namespace zstd {

bool available();
std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> payload, std::size_t expected_length);

}  // namespace zstd

struct CodecBenchmarkRow {
    CodecId codec = CodecId::store;
    std::size_t original_size = 0;
    std::size_t compressed_size = 0;
    double ratio = 0.0;  // original / compressed
    double compress_seconds = 0.0;
    double decompress_seconds = 0.0;
};

/// One row per available codec in `codecs`; unavailable codecs are skipped.
std::vector<CodecBenchmarkRow> compression_benchmark(std::span<const std::uint8_t> corpus,
                                                     std::span<const CodecId> codecs);

}  // namespace chaoscomp::codec
