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
 * @file pipeline.hpp
 * @brief End-to-end encryption pipeline, its inverse, and the container format.
 *
 * Stage order per mode:
 *
 *   SCE  permute -> compress -> substitute
 *   CTE  compress -> permute -> substitute
 *   ETC  permute -> substitute -> compress
 *
 * Input is cut into chunks of `chunk_size` bytes that are compressed
 * independently. Each map generator runs as one continuous stream across all
 * chunks, and the substitution chain value carries across chunk boundaries,
 * so chunks must be decrypted in order.
 *
 * Container layout (integers little-endian):
 *
 *   offset  size     field
 *   0       4        magic "SOC1"
 *   4       1        version (1)
 *   5       1        codec id
 *   6       1        mode (0 SCE, 1 CTE, 2 ETC)
 *   7       4        chunk size
 *   11      8        original length
 *   19      4        chunk count
 *   23      4 each   stored length of every chunk
 *   ...              body: the chunks back to back
 *
 * The header is neither encrypted nor authenticated: it reveals the original
 * and compressed lengths.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "chaoscomp/chaos.hpp"
#include "chaoscomp/codec.hpp"
#include "chaoscomp/keys.hpp"

namespace chaoscomp::pipeline {

enum class Mode : std::uint8_t { sce = 0, cte = 1, etc = 2 };

std::string_view mode_name(Mode m) noexcept;
Mode mode_from_name(std::string_view name);

inline constexpr std::uint32_t min_chunk_size = 4u << 10;
inline constexpr std::uint32_t max_chunk_size = 64u << 20;
inline constexpr std::uint32_t default_chunk_size = 1u << 20;
inline constexpr std::uint8_t container_version = 1;
inline constexpr std::size_t fixed_header_size = 23;

struct EncryptOptions {
    codec::CodecId codec = codec::CodecId::baseline;
    Mode mode = Mode::sce;
    std::uint32_t chunk_size = default_chunk_size;
};

struct ContainerHeader {
    std::uint8_t version = container_version;
    codec::CodecId codec = codec::CodecId::baseline;
    Mode mode = Mode::sce;
    std::uint32_t chunk_size = default_chunk_size;
    std::uint64_t original_length = 0;
    std::vector<std::uint32_t> chunk_lengths;

    std::size_t serialized_size() const noexcept { return fixed_header_size + 4 * chunk_lengths.size(); }
    std::uint64_t body_length() const noexcept;
    /// Plaintext length of chunk i.
    std::size_t plain_chunk_length(std::size_t i) const noexcept;
};

struct SceContainer {
    ContainerHeader header;
    std::vector<std::uint8_t> body;
};

std::vector<std::uint8_t> serialize_container(const SceContainer& c);

/// Throws format_error on bad magic, version, codec, mode, chunk geometry,
/// or a body whose length disagrees with the length table.
SceContainer parse_container(std::span<const std::uint8_t> bytes);

void write_header(std::ostream& os, const ContainerHeader& h);
ContainerHeader read_header(std::istream& is);

/// The three keystreams plus the permutation threshold.
struct Keystreams {
    std::unique_ptr<chaos::ByteSource> logistic;
    std::unique_ptr<chaos::ByteSource> henon;
    std::unique_ptr<chaos::ByteSource> lorenz;
    std::uint8_t threshold = 0;
};

/// Fresh generators for `k`. Throws invalid_key if the key does not validate.
Keystreams keystreams_for(const keys::ChaosKey& k);

/// Keystream bytes drawn so far from each map.
struct StreamCounters {
    std::uint64_t logistic = 0;
    std::uint64_t henon = 0;
    std::uint64_t lorenz = 0;

    friend bool operator==(const StreamCounters&, const StreamCounters&) = default;
};

namespace detail {
class CountedStreams;
}

/// Chunk-at-a-time encryption with one continuous keystream per map.
class Encryptor {
public:
    Encryptor(const keys::ChaosKey& k, const EncryptOptions& options);
    Encryptor(Keystreams streams, const EncryptOptions& options);
    ~Encryptor();
    Encryptor(Encryptor&&) noexcept;
    Encryptor& operator=(Encryptor&&) noexcept;

    /// Returns the stored bytes for one plaintext chunk (non-empty, at most
    /// chunk_size bytes; only the final chunk may be short).
    std::vector<std::uint8_t> encrypt_chunk(std::span<const std::uint8_t> plain);

    const EncryptOptions& options() const noexcept { return options_; }
    StreamCounters counters() const noexcept;

private:
    EncryptOptions options_;
    std::unique_ptr<detail::CountedStreams> streams_;
};

class Decryptor {
public:
    Decryptor(const keys::ChaosKey& k, codec::CodecId codec, Mode mode);
    Decryptor(Keystreams streams, codec::CodecId codec, Mode mode);
    ~Decryptor();
    Decryptor(Decryptor&&) noexcept;
    Decryptor& operator=(Decryptor&&) noexcept;

    std::vector<std::uint8_t> decrypt_chunk(std::span<const std::uint8_t> stored,
                                            std::size_t plain_length);

    StreamCounters counters() const noexcept;

private:
    codec::CodecId codec_;
    Mode mode_;
    std::unique_ptr<detail::CountedStreams> streams_;
};

/// Throws empty_input for an empty plaintext, invalid_key for a bad key.
SceContainer encrypt(std::span<const std::uint8_t> plaintext, const keys::ChaosKey& k,
                     const EncryptOptions& options = {});
SceContainer encrypt(std::span<const std::uint8_t> plaintext, Keystreams streams,
                     const EncryptOptions& options = {});

/// Throws DecodeError when a chunk fails to decode and integrity_mismatch
/// when the output length disagrees with the header.
std::vector<std::uint8_t> decrypt(const SceContainer& c, const keys::ChaosKey& k);
std::vector<std::uint8_t> decrypt(const SceContainer& c, Keystreams streams);

/// Streams `in` into a container on `out`, holding about one chunk in memory.
/// The body is spooled through a temporary file until the length table is
/// known. Returns the header that was written.
ContainerHeader encrypt_stream(std::istream& in, std::ostream& out, const keys::ChaosKey& k,
                               const EncryptOptions& options = {});

/// Reads a container from `in` chunk by chunk and writes the plaintext to `out`.
void decrypt_stream(std::istream& in, std::ostream& out, const keys::ChaosKey& k);

struct PipelineBenchmarkRow {
    Mode mode = Mode::sce;
    codec::CodecId codec = codec::CodecId::baseline;
    std::size_t original_size = 0;
    std::size_t body_size = 0;
    double ratio = 0.0;  // original / body
    double encrypt_seconds = 0.0;
    double decrypt_seconds = 0.0;
};

/// Every (mode, available codec) pair over `corpus`; each roundtrip is verified.
std::vector<PipelineBenchmarkRow> pipeline_benchmark(std::span<const std::uint8_t> corpus,
                                                     const keys::ChaosKey& k,
                                                     std::span<const Mode> modes,
                                                     std::span<const codec::CodecId> codecs,
                                                     std::uint32_t chunk_size = default_chunk_size);

}  // namespace chaoscomp::pipeline
