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

#include <algorithm>
#include <chrono>
#include <string>

#include "chaoscomp/codec.hpp"
#include "chaoscomp/errors.hpp"

namespace chaoscomp::codec {

std::string_view codec_name(CodecId id) noexcept {
    switch (id) {
        case CodecId::store: return "store";
        case CodecId::baseline: return "baseline";
        case CodecId::external: return "zstd";
    }
    return "?";
}

CodecId codec_from_name(std::string_view name) {
    for (CodecId id : {CodecId::store, CodecId::baseline, CodecId::external}) {
        if (codec_name(id) == name) return id;
    }
    throw Error(Errc::contract_violation, "unknown codec '" + std::string(name) + "'");
}

CodecId codec_from_byte(std::uint8_t id) {
    if (id > 2) throw Error(Errc::format_error, "unknown codec id " + std::to_string(id));
    return static_cast<CodecId>(id);
}

bool codec_available(CodecId id) { return id != CodecId::external || zstd::available(); }

CompressedChunk compress(std::span<const std::uint8_t> data, CodecId codec) {
    if (data.empty()) throw Error(Errc::contract_violation, "cannot compress an empty chunk");
    switch (codec) {
        case CodecId::store: return {{data.begin(), data.end()}, data.size()};
        case CodecId::baseline: return {lzh::encode(data), data.size()};
        case CodecId::external: return {zstd::compress(data), data.size()};
    }
    throw Error(Errc::format_error, "unknown codec");
}

std::vector<std::uint8_t> decompress(const CompressedChunk& chunk, CodecId codec) {
    switch (codec) {
        case CodecId::store:
            if (chunk.payload.size() != chunk.original_length) {
                throw DecodeError(std::min(chunk.payload.size(), chunk.original_length),
                                  "stored chunk has the wrong length");
            }
            return chunk.payload;
        case CodecId::baseline: return lzh::decode(chunk.payload, chunk.original_length);
        case CodecId::external: return zstd::decompress(chunk.payload, chunk.original_length);
    }
    throw Error(Errc::format_error, "unknown codec");
}

std::vector<CodecBenchmarkRow> compression_benchmark(std::span<const std::uint8_t> corpus,
                                                     std::span<const CodecId> codecs) {
    if (corpus.empty()) throw Error(Errc::contract_violation, "benchmark corpus is empty");
    using clock = std::chrono::steady_clock;
    std::vector<CodecBenchmarkRow> rows;
    for (CodecId id : codecs) {
        if (!codec_available(id)) continue;
        const auto t0 = clock::now();
        const CompressedChunk c = compress(corpus, id);
        const auto t1 = clock::now();
        const auto back = decompress(c, id);
        const auto t2 = clock::now();
        if (back.size() != corpus.size()) {
            throw Error(Errc::integrity_mismatch, "benchmark roundtrip changed the corpus length");
        }
        rows.push_back({id, corpus.size(), c.payload.size(),
                        static_cast<double>(corpus.size()) / static_cast<double>(c.payload.size()),
                        std::chrono::duration<double>(t1 - t0).count(),
                        std::chrono::duration<double>(t2 - t1).count()});
    }
    return rows;
}

}  // namespace chaoscomp::codec
