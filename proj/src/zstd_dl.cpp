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

#include <dlfcn.h>

#include <mutex>

#include "chaoscomp/codec.hpp"
#include "chaoscomp/errors.hpp"

// libzstd is resolved with dlopen so the build never needs its headers and
// the codec degrades to "unavailable" when the library is absent.

namespace chaoscomp::codec::zstd {

namespace {

constexpr int compression_level = 3;

struct Api {
    std::size_t (*compress_bound)(std::size_t) = nullptr;
    std::size_t (*compress)(void*, std::size_t, const void*, std::size_t, int) = nullptr;
    std::size_t (*decompress)(void*, std::size_t, const void*, std::size_t) = nullptr;
    unsigned (*is_error)(std::size_t) = nullptr;
    const char* (*error_name)(std::size_t) = nullptr;
    bool loaded = false;
};

const Api& api() {
    static Api a;
    static std::once_flag once;
    std::call_once(once, [] {
        void* lib = nullptr;
        for (const char* name : {"libzstd.so.1", "libzstd.so", "libzstd.dylib"}) {
            lib = ::dlopen(name, RTLD_NOW | RTLD_LOCAL);
            if (lib) break;
        }
        if (!lib) return;
        auto sym = [lib](const char* name) { return ::dlsym(lib, name); };
        a.compress_bound = reinterpret_cast<decltype(a.compress_bound)>(sym("ZSTD_compressBound"));
        a.compress = reinterpret_cast<decltype(a.compress)>(sym("ZSTD_compress"));
        a.decompress = reinterpret_cast<decltype(a.decompress)>(sym("ZSTD_decompress"));
        a.is_error = reinterpret_cast<decltype(a.is_error)>(sym("ZSTD_isError"));
        a.error_name = reinterpret_cast<decltype(a.error_name)>(sym("ZSTD_getErrorName"));
        a.loaded = a.compress_bound && a.compress && a.decompress && a.is_error && a.error_name;
    });
    return a;
}

const Api& require_api() {
    const Api& a = api();
    if (!a.loaded) throw Error(Errc::codec_unavailable, "external codec (libzstd) is not available");
    return a;
}

}  // namespace

bool available() { return api().loaded; }

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data) {
    const Api& a = require_api();
    std::vector<std::uint8_t> out(a.compress_bound(data.size()));
    const std::size_t n =
        a.compress(out.data(), out.size(), data.data(), data.size(), compression_level);
    if (a.is_error(n)) {
        throw Error(Errc::codec_unavailable, std::string("zstd compression failed: ") + a.error_name(n));
    }
    out.resize(n);
    return out;
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> payload, std::size_t expected_length) {
    const Api& a = require_api();
    std::vector<std::uint8_t> out(expected_length);
    const std::size_t n = a.decompress(out.data(), out.size(), payload.data(), payload.size());
    if (a.is_error(n)) throw DecodeError(0, std::string("zstd: ") + a.error_name(n));
    if (n != expected_length) throw DecodeError(payload.size(), "zstd frame has the wrong length");
    return out;
}

}  // namespace chaoscomp::codec::zstd
