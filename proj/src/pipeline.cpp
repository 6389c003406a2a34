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

#include "chaoscomp/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "chaoscomp/errors.hpp"
#include "chaoscomp/permute.hpp"
#include "chaoscomp/subst.hpp"

namespace chaoscomp::pipeline {

std::string_view mode_name(Mode m) noexcept {
    switch (m) {
        case Mode::sce: return "sce";
        case Mode::cte: return "cte";
        case Mode::etc: return "etc";
    }
    return "?";
}

Mode mode_from_name(std::string_view name) {
    for (Mode m : {Mode::sce, Mode::cte, Mode::etc}) {
        if (mode_name(m) == name) return m;
    }
    throw Error(Errc::contract_violation, "unknown mode '" + std::string(name) + "'");
}

std::uint64_t ContainerHeader::body_length() const noexcept {
    std::uint64_t total = 0;
    for (auto len : chunk_lengths) total += len;
    return total;
}

std::size_t ContainerHeader::plain_chunk_length(std::size_t i) const noexcept {
    const std::uint64_t start = static_cast<std::uint64_t>(i) * chunk_size;
    if (start >= original_length) return 0;
    return static_cast<std::size_t>(std::min<std::uint64_t>(chunk_size, original_length - start));
}

namespace {

constexpr std::array<std::uint8_t, 4> container_magic{'S', 'O', 'C', '1'};
constexpr std::uint32_t max_chunk_count = 1u << 28;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <class T>
T get_le(const std::uint8_t* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

std::uint64_t expected_chunk_count(std::uint64_t original, std::uint32_t chunk_size) {
    return (original + chunk_size - 1) / chunk_size;
}

void check_chunk_size(std::uint32_t chunk_size, Errc code) {
    if (chunk_size < min_chunk_size || chunk_size > max_chunk_size) {
        throw Error(code, "chunk size " + std::to_string(chunk_size) + " outside [4 KiB, 64 MiB]");
    }
}

std::vector<std::uint8_t> fixed_header_bytes(const ContainerHeader& h) {
    std::vector<std::uint8_t> out(container_magic.begin(), container_magic.end());
    out.push_back(h.version);
    out.push_back(static_cast<std::uint8_t>(h.codec));
    out.push_back(static_cast<std::uint8_t>(h.mode));
    put_le<std::uint32_t>(out, h.chunk_size);
    put_le<std::uint64_t>(out, h.original_length);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(h.chunk_lengths.size()));
    return out;
}

// Parses the fixed 23-byte prefix; chunk_lengths is sized but not filled.
ContainerHeader parse_fixed_header(std::span<const std::uint8_t> b) {
    if (b.size() < fixed_header_size) throw Error(Errc::format_error, "container header is truncated");
    if (!std::equal(container_magic.begin(), container_magic.end(), b.begin())) {
        throw Error(Errc::format_error, "bad container magic");
    }
    ContainerHeader h;
    h.version = b[4];
    if (h.version != container_version) {
        throw Error(Errc::format_error, "unsupported container version " + std::to_string(h.version));
    }
    h.codec = codec::codec_from_byte(b[5]);
    if (b[6] > 2) throw Error(Errc::format_error, "unknown mode " + std::to_string(b[6]));
    h.mode = static_cast<Mode>(b[6]);
    h.chunk_size = get_le<std::uint32_t>(&b[7]);
    check_chunk_size(h.chunk_size, Errc::format_error);
    h.original_length = get_le<std::uint64_t>(&b[11]);
    if (h.original_length == 0) throw Error(Errc::format_error, "container declares an empty plaintext");
    const auto count = get_le<std::uint32_t>(&b[19]);
    if (count > max_chunk_count || count != expected_chunk_count(h.original_length, h.chunk_size)) {
        throw Error(Errc::format_error, "chunk count disagrees with original length and chunk size");
    }
    h.chunk_lengths.resize(count);
    return h;
}

class CountingSource final : public chaos::ByteSource {
public:
    explicit CountingSource(chaos::ByteSource& inner) : inner_(inner) {}

    std::uint8_t next() override {
        ++count_;
        return inner_.next();
    }

    void fill(std::span<std::uint8_t> out) override {
        inner_.fill(out);
        count_ += out.size();
    }

    std::uint64_t count() const noexcept { return count_; }

private:
    chaos::ByteSource& inner_;
    std::uint64_t count_ = 0;
};

}  // namespace

namespace detail {

class CountedStreams {
public:
    explicit CountedStreams(Keystreams ks)
        : ks_(std::move(ks)),
          logistic_(require(ks_.logistic)),
          henon_(require(ks_.henon)),
          lorenz_(require(ks_.lorenz)),
          subst_{henon_, lorenz_, 0} {}

    CountedStreams(const CountedStreams&) = delete;
    CountedStreams& operator=(const CountedStreams&) = delete;

    void shuffle(std::span<std::uint8_t> data) { permute::shuffle_buffer(data, logistic_, ks_.threshold); }
    void deshuffle(std::span<std::uint8_t> data) {
        permute::deshuffle_buffer(data, logistic_, ks_.threshold);
    }
    void substitute(std::span<std::uint8_t> data) { subst::substitute(data, subst_); }
    void desubstitute(std::span<std::uint8_t> data) { subst::desubstitute(data, subst_); }

    StreamCounters counters() const noexcept {
        return {logistic_.count(), henon_.count(), lorenz_.count()};
    }

private:
    static chaos::ByteSource& require(const std::unique_ptr<chaos::ByteSource>& p) {
        if (!p) throw Error(Errc::contract_violation, "keystream set is missing a source");
        return *p;
    }

    Keystreams ks_;
    CountingSource logistic_;
    CountingSource henon_;
    CountingSource lorenz_;
    subst::SubstState subst_;
};

}  // namespace detail

Keystreams keystreams_for(const keys::ChaosKey& k) {
    const keys::Validation v = keys::validate_key(k);
    if (!v.ok()) throw Error(Errc::invalid_key, "key fails validation: " + v.violations.front());
    Keystreams ks;
    ks.logistic = std::make_unique<chaos::LogisticGenerator>(keys::make_logistic(k));
    ks.henon = std::make_unique<chaos::HenonGenerator>(keys::make_henon(k));
    ks.lorenz = std::make_unique<chaos::LorenzGenerator>(keys::make_lorenz(k));
    ks.threshold = k.kp.threshold;
    return ks;
}

// --- Encryptor / Decryptor ---------------------------------------------------

Encryptor::Encryptor(const keys::ChaosKey& k, const EncryptOptions& options)
    : Encryptor(keystreams_for(k), options) {}

Encryptor::Encryptor(Keystreams streams, const EncryptOptions& options)
    : options_(options), streams_(std::make_unique<detail::CountedStreams>(std::move(streams))) {
    check_chunk_size(options.chunk_size, Errc::contract_violation);
    if (!codec::codec_available(options.codec)) {
        throw Error(Errc::codec_unavailable,
                    "codec '" + std::string(codec::codec_name(options.codec)) + "' is not available");
    }
}

Encryptor::~Encryptor() = default;
Encryptor::Encryptor(Encryptor&&) noexcept = default;
Encryptor& Encryptor::operator=(Encryptor&&) noexcept = default;

std::vector<std::uint8_t> Encryptor::encrypt_chunk(std::span<const std::uint8_t> plain) {
    if (plain.empty() || plain.size() > options_.chunk_size) {
        throw Error(Errc::contract_violation, "chunk must hold 1..chunk_size bytes");
    }
    auto& s = *streams_;
    switch (options_.mode) {
        case Mode::sce: {
            std::vector<std::uint8_t> buf(plain.begin(), plain.end());
            s.shuffle(buf);
            auto out = codec::compress(buf, options_.codec).payload;
            s.substitute(out);
            return out;
        }
        case Mode::cte: {
            auto out = codec::compress(plain, options_.codec).payload;
            s.shuffle(out);
            s.substitute(out);
            return out;
        }
        case Mode::etc: {
            std::vector<std::uint8_t> buf(plain.begin(), plain.end());
            s.shuffle(buf);
            s.substitute(buf);
            return codec::compress(buf, options_.codec).payload;
        }
    }
    throw Error(Errc::contract_violation, "unknown mode");
}

StreamCounters Encryptor::counters() const noexcept { return streams_->counters(); }

Decryptor::Decryptor(const keys::ChaosKey& k, codec::CodecId codec, Mode mode)
    : Decryptor(keystreams_for(k), codec, mode) {}

Decryptor::Decryptor(Keystreams streams, codec::CodecId codec, Mode mode)
    : codec_(codec), mode_(mode), streams_(std::make_unique<detail::CountedStreams>(std::move(streams))) {
    if (!codec::codec_available(codec)) {
        throw Error(Errc::codec_unavailable,
                    "codec '" + std::string(codec::codec_name(codec)) + "' is not available");
    }
}

Decryptor::~Decryptor() = default;
Decryptor::Decryptor(Decryptor&&) noexcept = default;
Decryptor& Decryptor::operator=(Decryptor&&) noexcept = default;

std::vector<std::uint8_t> Decryptor::decrypt_chunk(std::span<const std::uint8_t> stored,
                                                   std::size_t plain_length) {
    auto& s = *streams_;
    switch (mode_) {
        case Mode::sce: {
            std::vector<std::uint8_t> buf(stored.begin(), stored.end());
            s.desubstitute(buf);
            auto out = codec::decompress({std::move(buf), plain_length}, codec_);
            s.deshuffle(out);
            return out;
        }
        case Mode::cte: {
            std::vector<std::uint8_t> buf(stored.begin(), stored.end());
            s.desubstitute(buf);
            s.deshuffle(buf);
            return codec::decompress({std::move(buf), plain_length}, codec_);
        }
        case Mode::etc: {
            auto out = codec::decompress({{stored.begin(), stored.end()}, plain_length}, codec_);
            s.desubstitute(out);
            s.deshuffle(out);
            return out;
        }
    }
    throw Error(Errc::contract_violation, "unknown mode");
}

StreamCounters Decryptor::counters() const noexcept { return streams_->counters(); }

// --- whole-buffer API --------------------------------------------------------

SceContainer encrypt(std::span<const std::uint8_t> plaintext, const keys::ChaosKey& k,
                     const EncryptOptions& options) {
    if (plaintext.empty()) throw Error(Errc::empty_input, "refusing to encrypt an empty input");
    return encrypt(plaintext, keystreams_for(k), options);
}

SceContainer encrypt(std::span<const std::uint8_t> plaintext, Keystreams streams,
                     const EncryptOptions& options) {
    if (plaintext.empty()) throw Error(Errc::empty_input, "refusing to encrypt an empty input");
    Encryptor enc(std::move(streams), options);
    SceContainer c;
    c.header.codec = options.codec;
    c.header.mode = options.mode;
    c.header.chunk_size = options.chunk_size;
    c.header.original_length = plaintext.size();
    for (std::size_t off = 0; off < plaintext.size(); off += options.chunk_size) {
        const auto n = std::min<std::size_t>(options.chunk_size, plaintext.size() - off);
        auto stored = enc.encrypt_chunk(plaintext.subspan(off, n));
        c.header.chunk_lengths.push_back(static_cast<std::uint32_t>(stored.size()));
        c.body.insert(c.body.end(), stored.begin(), stored.end());
    }
    return c;
}

std::vector<std::uint8_t> decrypt(const SceContainer& c, const keys::ChaosKey& k) {
    return decrypt(c, keystreams_for(k));
}

std::vector<std::uint8_t> decrypt(const SceContainer& c, Keystreams streams) {
    const ContainerHeader& h = c.header;
    if (h.body_length() != c.body.size()) {
        throw Error(Errc::format_error, "container body length disagrees with its length table");
    }
    if (h.chunk_lengths.size() != expected_chunk_count(h.original_length, h.chunk_size)) {
        throw Error(Errc::format_error, "chunk count disagrees with original length and chunk size");
    }
    Decryptor dec(std::move(streams), h.codec, h.mode);
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(h.original_length));
    std::size_t off = 0;
    for (std::size_t i = 0; i < h.chunk_lengths.size(); ++i) {
        const std::size_t len = h.chunk_lengths[i];
        const std::size_t plain_len = h.plain_chunk_length(i);
        const auto chunk = dec.decrypt_chunk(std::span(c.body).subspan(off, len), plain_len);
        if (chunk.size() != plain_len) {
            throw Error(Errc::integrity_mismatch, "chunk " + std::to_string(i) + " has the wrong length");
        }
        out.insert(out.end(), chunk.begin(), chunk.end());
        off += len;
    }
    if (out.size() != h.original_length) {
        throw Error(Errc::integrity_mismatch, "decrypted length disagrees with the header");
    }
    return out;
}

std::vector<std::uint8_t> serialize_container(const SceContainer& c) {
    std::vector<std::uint8_t> out = fixed_header_bytes(c.header);
    out.reserve(c.header.serialized_size() + c.body.size());
    for (auto len : c.header.chunk_lengths) put_le<std::uint32_t>(out, len);
    out.insert(out.end(), c.body.begin(), c.body.end());
    return out;
}

SceContainer parse_container(std::span<const std::uint8_t> bytes) {
    SceContainer c;
    c.header = parse_fixed_header(bytes);
    const std::size_t table_end = c.header.serialized_size();
    if (bytes.size() < table_end) throw Error(Errc::format_error, "chunk length table is truncated");
    for (std::size_t i = 0; i < c.header.chunk_lengths.size(); ++i) {
        c.header.chunk_lengths[i] = get_le<std::uint32_t>(&bytes[fixed_header_size + 4 * i]);
    }
    const std::uint64_t body = c.header.body_length();
    if (bytes.size() - table_end < body) throw Error(Errc::format_error, "container body is truncated");
    if (bytes.size() - table_end > body) throw Error(Errc::format_error, "trailing bytes after container body");
    c.body.assign(bytes.begin() + static_cast<std::ptrdiff_t>(table_end), bytes.end());
    return c;
}

void write_header(std::ostream& os, const ContainerHeader& h) {
    std::vector<std::uint8_t> out = fixed_header_bytes(h);
    for (auto len : h.chunk_lengths) put_le<std::uint32_t>(out, len);
    os.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!os) throw Error(Errc::io_error, "failed to write container header");
}

namespace {

bool read_exact(std::istream& is, std::uint8_t* dst, std::size_t n) {
    is.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(is.gcount()) == n;
}

}  // namespace

ContainerHeader read_header(std::istream& is) {
    std::array<std::uint8_t, fixed_header_size> fixed{};
    if (!read_exact(is, fixed.data(), fixed.size())) {
        throw Error(Errc::format_error, "container header is truncated");
    }
    ContainerHeader h = parse_fixed_header(fixed);
    std::vector<std::uint8_t> table(4 * h.chunk_lengths.size());
    if (!read_exact(is, table.data(), table.size())) {
        throw Error(Errc::format_error, "chunk length table is truncated");
    }
    for (std::size_t i = 0; i < h.chunk_lengths.size(); ++i) {
        h.chunk_lengths[i] = get_le<std::uint32_t>(&table[4 * i]);
    }
    return h;
}

// --- streaming ---------------------------------------------------------------

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using TempFile = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

ContainerHeader encrypt_stream(std::istream& in, std::ostream& out, const keys::ChaosKey& k,
                               const EncryptOptions& options) {
    Encryptor enc(k, options);
    TempFile spool(std::tmpfile());
    if (!spool) throw Error(Errc::io_error, "cannot create a temporary spool file");

    ContainerHeader h;
    h.codec = options.codec;
    h.mode = options.mode;
    h.chunk_size = options.chunk_size;
    std::vector<std::uint8_t> buf(options.chunk_size);
    for (;;) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        const auto got = static_cast<std::size_t>(in.gcount());
        if (got == 0) break;
        const auto stored = enc.encrypt_chunk(std::span(buf).first(got));
        if (std::fwrite(stored.data(), 1, stored.size(), spool.get()) != stored.size()) {
            throw Error(Errc::io_error, "failed to write the spool file");
        }
        h.chunk_lengths.push_back(static_cast<std::uint32_t>(stored.size()));
        h.original_length += got;
        if (got < buf.size()) break;
    }
    if (in.bad()) throw Error(Errc::io_error, "failed to read the input stream");
    if (h.original_length == 0) throw Error(Errc::empty_input, "refusing to encrypt an empty input");

    write_header(out, h);
    std::rewind(spool.get());
    for (;;) {
        const std::size_t n = std::fread(buf.data(), 1, buf.size(), spool.get());
        if (n == 0) break;
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n));
    }
    if (std::ferror(spool.get()) || !out) throw Error(Errc::io_error, "failed to copy the container body");
    return h;
}

void decrypt_stream(std::istream& in, std::ostream& out, const keys::ChaosKey& k) {
    const ContainerHeader h = read_header(in);
    Decryptor dec(k, h.codec, h.mode);
    std::vector<std::uint8_t> buf;
    std::uint64_t written = 0;
    for (std::size_t i = 0; i < h.chunk_lengths.size(); ++i) {
        buf.resize(h.chunk_lengths[i]);
        if (!read_exact(in, buf.data(), buf.size())) {
            throw Error(Errc::format_error, "container body is truncated");
        }
        const std::size_t plain_len = h.plain_chunk_length(i);
        const auto chunk = dec.decrypt_chunk(buf, plain_len);
        if (chunk.size() != plain_len) {
            throw Error(Errc::integrity_mismatch, "chunk " + std::to_string(i) + " has the wrong length");
        }
        out.write(reinterpret_cast<const char*>(chunk.data()), static_cast<std::streamsize>(chunk.size()));
        if (!out) throw Error(Errc::io_error, "failed to write plaintext");
        written += chunk.size();
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw Error(Errc::format_error, "trailing bytes after container body");
    }
    if (written != h.original_length) {
        throw Error(Errc::integrity_mismatch, "decrypted length disagrees with the header");
    }
}

std::vector<PipelineBenchmarkRow> pipeline_benchmark(std::span<const std::uint8_t> corpus,
                                                     const keys::ChaosKey& k,
                                                     std::span<const Mode> modes,
                                                     std::span<const codec::CodecId> codecs,
                                                     std::uint32_t chunk_size) {
    using clock = std::chrono::steady_clock;
    std::vector<PipelineBenchmarkRow> rows;
    for (Mode m : modes) {
        for (codec::CodecId id : codecs) {
            if (!codec::codec_available(id)) continue;
            const EncryptOptions opt{id, m, chunk_size};
            const auto t0 = clock::now();
            const SceContainer c = encrypt(corpus, k, opt);
            const auto t1 = clock::now();
            const auto back = decrypt(c, k);
            const auto t2 = clock::now();
            if (!std::equal(back.begin(), back.end(), corpus.begin(), corpus.end())) {
                throw Error(Errc::integrity_mismatch, "benchmark roundtrip failed");
            }
            rows.push_back({m, id, corpus.size(), c.body.size(),
                            static_cast<double>(corpus.size()) / static_cast<double>(c.body.size()),
                            std::chrono::duration<double>(t1 - t0).count(),
                            std::chrono::duration<double>(t2 - t1).count()});
        }
    }
    return rows;
}

}  // namespace chaoscomp::pipeline
