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
#include <array>
#include <cstring>
#include <queue>

#include "chaoscomp/codec.hpp"
#include "chaoscomp/errors.hpp"

namespace chaoscomp::codec::lzh {

namespace {

constexpr std::uint8_t method_stored = 0;
constexpr std::uint8_t method_huffman = 1;
constexpr std::size_t header_size = 5;
constexpr std::size_t tables_size = 143 + 15;

constexpr int max_code_bits = 15;
constexpr int litlen_symbols = 286;
constexpr int dist_symbols = 30;
constexpr int end_of_block = 256;

constexpr std::size_t window_size = 32768;
constexpr std::size_t min_match = 4;
constexpr std::size_t max_match = 258;
constexpr int max_chain = 48;

constexpr int hash_bits = 16;
constexpr std::uint32_t hash_size = 1u << hash_bits;

constexpr std::array<std::uint16_t, 29> length_base{
    3,  4,  5,  6,  7,  8,  9,  10, 11,  13,  15,  17,  19,  23, 27,
    31, 35, 43, 51, 59, 67, 83, 99, 115, 131, 163, 195, 227, 258};
constexpr std::array<std::uint8_t, 29> length_extra{0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2,
                                                    2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
constexpr std::array<std::uint16_t, 30> dist_base{
    1,   2,   3,   4,   5,   7,    9,    13,   17,   25,   33,   49,   65,    97,    129,
    193, 257, 385, 513, 769, 1025, 1537, 2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577};
constexpr std::array<std::uint8_t, 30> dist_extra{0, 0, 0, 0, 1, 1, 2, 2,  3,  3,  4,  4,  5,  5,  6,
                                                  6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};

int length_code_index(std::size_t len) {
    const auto it = std::upper_bound(length_base.begin(), length_base.end(), len);
    return static_cast<int>(it - length_base.begin()) - 1;
}

int dist_code_index(std::size_t dist) {
    const auto it = std::upper_bound(dist_base.begin(), dist_base.end(), dist);
    return static_cast<int>(it - dist_base.begin()) - 1;
}

// --- Huffman construction -------------------------------------------------

std::vector<std::uint8_t> code_lengths(std::vector<std::uint64_t> freq) {
    const std::size_t n = freq.size();
    std::vector<std::uint8_t> lengths(n, 0);
    for (;;) {
        std::vector<std::size_t> used;
        for (std::size_t s = 0; s < n; ++s) {
            if (freq[s] > 0) used.push_back(s);
        }
        if (used.empty()) return lengths;
        if (used.size() == 1) {
            lengths[used[0]] = 1;
            return lengths;
        }

        struct Node {
            std::uint64_t weight;
            int left;
            int right;
        };
        std::vector<Node> nodes;
        nodes.reserve(2 * used.size());
        // (weight, node index): ties break on index, which keeps the tree
        // identical on every platform.
        using Item = std::pair<std::uint64_t, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (std::size_t s : used) {
            nodes.push_back({freq[s], -1, static_cast<int>(s)});
            heap.emplace(freq[s], static_cast<int>(nodes.size() - 1));
        }
        while (heap.size() > 1) {
            const auto [wa, a] = heap.top();
            heap.pop();
            const auto [wb, b] = heap.top();
            heap.pop();
            nodes.push_back({wa + wb, a, b});
            heap.emplace(wa + wb, static_cast<int>(nodes.size() - 1));
        }

        int deepest = 0;
        std::vector<std::pair<int, int>> stack{{heap.top().second, 0}};
        while (!stack.empty()) {
            const auto [idx, depth] = stack.back();
            stack.pop_back();
            const Node& node = nodes[static_cast<std::size_t>(idx)];
            if (node.left < 0) {
                lengths[static_cast<std::size_t>(node.right)] = static_cast<std::uint8_t>(depth);
                deepest = std::max(deepest, depth);
            } else {
                stack.emplace_back(node.left, depth + 1);
                stack.emplace_back(node.right, depth + 1);
            }
        }
        if (deepest <= max_code_bits) return lengths;

        // Too deep: flatten the distribution and rebuild.
        std::fill(lengths.begin(), lengths.end(), 0);
        for (auto& f : freq) {
            if (f > 0) f = (f + 1) / 2;
        }
    }
}

std::vector<std::uint16_t> canonical_codes(const std::vector<std::uint8_t>& lengths) {
    std::array<std::uint16_t, max_code_bits + 1> count{};
    for (auto len : lengths) {
        if (len) ++count[len];
    }
    std::array<std::uint16_t, max_code_bits + 2> next{};
    std::uint16_t code = 0;
    for (int bits = 1; bits <= max_code_bits; ++bits) {
        code = static_cast<std::uint16_t>((code + count[bits - 1]) << 1);
        next[bits] = code;
    }
    std::vector<std::uint16_t> codes(lengths.size(), 0);
    for (std::size_t s = 0; s < lengths.size(); ++s) {
        if (lengths[s]) codes[s] = next[lengths[s]]++;
    }
    return codes;
}

// --- bit I/O --------------------------------------------------------------

class BitWriter {
public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void put(std::uint32_t value, int bits) {
        acc_ |= static_cast<std::uint64_t>(value) << fill_;
        fill_ += bits;
        while (fill_ >= 8) {
            out_.push_back(static_cast<std::uint8_t>(acc_));
            acc_ >>= 8;
            fill_ -= 8;
        }
    }

    // Huffman codes go out most-significant bit first.
    void put_code(std::uint16_t code, int bits) {
        std::uint32_t rev = 0;
        for (int i = 0; i < bits; ++i) rev |= ((code >> i) & 1u) << (bits - 1 - i);
        put(rev, bits);
    }

    void flush() {
        if (fill_ > 0) out_.push_back(static_cast<std::uint8_t>(acc_));
        acc_ = 0;
        fill_ = 0;
    }

private:
    std::vector<std::uint8_t>& out_;
    std::uint64_t acc_ = 0;
    int fill_ = 0;
};

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> data, std::size_t start) : data_(data), pos_(start) {}

    std::uint32_t bits(int need) {
        while (fill_ < need) {
            if (pos_ >= data_.size()) throw DecodeError(pos_, "compressed stream is truncated");
            buf_ |= static_cast<std::uint64_t>(data_[pos_++]) << fill_;
            fill_ += 8;
        }
        const auto v = static_cast<std::uint32_t>(buf_ & ((std::uint64_t{1} << need) - 1));
        buf_ >>= need;
        fill_ -= need;
        return v;
    }

    std::size_t position() const noexcept { return pos_; }
    std::uint64_t pending() const noexcept { return buf_; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_;
    std::uint64_t buf_ = 0;
    int fill_ = 0;
};

// Canonical decoding table: code counts per length and symbols in code order.
struct Decoder {
    std::array<std::uint16_t, max_code_bits + 1> count{};
    std::vector<std::uint16_t> symbol;
};

Decoder make_decoder(const std::vector<std::uint8_t>& lengths, std::size_t table_offset) {
    Decoder d;
    for (auto len : lengths) ++d.count[len];
    d.count[0] = 0;
    int left = 1;
    for (int len = 1; len <= max_code_bits; ++len) {
        left <<= 1;
        left -= d.count[len];
        if (left < 0) throw DecodeError(table_offset, "over-subscribed Huffman code lengths");
    }
    std::array<std::uint16_t, max_code_bits + 2> offs{};
    for (int len = 1; len <= max_code_bits; ++len) offs[len + 1] = offs[len] + d.count[len];
    d.symbol.assign(offs[max_code_bits + 1], 0);
    for (std::size_t s = 0; s < lengths.size(); ++s) {
        if (lengths[s]) d.symbol[offs[lengths[s]]++] = static_cast<std::uint16_t>(s);
    }
    return d;
}

int decode_symbol(BitReader& in, const Decoder& d) {
    int code = 0, first = 0, index = 0;
    for (int len = 1; len <= max_code_bits; ++len) {
        code |= static_cast<int>(in.bits(1));
        const int count = d.count[len];
        if (code - count < first) return d.symbol[static_cast<std::size_t>(index + (code - first))];
        index += count;
        first += count;
        first <<= 1;
        code <<= 1;
    }
    throw DecodeError(in.position(), "invalid Huffman code");
}

// --- LZSS parse -------------------------------------------------------------

// Token encoding: literal byte b -> b; match -> 0x80000000 | len << 16 | dist.
constexpr std::uint32_t match_flag = 0x80000000u;

std::uint32_t hash4(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return (v * 2654435761u) >> (32 - hash_bits);
}

std::vector<std::uint32_t> parse(std::span<const std::uint8_t> data) {
    const std::size_t n = data.size();
    std::vector<std::uint32_t> tokens;
    tokens.reserve(n / 2 + 16);
    std::vector<std::int32_t> head(hash_size, -1);
    std::vector<std::int32_t> prev(window_size, -1);
    const std::uint8_t* base = data.data();

    auto insert = [&](std::size_t pos) {
        const std::uint32_t h = hash4(base + pos);
        prev[pos & (window_size - 1)] = head[h];
        head[h] = static_cast<std::int32_t>(pos);
    };

    std::size_t pos = 0;
    while (pos < n) {
        std::size_t best_len = 0, best_dist = 0;
        if (pos + min_match <= n) {
            const std::size_t limit = std::min(max_match, n - pos);
            std::int32_t cand = head[hash4(base + pos)];
            int chain = max_chain;
            while (cand >= 0 && chain-- > 0) {
                const auto c = static_cast<std::size_t>(cand);
                if (pos - c > window_size) break;
                if (base[c + best_len] == base[pos + best_len]) {
                    std::size_t len = 0;
                    while (len < limit && base[c + len] == base[pos + len]) ++len;
                    if (len > best_len) {
                        best_len = len;
                        best_dist = pos - c;
                        if (len == limit) break;
                    }
                }
                const std::int32_t next = prev[c & (window_size - 1)];
                if (next >= cand) break;
                cand = next;
            }
        }
        if (best_len >= min_match) {
            tokens.push_back(match_flag | static_cast<std::uint32_t>(best_len << 16) |
                             static_cast<std::uint32_t>(best_dist));
            const std::size_t end = pos + best_len;
            for (; pos < end; ++pos) {
                if (pos + min_match <= n) insert(pos);
            }
        } else {
            tokens.push_back(base[pos]);
            if (pos + min_match <= n) insert(pos);
            ++pos;
        }
    }
    return tokens;
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::vector<std::uint8_t> stored(std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out;
    out.reserve(header_size + data.size());
    out.push_back(method_stored);
    put_u32le(out, static_cast<std::uint32_t>(data.size()));
    out.insert(out.end(), data.begin(), data.end());
    return out;
}

void put_nibbles(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& lengths) {
    for (std::size_t i = 0; i < lengths.size(); i += 2) {
        const std::uint8_t lo = lengths[i];
        const std::uint8_t hi = i + 1 < lengths.size() ? lengths[i + 1] : 0;
        out.push_back(static_cast<std::uint8_t>(lo | (hi << 4)));
    }
}

std::vector<std::uint8_t> get_nibbles(std::span<const std::uint8_t> in, std::size_t count) {
    std::vector<std::uint8_t> lengths(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint8_t b = in[i / 2];
        lengths[i] = (i % 2 == 0) ? (b & 0x0F) : (b >> 4);
    }
    return lengths;
}

}  // namespace

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> data) {
    if (data.size() > 0xFFFFFFFFu) {
        throw Error(Errc::contract_violation, "baseline codec chunks are limited to 4 GiB");
    }
    if (data.size() <= tables_size) return stored(data);

    const std::vector<std::uint32_t> tokens = parse(data);

    std::vector<std::uint64_t> lit_freq(litlen_symbols, 0), dist_freq(dist_symbols, 0);
    for (std::uint32_t t : tokens) {
        if (t & match_flag) {
            ++lit_freq[static_cast<std::size_t>(257 + length_code_index((t >> 16) & 0x7FFF))];
            ++dist_freq[static_cast<std::size_t>(dist_code_index(t & 0xFFFF))];
        } else {
            ++lit_freq[t];
        }
    }
    lit_freq[end_of_block] = 1;

    const auto lit_len = code_lengths(lit_freq);
    const auto dist_len = code_lengths(dist_freq);
    const auto lit_code = canonical_codes(lit_len);
    const auto dist_code = canonical_codes(dist_len);

    // Cheap size estimate first so incompressible input skips the bit packing.
    std::uint64_t bits = 0;
    for (std::size_t s = 0; s < lit_freq.size(); ++s) bits += lit_freq[s] * lit_len[s];
    for (std::size_t s = 0; s < dist_freq.size(); ++s) bits += dist_freq[s] * dist_len[s];
    for (std::uint32_t t : tokens) {
        if (t & match_flag) {
            bits += length_extra[static_cast<std::size_t>(length_code_index((t >> 16) & 0x7FFF))];
            bits += dist_extra[static_cast<std::size_t>(dist_code_index(t & 0xFFFF))];
        }
    }
    if (header_size + tables_size + (bits + 7) / 8 >= header_size + data.size()) return stored(data);

    std::vector<std::uint8_t> out;
    out.reserve(header_size + tables_size + (bits + 7) / 8);
    out.push_back(method_huffman);
    put_u32le(out, static_cast<std::uint32_t>(data.size()));
    put_nibbles(out, lit_len);
    put_nibbles(out, dist_len);

    BitWriter w(out);
    for (std::uint32_t t : tokens) {
        if (t & match_flag) {
            const std::size_t len = (t >> 16) & 0x7FFF;
            const std::size_t dist = t & 0xFFFF;
            const auto li = static_cast<std::size_t>(length_code_index(len));
            const auto di = static_cast<std::size_t>(dist_code_index(dist));
            w.put_code(lit_code[257 + li], lit_len[257 + li]);
            w.put(static_cast<std::uint32_t>(len - length_base[li]), length_extra[li]);
            w.put_code(dist_code[di], dist_len[di]);
            w.put(static_cast<std::uint32_t>(dist - dist_base[di]), dist_extra[di]);
        } else {
            w.put_code(lit_code[t], lit_len[t]);
        }
    }
    w.put_code(lit_code[end_of_block], lit_len[end_of_block]);
    w.flush();
    return out;
}

std::vector<std::uint8_t> decode(std::span<const std::uint8_t> payload, std::size_t expected_length) {
    if (payload.size() < header_size) throw DecodeError(payload.size(), "payload header is truncated");
    const std::uint8_t method = payload[0];
    const std::size_t length = std::size_t{payload[1]} | (std::size_t{payload[2]} << 8) |
                               (std::size_t{payload[3]} << 16) | (std::size_t{payload[4]} << 24);
    if (length != expected_length) {
        throw DecodeError(1, "payload length field " + std::to_string(length) +
                                 " does not match expected " + std::to_string(expected_length));
    }

    if (method == method_stored) {
        if (payload.size() != header_size + length) {
            throw DecodeError(std::min(payload.size(), header_size + length),
                              "stored payload size does not match its length field");
        }
        return {payload.begin() + header_size, payload.end()};
    }
    if (method != method_huffman) throw DecodeError(0, "unknown payload method");
    if (payload.size() < header_size + tables_size) {
        throw DecodeError(payload.size(), "code length tables are truncated");
    }

    const auto lit_len = get_nibbles(payload.subspan(header_size), litlen_symbols);
    const auto dist_len = get_nibbles(payload.subspan(header_size + 143), dist_symbols);
    const Decoder lit = make_decoder(lit_len, header_size);
    const Decoder dist = make_decoder(dist_len, header_size + 143);

    std::vector<std::uint8_t> out;
    out.reserve(length);
    BitReader in(payload, header_size + tables_size);
    for (;;) {
        const int sym = decode_symbol(in, lit);
        if (sym < 256) {
            if (out.size() == length) throw DecodeError(in.position(), "output exceeds original length");
            out.push_back(static_cast<std::uint8_t>(sym));
            continue;
        }
        if (sym == end_of_block) break;
        const auto li = static_cast<std::size_t>(sym - 257);
        if (li >= length_base.size()) throw DecodeError(in.position(), "invalid length symbol");
        const std::size_t len = length_base[li] + in.bits(length_extra[li]);
        const int dsym = decode_symbol(in, dist);
        if (dsym >= dist_symbols) throw DecodeError(in.position(), "invalid distance symbol");
        const auto di = static_cast<std::size_t>(dsym);
        const std::size_t d = dist_base[di] + in.bits(dist_extra[di]);
        if (d > out.size()) throw DecodeError(in.position(), "match distance before start of output");
        if (out.size() + len > length) throw DecodeError(in.position(), "output exceeds original length");
        const std::size_t from = out.size() - d;
        for (std::size_t i = 0; i < len; ++i) out.push_back(out[from + i]);
    }
    if (out.size() != length) throw DecodeError(in.position(), "stream ended before original length");
    if (in.position() != payload.size()) throw DecodeError(in.position(), "trailing bytes after end of stream");
    if (in.pending() != 0) throw DecodeError(in.position(), "nonzero padding bits");
    return out;
}

}  // namespace chaoscomp::codec::lzh
