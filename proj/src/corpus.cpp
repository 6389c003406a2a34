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

#include "chaoscomp/corpus.hpp"

#include <array>
#include <cmath>
#include <cctype>
#include <random>
#include <string_view>

namespace chaoscomp::corpus {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        std::uint64_t w = rng();
        for (int j = 0; j < 8; ++j, w >>= 8) out[i + j] = static_cast<std::uint8_t>(w);
    }
    for (std::uint64_t w = rng(); i < n; ++i, w >>= 8) out[i] = static_cast<std::uint8_t>(w);
    return out;
}

std::vector<std::uint8_t> zipf_bytes(std::size_t n, std::uint64_t seed, double s) {
    std::array<double, 256> weights{};
    for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), s);
    std::discrete_distribution<int> dist(weights.begin(), weights.end());
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(dist(rng));
    return out;
}

std::vector<std::uint8_t> synthetic_text(std::size_t n, std::uint64_t seed) {
    static constexpr std::string_view vocabulary[] = {
        "the", "of", "and", "to", "a", "in", "is", "that", "for", "it", "as", "with", "was", "on", "be",
        "by", "this", "are", "from", "or", "an", "which", "at", "not", "but", "can", "have", "data",
        "value", "each", "one", "all", "more", "used", "when", "their", "time", "we", "its", "map",
        "into", "these", "than", "other", "block", "stream", "first", "only", "between", "where",
        "number", "model", "results", "method", "memory", "engine", "output", "input", "process",
        "system", "state", "order", "two", "three", "while", "after", "before", "under", "over",
        "however", "because", "therefore", "compression", "encryption", "sequence", "random",
        "chaotic", "parameter", "initial", "condition", "hardware", "software", "performance",
        "security", "analysis", "attack", "cipher", "key", "size", "ratio", "table", "figure",
        "section", "approach", "proposed", "design", "throughput", "latency", "energy", "area",
        "network", "weights", "layer", "accuracy", "training", "inference", "storage", "transfer",
        "bandwidth", "overhead", "efficient", "significant", "different", "similar", "important",
        "large", "small", "high", "low", "new", "same", "several", "many", "most", "some", "such",
        "also", "then", "there", "would", "could", "should", "may", "will", "must", "does", "has",
    };
    constexpr std::size_t words = std::size(vocabulary);
    std::array<double, words> weights{};
    for (std::size_t r = 0; r < words; ++r) weights[r] = 1.0 / static_cast<double>(r + 1);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::uniform_int_distribution<int> sentence_len(6, 22);
    std::uniform_int_distribution<int> paragraph_len(3, 8);
    std::mt19937_64 rng(seed);

    std::vector<std::uint8_t> out;
    out.reserve(n + 256);
    while (out.size() < n) {
        const int sentences = paragraph_len(rng);
        for (int s = 0; s < sentences; ++s) {
            const int len = sentence_len(rng);
            for (int w = 0; w < len; ++w) {
                const std::string_view word = vocabulary[pick(rng)];
                for (std::size_t c = 0; c < word.size(); ++c) {
                    char ch = word[c];
                    if (w == 0 && c == 0) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
                    out.push_back(static_cast<std::uint8_t>(ch));
                }
                out.push_back(w + 1 == len ? '.' : (rng() % 9 == 0 ? ',' : ' '));
                if (w + 1 < len && out.back() == ',') out.push_back(' ');
            }
            out.push_back(' ');
        }
        out.back() = '\n';
        out.push_back('\n');
    }
    out.resize(n);
    return out;
}

}  // namespace chaoscomp::corpus
