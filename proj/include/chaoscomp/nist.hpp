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
 * @file nist.hpp
 * @brief Seven tests from NIST SP 800-22 plus a campaign driver and the ASCII
 * bitstream exporter used to feed the reference suite.
 *
 * The raw test functions accept any length so the published worked examples
 * (often n = 10) can be checked directly. `nist_subset` applies the minimum
 * lengths the suite recommends and throws insufficient_data below them.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chaoscomp::analysis {

/// Numbering follows the reference suite (T0 Frequency ... T14).
enum class NistTest : std::uint8_t {
    frequency = 0,
    block_frequency = 1,
    cumulative_sums = 2,
    runs = 3,
    longest_run = 4,
    approximate_entropy = 10,
    serial = 13,
};

inline constexpr std::array<NistTest, 7> implemented_tests{
    NistTest::frequency, NistTest::block_frequency,     NistTest::cumulative_sums, NistTest::runs,
    NistTest::longest_run, NistTest::approximate_entropy, NistTest::serial,
};

inline constexpr std::size_t block_frequency_m = 128;
inline constexpr unsigned approximate_entropy_m = 10;
inline constexpr unsigned serial_m = 16;
inline constexpr double default_alpha = 0.01;

std::string_view nist_test_name(NistTest t) noexcept;
NistTest nist_test_from_name(std::string_view name);

/// Smallest n accepted by `nist_subset` for test t.
std::size_t nist_min_length(NistTest t) noexcept;

/// One bit per element (0 or 1).
class BitSample {
public:
    BitSample() = default;
    explicit BitSample(std::vector<std::uint8_t> bits);

    /// Expands bytes most-significant-bit first.
    static BitSample from_bytes(std::span<const std::uint8_t> bytes);
    /// `nbits` bits starting at bit offset `first_bit` of `bytes`.
    static BitSample from_bytes(std::span<const std::uint8_t> bytes, std::size_t first_bit,
                                std::size_t nbits);
    /// From a string of '0'/'1' characters; other characters are rejected.
    static BitSample from_string(std::string_view s);

    std::size_t size() const noexcept { return bits_.size(); }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

double frequency_test(std::span<const std::uint8_t> bits);
double block_frequency_test(std::span<const std::uint8_t> bits, std::size_t m = block_frequency_m);
/// Forward mode unless `reverse` is set.
double cumulative_sums_test(std::span<const std::uint8_t> bits, bool reverse = false);
/// Returns 0 when the frequency prerequisite |pi - 1/2| >= 2/sqrt(n) fails.
double runs_test(std::span<const std::uint8_t> bits);
/// Block length 8, 128 or 10000 chosen from n; n >= 128 required.
double longest_run_test(std::span<const std::uint8_t> bits);
double approximate_entropy_test(std::span<const std::uint8_t> bits, unsigned m = approximate_entropy_m);

struct SerialResult {
    double p1 = 0.0;
    double p2 = 0.0;
};
/// Requires m >= 2.
SerialResult serial_test(std::span<const std::uint8_t> bits, unsigned m = serial_m);

/// P-value of test t on `sample` (Serial reports p1). Throws insufficient_data
/// when the sample is shorter than `nist_min_length(t)`.
double nist_subset(const BitSample& sample, NistTest t);

/// Per-test p-values across samples. `aggregate` is the pass rate.
struct AnalysisReport {
    std::string metric;
    std::vector<double> values;
    double aggregate = 0.0;
    std::size_t sample_length = 0;
    std::size_t sample_count = 0;
    double alpha = default_alpha;
};

struct CampaignResult {
    std::vector<AnalysisReport> reports;  // one per implemented test, in order

    const AnalysisReport& report(NistTest t) const;
};

/// Splits `data` into `samples` consecutive samples of `length` bits and runs
/// every implemented test on each. Throws insufficient_data if `data` is too
/// short or `length` is below a test minimum.
CampaignResult nist_campaign(std::span<const std::uint8_t> data, std::size_t samples,
                             std::size_t length, double alpha = default_alpha);

/// Chi-square uniformity of p-values over 10 equal bins; returns its p-value.
double pvalue_uniformity(std::span<const double> pvalues);

/// Matrix of p-values, one row per sample and one column per test.
void write_pvalue_csv(std::ostream& os, const CampaignResult& r);
/// Pass rate and uniformity per test as a fixed-width table.
void write_campaign_table(std::ostream& os, const CampaignResult& r);

/// '0'/'1' characters, most-significant bit first per byte.
std::string bits_to_ascii(std::span<const std::uint8_t> bytes);
void export_bitstream(std::span<const std::uint8_t> bytes, const std::filesystem::path& path);
/// Reads an exported file back. Newlines and spaces are skipped.
BitSample read_bitstream(const std::filesystem::path& path);
/// Packs bits MSB-first; a short final byte is zero-padded.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);

}  // namespace chaoscomp::analysis
