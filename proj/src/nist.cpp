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

#include "chaoscomp/nist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "chaoscomp/errors.hpp"
#include "chaoscomp/special.hpp"

namespace chaoscomp::analysis {

std::string_view nist_test_name(NistTest t) noexcept {
    switch (t) {
        case NistTest::frequency: return "frequency";
        case NistTest::block_frequency: return "block_frequency";
        case NistTest::cumulative_sums: return "cumulative_sums";
        case NistTest::runs: return "runs";
        case NistTest::longest_run: return "longest_run";
        case NistTest::approximate_entropy: return "approximate_entropy";
        case NistTest::serial: return "serial";
    }
    return "?";
}

NistTest nist_test_from_name(std::string_view name) {
    for (NistTest t : implemented_tests) {
        if (nist_test_name(t) == name) return t;
    }
    throw Error(Errc::contract_violation, "unknown test '" + std::string(name) + "'");
}

std::size_t nist_min_length(NistTest t) noexcept {
    switch (t) {
        case NistTest::frequency:
        case NistTest::block_frequency:
        case NistTest::cumulative_sums:
        case NistTest::runs: return 100;
        case NistTest::longest_run: return 128;
        // m < floor(log2 n) - 5
        case NistTest::approximate_entropy: return std::size_t{1} << (approximate_entropy_m + 6);
        // m < floor(log2 n) - 2
        case NistTest::serial: return std::size_t{1} << (serial_m + 3);
    }
    return 0;
}

// --- BitSample ---------------------------------------------------------------

BitSample::BitSample(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw Error(Errc::contract_violation, "bit sample holds a value other than 0/1");
    }
}

BitSample BitSample::from_bytes(std::span<const std::uint8_t> bytes) {
    return from_bytes(bytes, 0, bytes.size() * 8);
}

BitSample BitSample::from_bytes(std::span<const std::uint8_t> bytes, std::size_t first_bit,
                                std::size_t nbits) {
    if (first_bit > bytes.size() * 8 || nbits > bytes.size() * 8 - first_bit) {
        throw Error(Errc::insufficient_data, "not enough bytes for the requested bit range");
    }
    BitSample s;
    s.bits_.resize(nbits);
    for (std::size_t i = 0; i < nbits; ++i) {
        const std::size_t b = first_bit + i;
        s.bits_[i] = (bytes[b >> 3] >> (7 - (b & 7))) & 1u;
    }
    return s;
}

BitSample BitSample::from_string(std::string_view str) {
    BitSample s;
    s.bits_.reserve(str.size());
    for (char c : str) {
        if (c != '0' && c != '1') throw Error(Errc::contract_violation, "bit string holds a non-binary character");
        s.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return s;
}

// --- tests ---------------------------------------------------------------------

namespace {

void require_bits(std::span<const std::uint8_t> bits, std::size_t n_min, const char* what) {
    if (bits.size() < n_min) {
        throw Error(Errc::insufficient_data, std::string(what) + ": sample has " + std::to_string(bits.size()) +
                                                 " bits, needs " + std::to_string(n_min));
    }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

// Overlapping m-bit pattern counts with the first m-1 bits appended.
std::vector<std::uint32_t> pattern_counts(std::span<const std::uint8_t> bits, unsigned m) {
    const std::size_t n = bits.size();
    std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
    if (m == 0) return counts;
    const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
    std::uint32_t w = 0;
    for (unsigned i = 0; i + 1 < m; ++i) w = (w << 1) | bits[i % n];
    for (std::size_t i = 0; i < n; ++i) {
        w = ((w << 1) | bits[(i + m - 1) % n]) & mask;
        ++counts[w];
    }
    return counts;
}

double psi_squared(std::span<const std::uint8_t> bits, int m) {
    if (m <= 0) return 0.0;
    const auto counts = pattern_counts(bits, static_cast<unsigned>(m));
    const double n = static_cast<double>(bits.size());
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    return sum * std::ldexp(1.0, m) / n - n;
}

double apen_phi(std::span<const std::uint8_t> bits, unsigned m) {
    if (m == 0) return 0.0;
    const auto counts = pattern_counts(bits, m);
    const double n = static_cast<double>(bits.size());
    double sum = 0.0;
    for (auto c : counts) {
        if (c > 0) sum += c * std::log(c / n);
    }
    return sum / n;
}

}  // namespace

double frequency_test(std::span<const std::uint8_t> bits) {
    require_bits(bits, 1, "frequency");
    long long s = 0;
    for (auto b : bits) s += b ? 1 : -1;
    const double n = static_cast<double>(bits.size());
    return clamp_p(std::erfc(std::fabs(static_cast<double>(s)) / std::sqrt(2.0 * n)));
}

double block_frequency_test(std::span<const std::uint8_t> bits, std::size_t m) {
    if (m == 0) throw Error(Errc::contract_violation, "block length must be positive");
    require_bits(bits, m, "block_frequency");
    const std::size_t blocks = bits.size() / m;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < blocks; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < m; ++j) ones += bits[i * m + j];
        const double pi = static_cast<double>(ones) / static_cast<double>(m) - 0.5;
        chi2 += pi * pi;
    }
    chi2 *= 4.0 * static_cast<double>(m);
    return clamp_p(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
}

double cumulative_sums_test(std::span<const std::uint8_t> bits, bool reverse) {
    require_bits(bits, 1, "cumulative_sums");
    const std::size_t n_bits = bits.size();
    long long s = 0;
    long long z = 0;
    for (std::size_t i = 0; i < n_bits; ++i) {
        s += bits[reverse ? n_bits - 1 - i : i] ? 1 : -1;
        z = std::max(z, s < 0 ? -s : s);
    }
    const double n = static_cast<double>(n_bits);
    const double zd = static_cast<double>(z);
    const double sqrt_n = std::sqrt(n);
    // Summation bounds truncate toward zero, as in the reference code.
    double sum1 = 0.0;
    for (auto k = static_cast<long long>((-n / zd + 1.0) / 4.0);
         k <= static_cast<long long>((n / zd - 1.0) / 4.0); ++k) {
        sum1 += normal_cdf((4.0 * k + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * k - 1.0) * zd / sqrt_n);
    }
    double sum2 = 0.0;
    for (auto k = static_cast<long long>((-n / zd - 3.0) / 4.0);
         k <= static_cast<long long>((n / zd - 1.0) / 4.0); ++k) {
        sum2 += normal_cdf((4.0 * k + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
    }
    return clamp_p(1.0 - sum1 + sum2);
}

double runs_test(std::span<const std::uint8_t> bits) {
    require_bits(bits, 1, "runs");
    const double n = static_cast<double>(bits.size());
    std::size_t ones = 0;
    for (auto b : bits) ones += b;
    const double pi = static_cast<double>(ones) / n;
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
    std::size_t v = 1;
    for (std::size_t i = 1; i < bits.size(); ++i) v += bits[i] != bits[i - 1];
    const double num = std::fabs(static_cast<double>(v) - 2.0 * n * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    return clamp_p(std::erfc(num / den));
}

double longest_run_test(std::span<const std::uint8_t> bits) {
    require_bits(bits, 128, "longest_run");
    struct Table {
        std::size_t m;
        unsigned v_min;  // runs <= v_min fall in class 0
        std::vector<double> pi;
    };
    static const Table small{8, 1, {0.21484375, 0.3671875, 0.23046875, 0.1875}};
    static const Table medium{128, 4, {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847}};
    static const Table large{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
    const Table& t = bits.size() < 6272 ? small : bits.size() < 750000 ? medium : large;

    const std::size_t k = t.pi.size() - 1;
    const std::size_t blocks = bits.size() / t.m;
    std::vector<std::size_t> nu(t.pi.size(), 0);
    for (std::size_t i = 0; i < blocks; ++i) {
        unsigned run = 0;
        unsigned longest = 0;
        for (std::size_t j = 0; j < t.m; ++j) {
            run = bits[i * t.m + j] ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        const std::size_t cls = longest <= t.v_min ? 0 : std::min<std::size_t>(longest - t.v_min, k);
        ++nu[cls];
    }
    double chi2 = 0.0;
    const double nb = static_cast<double>(blocks);
    for (std::size_t i = 0; i <= k; ++i) {
        const double expected = nb * t.pi[i];
        const double d = static_cast<double>(nu[i]) - expected;
        chi2 += d * d / expected;
    }
    return clamp_p(igamc(static_cast<double>(k) / 2.0, chi2 / 2.0));
}

double approximate_entropy_test(std::span<const std::uint8_t> bits, unsigned m) {
    if (m == 0 || m > 24) throw Error(Errc::contract_violation, "approximate entropy block length out of range");
    require_bits(bits, m + 1, "approximate_entropy");
    const double n = static_cast<double>(bits.size());
    const double apen = apen_phi(bits, m) - apen_phi(bits, m + 1);
    const double chi2 = 2.0 * n * (std::numbers::ln2 - apen);
    return clamp_p(igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0));
}

SerialResult serial_test(std::span<const std::uint8_t> bits, unsigned m) {
    if (m < 2 || m > 24) throw Error(Errc::contract_violation, "serial block length out of range");
    require_bits(bits, m, "serial");
    const int mi = static_cast<int>(m);
    const double p0 = psi_squared(bits, mi);
    const double p1 = psi_squared(bits, mi - 1);
    const double p2 = psi_squared(bits, mi - 2);
    const double del1 = p0 - p1;
    const double del2 = p0 - 2.0 * p1 + p2;
    return {clamp_p(igamc(std::ldexp(1.0, mi - 2), del1 / 2.0)),
            clamp_p(igamc(std::ldexp(1.0, mi - 3), del2 / 2.0))};
}

double nist_subset(const BitSample& sample, NistTest t) {
    const auto bits = sample.bits();
    require_bits(bits, nist_min_length(t), std::string(nist_test_name(t)).c_str());
    switch (t) {
        case NistTest::frequency: return frequency_test(bits);
        case NistTest::block_frequency: return block_frequency_test(bits);
        case NistTest::cumulative_sums: return cumulative_sums_test(bits);
        case NistTest::runs: return runs_test(bits);
        case NistTest::longest_run: return longest_run_test(bits);
        case NistTest::approximate_entropy: return approximate_entropy_test(bits);
        case NistTest::serial: return serial_test(bits).p1;
    }
    throw Error(Errc::contract_violation, "unknown test");
}

// --- campaign ------------------------------------------------------------------

const AnalysisReport& CampaignResult::report(NistTest t) const {
    const auto it = std::find(implemented_tests.begin(), implemented_tests.end(), t);
    const auto idx = static_cast<std::size_t>(it - implemented_tests.begin());
    if (idx >= reports.size()) throw Error(Errc::contract_violation, "test not in campaign");
    return reports[idx];
}

CampaignResult nist_campaign(std::span<const std::uint8_t> data, std::size_t samples, std::size_t length,
                             double alpha) {
    if (samples == 0) throw Error(Errc::contract_violation, "campaign needs at least one sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::contract_violation, "alpha must lie in (0, 1)");
    if (length > data.size() * 8 / samples) {
        throw Error(Errc::insufficient_data, "campaign needs " + std::to_string(samples) + " x " +
                                                 std::to_string(length) + " bits, have " +
                                                 std::to_string(data.size() * 8));
    }
    CampaignResult r;
    for (NistTest t : implemented_tests) {
        if (length < nist_min_length(t)) {
            throw Error(Errc::insufficient_data, std::string(nist_test_name(t)) + " needs samples of at least " +
                                                     std::to_string(nist_min_length(t)) + " bits");
        }
        AnalysisReport rep;
        rep.metric = std::string(nist_test_name(t));
        rep.sample_length = length;
        rep.sample_count = samples;
        rep.alpha = alpha;
        rep.values.reserve(samples);
        r.reports.push_back(std::move(rep));
    }
    for (std::size_t s = 0; s < samples; ++s) {
        const BitSample sample = BitSample::from_bytes(data, s * length, length);
        for (std::size_t i = 0; i < implemented_tests.size(); ++i) {
            r.reports[i].values.push_back(nist_subset(sample, implemented_tests[i]));
        }
    }
    for (auto& rep : r.reports) {
        const auto passed = std::count_if(rep.values.begin(), rep.values.end(), [&](double p) { return p >= alpha; });
        rep.aggregate = static_cast<double>(passed) / static_cast<double>(samples);
    }
    return r;
}

double pvalue_uniformity(std::span<const double> pvalues) {
    if (pvalues.empty()) throw Error(Errc::insufficient_data, "no p-values to bin");
    std::array<std::size_t, 10> bins{};
    for (double p : pvalues) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::contract_violation, "p-value outside [0, 1]");
        ++bins[std::min<std::size_t>(static_cast<std::size_t>(p * 10.0), 9)];
    }
    const double expected = static_cast<double>(pvalues.size()) / 10.0;
    double chi2 = 0.0;
    for (auto f : bins) {
        const double d = static_cast<double>(f) - expected;
        chi2 += d * d / expected;
    }
    return igamc(4.5, chi2 / 2.0);
}

void write_pvalue_csv(std::ostream& os, const CampaignResult& r) {
    os << "sample";
    for (const auto& rep : r.reports) os << ',' << rep.metric;
    os << '\n';
    const std::size_t rows = r.reports.empty() ? 0 : r.reports.front().values.size();
    os << std::setprecision(6) << std::fixed;
    for (std::size_t s = 0; s < rows; ++s) {
        os << s;
        for (const auto& rep : r.reports) os << ',' << rep.values[s];
        os << '\n';
    }
    os << std::defaultfloat;
}

void write_campaign_table(std::ostream& os, const CampaignResult& r) {
    os << std::left << std::setw(22) << "test" << std::right << std::setw(10) << "pass_rate" << std::setw(14)
       << "uniformity_p" << '\n';
    for (const auto& rep : r.reports) {
        os << std::left << std::setw(22) << rep.metric << std::right << std::fixed << std::setprecision(4)
           << std::setw(10) << rep.aggregate << std::setw(14) << pvalue_uniformity(rep.values) << '\n';
    }
    os << std::defaultfloat;
}

// --- bitstream export ------------------------------------------------------------

std::string bits_to_ascii(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 8);
    for (auto b : bytes) {
        for (int i = 7; i >= 0; --i) out.push_back(((b >> i) & 1u) ? '1' : '0');
    }
    return out;
}

void export_bitstream(std::span<const std::uint8_t> bytes, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
    constexpr std::size_t batch = 1u << 16;
    for (std::size_t off = 0; off < bytes.size(); off += batch) {
        const auto s = bits_to_ascii(bytes.subspan(off, std::min(batch, bytes.size() - off)));
        f.write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    f.close();
    if (!f) throw Error(Errc::io_error, "failed to write " + path.string());
}

BitSample read_bitstream(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::io_error, "cannot open " + path.string());
    std::vector<std::uint8_t> bits;
    char c;
    while (f.get(c)) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (c != '\n' && c != '\r' && c != ' ' && c != '\t') {
            throw Error(Errc::format_error, "bitstream file holds a non-binary character");
        }
    }
    if (f.bad()) throw Error(Errc::io_error, "failed to read " + path.string());
    return BitSample(std::move(bits));
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
    }
    return out;
}

}  // namespace chaoscomp::analysis
