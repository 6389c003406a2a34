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

// chaoscomp: command-line front end for the cipher, the map instruments and
// the security harness. Exit status is 0 on success, 2 on usage errors,
// 10 + error class for library failures (see README) and 1 otherwise.

#include <fcntl.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chaoscomp/characterize.hpp"
#include "chaoscomp/codec.hpp"
#include "chaoscomp/corpus.hpp"
#include "chaoscomp/errors.hpp"
#include "chaoscomp/keys.hpp"
#include "chaoscomp/nist.hpp"
#include "chaoscomp/pipeline.hpp"
#include "chaoscomp/security.hpp"
#include "chaoscomp/stats.hpp"

namespace fs = std::filesystem;
using namespace chaoscomp;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_library_base = 10;
constexpr const char* key_env = "CHAOSCOMP_KEY";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes to a sibling temporary file and renames it over `path` on commit.
// Uncommitted output is removed. "-" means standard output.
class AtomicOutput {
public:
    explicit AtomicOutput(std::string path) : path_(std::move(path)) {
        if (path_ == "-") return;
        std::string tmpl = path_ + ".tmp-XXXXXX";
        const int fd = ::mkstemp(tmpl.data());
        if (fd < 0) throw Error(Errc::io_error, "cannot create a temporary file next to " + path_);
        ::close(fd);
        tmp_ = tmpl;
        file_.open(tmp_, std::ios::binary | std::ios::trunc);
        if (!file_) {
            std::remove(tmp_.c_str());
            throw Error(Errc::io_error, "cannot open " + tmp_);
        }
    }

    AtomicOutput(const AtomicOutput&) = delete;
    AtomicOutput& operator=(const AtomicOutput&) = delete;

    ~AtomicOutput() {
        if (!tmp_.empty() && !committed_) {
            file_.close();
            std::remove(tmp_.c_str());
        }
    }

    std::ostream& stream() { return tmp_.empty() ? std::cout : file_; }

    void commit() {
        if (tmp_.empty()) {
            std::cout.flush();
            if (!std::cout) throw Error(Errc::io_error, "failed to write standard output");
            return;
        }
        file_.close();
        if (!file_) throw Error(Errc::io_error, "failed to write " + tmp_);
        if (std::rename(tmp_.c_str(), path_.c_str()) != 0) {
            throw Error(Errc::io_error, "cannot rename output into place at " + path_);
        }
        committed_ = true;
    }

private:
    std::string path_;
    std::string tmp_;
    std::ofstream file_;
    bool committed_ = false;
};

class Input {
public:
    explicit Input(const std::string& path) {
        if (path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw Error(Errc::io_error, "cannot open " + path);
        use_file_ = true;
    }

    std::istream& stream() { return use_file_ ? file_ : std::cin; }

private:
    std::ifstream file_;
    bool use_file_ = false;
};

std::vector<std::uint8_t> read_all(const std::string& path) {
    Input in(path);
    std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in.stream())), std::istreambuf_iterator<char>());
    if (in.stream().bad()) throw Error(Errc::io_error, "failed to read " + path);
    return out;
}

keys::ChaosKey resolve_key(const std::string& key_path) {
    std::string path = key_path;
    if (path.empty()) {
        if (const char* env = std::getenv(key_env)) path = env;
    }
    if (path.empty()) throw UsageError(std::string("no key file: pass --key or set ") + key_env);
    return keys::load_key_file(path);
}

void add_key_option(CLI::App* cmd, std::string& key_path) {
    cmd->add_option("--key", key_path, std::string("Key file path (default: $") + key_env + ")");
}

// --- keygen --------------------------------------------------------------------

struct KeygenArgs {
    std::string out;
    bool force = false;
    std::optional<std::uint64_t> seed;
};

int cmd_keygen(const KeygenArgs& a) {
    if (!a.force && fs::exists(a.out)) throw UsageError(a.out + " exists (use --force to overwrite)");
    keys::ChaosKey k;
    if (a.seed) {
        std::mt19937_64 rng(*a.seed);
        k = keys::keygen(rng);
    } else {
        k = keys::keygen();
    }
    const keys::Validation v = keys::validate_key(k);
    for (const auto& w : v.warnings) std::cerr << "warning: " << w << '\n';
    keys::save_key_file(a.out, k);
    return 0;
}

// --- encrypt / decrypt ------------------------------------------------------------

struct CryptArgs {
    std::string in = "-";
    std::string out = "-";
    std::string key;
    std::string codec = "baseline";
    std::string mode = "sce";
    std::uint32_t chunk_size = pipeline::default_chunk_size;
};

int cmd_encrypt(const CryptArgs& a) {
    const keys::ChaosKey k = resolve_key(a.key);
    const pipeline::EncryptOptions opt{codec::codec_from_name(a.codec), pipeline::mode_from_name(a.mode),
                                       a.chunk_size};
    Input in(a.in);
    AtomicOutput out(a.out);
    pipeline::encrypt_stream(in.stream(), out.stream(), k, opt);
    out.commit();
    return 0;
}

int cmd_decrypt(const CryptArgs& a) {
    const keys::ChaosKey k = resolve_key(a.key);
    Input in(a.in);
    AtomicOutput out(a.out);
    pipeline::decrypt_stream(in.stream(), out.stream(), k);
    out.commit();
    return 0;
}

// --- characterize -----------------------------------------------------------------

struct CharacterizeArgs {
    std::string map = "all";
    std::string instrument;
    std::vector<double> params;
    double lo = 2.5;
    double hi = 4.0;
    std::size_t steps = 200;
    std::size_t samples = 100;
    std::size_t iterations = 1000000;
    std::size_t bytes = 1u << 20;
    std::uint64_t seed = 1;
    std::string out = "-";
};

std::vector<chaos::MapId> selected_maps(const std::string& name) {
    if (name == "all") {
        return {chaos::MapId::logistic, chaos::MapId::tent, chaos::MapId::henon, chaos::MapId::lorenz,
                chaos::MapId::chirikov};
    }
    return {chaos::map_from_name(name)};
}

chaos::CharacterizationMap configured_map(chaos::MapId id, const std::vector<double>& params) {
    auto m = chaos::CharacterizationMap::defaults(id);
    if (params.size() > m.params.size()) throw UsageError("at most 4 --param values");
    for (std::size_t i = 0; i < params.size(); ++i) m.params[i] = params[i];
    return m;
}

int cmd_characterize(const CharacterizeArgs& a) {
    const auto maps = selected_maps(a.map);
    AtomicOutput out(a.out);
    std::ostream& os = out.stream();
    os << std::setprecision(10);
    if (a.instrument == "lyapunov") {
        // Long format: parameters and the exponent as metric rows per map.
        os << "map,metric,value\n";
        for (auto id : maps) {
            const auto m = configured_map(id, a.params);
            const auto name = chaos::map_name(id);
            const std::size_t used = id == chaos::MapId::lorenz ? 4 : id == chaos::MapId::henon ? 2 : 1;
            for (std::size_t i = 0; i < used; ++i) os << name << ",param" << i << ',' << m.params[i] << '\n';
            os << name << ",lyapunov," << chaos::lyapunov_exponent(m, a.iterations) << '\n';
        }
    } else if (a.instrument == "bifurcation") {
        if (maps.size() != 1) throw UsageError("bifurcation needs a single --map");
        const auto rows = chaos::bifurcation_scan(configured_map(maps.front(), a.params), a.lo, a.hi, a.steps,
                                                  a.samples);
        chaos::write_bifurcation_csv(os, rows);
    } else if (a.instrument == "bench") {
        const auto data = corpus::random_bytes(a.bytes, a.seed);
        os << "map,correlation,bytes_per_second\n";
        for (auto id : maps) {
            const auto b = chaos::map_benchmark(configured_map(id, a.params), a.bytes, data);
            os << chaos::map_name(id) << ',' << b.correlation << ',' << b.bytes_per_second << '\n';
        }
    } else {
        throw UsageError("unknown instrument '" + a.instrument + "'");
    }
    out.commit();
    return 0;
}

// --- analyze ------------------------------------------------------------------------

struct AnalyzeArgs {
    std::string kind;
    std::string in = "-";
    std::string key;
    std::string out;
    std::string codec = "baseline";
    std::string mode = "sce";
    std::size_t trials = 20;
    std::size_t samples = 1;
    std::size_t length = 1000000;
    double alpha = analysis::default_alpha;
    std::uint64_t seed = 1;
    bool encrypt_input = false;
    bool weak_control = false;
};

void write_metric_csv(const std::string& path, const std::vector<std::pair<std::string, double>>& rows) {
    if (path.empty()) return;
    AtomicOutput out(path);
    out.stream() << std::setprecision(10) << "metric,value\n";
    for (const auto& [name, value] : rows) out.stream() << name << ',' << value << '\n';
    out.commit();
}

int analyze_sensitivity(const AnalyzeArgs& a, bool key_flip) {
    const keys::ChaosKey k = resolve_key(a.key);
    const auto p = read_all(a.in);
    if (p.empty()) throw Error(Errc::empty_input, "input is empty");
    const pipeline::EncryptOptions opt{codec::codec_from_name(a.codec), pipeline::mode_from_name(a.mode)};
    std::mt19937_64 rng(a.seed);
    const std::size_t bits = key_flip ? keys::key_bits : p.size() * 8;
    std::uniform_int_distribution<std::size_t> pick(0, bits - 1);

    std::ostringstream csv;
    csv << std::setprecision(10) << "trial,bit,cc,csi,csi_baseline,length_a,length_b\n";
    double sum_cc = 0.0;
    double sum_dev = 0.0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        const std::size_t bit = pick(rng);
        const auto r = key_flip ? analysis::key_sensitivity(p, k, bit, opt) : analysis::plaintext_sensitivity(p, k, bit, opt);
        const auto& s = r.similarity;
        sum_cc += std::fabs(s.cc);
        sum_dev += std::fabs(s.csi_deviation());
        csv << t << ',' << *r.flipped_bit << ',' << s.cc << ',' << s.csi << ',' << s.csi_baseline << ','
            << s.length_a << ',' << s.length_b << '\n';
    }
    const double n = static_cast<double>(std::max<std::size_t>(a.trials, 1));
    std::cout << (key_flip ? "key" : "plaintext") << " sensitivity over " << a.trials
              << " trials: mean |cc| = " << sum_cc / n << ", mean |csi - baseline| = " << sum_dev / n << '\n';
    if (!a.out.empty()) {
        AtomicOutput out(a.out);
        out.stream() << csv.str();
        out.commit();
    }
    return 0;
}

int cmd_analyze(const AnalyzeArgs& a) {
    if (a.kind == "cc" || a.kind == "csi") {
        const keys::ChaosKey k = resolve_key(a.key);
        const auto p = read_all(a.in);
        if (p.empty()) throw Error(Errc::empty_input, "input is empty");
        const pipeline::EncryptOptions opt{codec::codec_from_name(a.codec), pipeline::mode_from_name(a.mode)};
        if (a.kind == "cc") {
            const double cc = analysis::plain_cipher_correlation(p, k, opt);
            std::cout << "plain-cipher cc = " << cc << '\n';
            write_metric_csv(a.out, {{"cc", cc}});
        } else {
            const auto c = pipeline::encrypt(p, k, opt).body;
            const auto s = analysis::compare_ciphertexts(p, c);
            std::cout << "plain-cipher csi = " << s.csi << " (independent baseline " << s.csi_baseline << ")\n";
            write_metric_csv(a.out, {{"csi", s.csi}, {"csi_baseline", s.csi_baseline}});
        }
        return 0;
    }
    if (a.kind == "keysens") return analyze_sensitivity(a, true);
    if (a.kind == "ptsens") return analyze_sensitivity(a, false);
    if (a.kind == "chen") {
        const keys::ChaosKey k = resolve_key(a.key);
        const auto target = a.weak_control ? analysis::ChenTarget::weak_control : analysis::ChenTarget::pipeline;
        const std::size_t found = analysis::chen_property_check(k, a.trials, target, a.seed);
        std::cout << found << " violations in " << a.trials << " trials ("
                  << (a.weak_control ? "weak control" : "pipeline") << ")\n";
        write_metric_csv(a.out, {{"violations", static_cast<double>(found)}});
        return 0;
    }
    if (a.kind == "nist" || a.kind == "export-bits") {
        auto data = read_all(a.in);
        if (a.encrypt_input) {
            if (data.empty()) throw Error(Errc::empty_input, "input is empty");
            const pipeline::EncryptOptions opt{codec::codec_from_name(a.codec), pipeline::mode_from_name(a.mode)};
            data = pipeline::encrypt(data, resolve_key(a.key), opt).body;
        }
        if (a.kind == "export-bits") {
            if (a.out.empty()) throw UsageError("export-bits needs --out");
            analysis::export_bitstream(data, a.out);
            return 0;
        }
        const auto r = analysis::nist_campaign(data, a.samples, a.length, a.alpha);
        if (a.samples == 1) {
            for (const auto& rep : r.reports) {
                std::cout << std::left << std::setw(22) << rep.metric << std::right << std::fixed
                          << std::setprecision(6) << rep.values.front() << '\n';
            }
        } else {
            analysis::write_campaign_table(std::cout, r);
        }
        if (!a.out.empty()) {
            AtomicOutput out(a.out);
            analysis::write_pvalue_csv(out.stream(), r);
            out.commit();
        }
        return 0;
    }
    throw UsageError("unknown analysis kind '" + a.kind + "'");
}

// --- bench --------------------------------------------------------------------------

struct BenchArgs {
    std::string in;
    std::string corpus = "zipf";
    std::size_t size = 1u << 20;
    std::uint64_t seed = 1;
    std::string key;
    std::uint32_t chunk_size = pipeline::default_chunk_size;
    std::string out = "-";
};

int cmd_bench(const BenchArgs& a) {
    std::vector<std::uint8_t> data;
    if (!a.in.empty()) {
        data = read_all(a.in);
    } else if (a.corpus == "zipf") {
        data = corpus::zipf_bytes(a.size, a.seed);
    } else if (a.corpus == "random") {
        data = corpus::random_bytes(a.size, a.seed);
    } else {
        throw UsageError("unknown corpus '" + a.corpus + "'");
    }
    if (data.empty()) throw Error(Errc::empty_input, "benchmark corpus is empty");

    keys::ChaosKey k;
    const char* env = std::getenv(key_env);
    if (!a.key.empty() || (env != nullptr && *env != '\0')) {
        k = resolve_key(a.key);
    } else {
        std::mt19937_64 rng(a.seed);
        k = keys::keygen(rng);
    }

    const std::vector<codec::CodecId> codecs{codec::CodecId::store, codec::CodecId::baseline,
                                             codec::CodecId::external};
    const std::vector<pipeline::Mode> modes{pipeline::Mode::sce, pipeline::Mode::cte, pipeline::Mode::etc};
    const auto comp = codec::compression_benchmark(data, codecs);
    const auto rows = pipeline::pipeline_benchmark(data, k, modes, codecs, a.chunk_size);

    // Deterministic columns go to the CSV; timings go to standard error.
    AtomicOutput out(a.out);
    std::ostream& os = out.stream();
    os << std::setprecision(6) << "kind,mode,codec,original_size,stored_size,ratio\n";
    for (const auto& r : comp) {
        os << "codec,," << codec::codec_name(r.codec) << ',' << r.original_size << ',' << r.compressed_size << ','
           << r.ratio << '\n';
    }
    for (const auto& r : rows) {
        os << "pipeline," << pipeline::mode_name(r.mode) << ',' << codec::codec_name(r.codec) << ','
           << r.original_size << ',' << r.body_size << ',' << r.ratio << '\n';
    }
    out.commit();

    std::cerr << std::fixed << std::setprecision(4);
    for (const auto& r : comp) {
        std::cerr << "codec    " << std::setw(9) << codec::codec_name(r.codec) << "  compress " << r.compress_seconds
                  << " s  decompress " << r.decompress_seconds << " s\n";
    }
    for (const auto& r : rows) {
        std::cerr << "pipeline " << pipeline::mode_name(r.mode) << ' ' << std::setw(8) << codec::codec_name(r.codec)
                  << "  encrypt " << r.encrypt_seconds << " s  decrypt " << r.decrypt_seconds << " s\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"chaoscomp: chaos-map cipher fused with compression"};
    app.require_subcommand(1);
    const auto codecs = CLI::IsMember({"store", "baseline", "zstd"});
    const auto modes = CLI::IsMember({"sce", "cte", "etc"});

    KeygenArgs kg;
    auto* keygen = app.add_subcommand("keygen", "Generate a key file (owner-only permissions)");
    keygen->add_option("--out", kg.out, "Key file to write")->required();
    keygen->add_flag("--force", kg.force, "Overwrite an existing file");
    keygen->add_option("--seed", kg.seed, "Deterministic seed; for reproducible test keys only");

    CryptArgs enc;
    auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file or standard input into a container");
    encrypt->add_option("--in", enc.in, "Input path, - for standard input")->capture_default_str();
    encrypt->add_option("--out", enc.out, "Output path, - for standard output")->capture_default_str();
    add_key_option(encrypt, enc.key);
    encrypt->add_option("--codec", enc.codec, "store | baseline | zstd")->check(codecs)->capture_default_str();
    encrypt->add_option("--mode", enc.mode, "sce | cte | etc")->check(modes)->capture_default_str();
    encrypt->add_option("--chunk-size", enc.chunk_size, "Chunk size in bytes (4 KiB .. 64 MiB)")
        ->capture_default_str();

    CryptArgs dec;
    auto* decrypt = app.add_subcommand("decrypt", "Decrypt a container");
    decrypt->add_option("--in", dec.in, "Input path, - for standard input")->capture_default_str();
    decrypt->add_option("--out", dec.out, "Output path, - for standard output")->capture_default_str();
    add_key_option(decrypt, dec.key);

    CharacterizeArgs ch;
    auto* characterize = app.add_subcommand("characterize", "Lyapunov exponents, bifurcation scans, map benchmarks");
    characterize->add_option("--instrument", ch.instrument, "lyapunov | bifurcation | bench")
        ->required()
        ->check(CLI::IsMember({"lyapunov", "bifurcation", "bench"}));
    characterize->add_option("--map", ch.map, "logistic | tent | henon | lorenz | chirikov | all")
        ->check(CLI::IsMember({"logistic", "tent", "henon", "lorenz", "chirikov", "all"}))
        ->capture_default_str();
    characterize->add_option("--param", ch.params, "Map parameters in order, overriding the defaults");
    characterize->add_option("--lo", ch.lo, "Bifurcation scan start")->capture_default_str();
    characterize->add_option("--hi", ch.hi, "Bifurcation scan end")->capture_default_str();
    characterize->add_option("--steps", ch.steps, "Bifurcation parameter steps")->capture_default_str();
    characterize->add_option("--samples", ch.samples, "Iterates recorded per step")->capture_default_str();
    characterize->add_option("--iterations", ch.iterations, "Lyapunov iterations (>= 100000)")
        ->capture_default_str();
    characterize->add_option("--bytes", ch.bytes, "Keystream bytes per benchmark")->capture_default_str();
    characterize->add_option("--seed", ch.seed, "Benchmark corpus seed")->capture_default_str();
    characterize->add_option("--out", ch.out, "CSV output, - for standard output")->capture_default_str();

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Security analysis and randomness tests");
    analyze->add_option("--kind", an.kind, "cc | csi | keysens | ptsens | chen | nist | export-bits")
        ->required()
        ->check(CLI::IsMember({"cc", "csi", "keysens", "ptsens", "chen", "nist", "export-bits"}));
    analyze->add_option("--in", an.in, "Input path, - for standard input")->capture_default_str();
    add_key_option(analyze, an.key);
    analyze->add_option("--out", an.out, "CSV (or bitstream for export-bits) output");
    analyze->add_option("--codec", an.codec, "Codec used when encrypting")->check(codecs)->capture_default_str();
    analyze->add_option("--mode", an.mode, "Mode used when encrypting")->check(modes)->capture_default_str();
    analyze->add_option("--trials", an.trials, "Trials for keysens, ptsens and chen")->capture_default_str();
    analyze->add_option("--samples", an.samples, "NIST samples")->capture_default_str();
    analyze->add_option("--length", an.length, "NIST sample length in bits")->capture_default_str();
    analyze->add_option("--alpha", an.alpha, "NIST significance level")->capture_default_str();
    analyze->add_option("--seed", an.seed, "Seed for bit choices and chen plaintexts")->capture_default_str();
    analyze->add_flag("--encrypt", an.encrypt_input, "nist/export-bits: encrypt the input first");
    analyze->add_flag("--weak-control", an.weak_control, "chen: run the permute-then-XOR control cipher");

    BenchArgs bn;
    auto* bench = app.add_subcommand("bench", "Codec and pipeline benchmarks");
    bench->add_option("--in", bn.in, "Corpus file (default: synthetic)");
    bench->add_option("--corpus", bn.corpus, "Synthetic corpus: zipf | random")
        ->check(CLI::IsMember({"zipf", "random"}))
        ->capture_default_str();
    bench->add_option("--size", bn.size, "Synthetic corpus size in bytes")->capture_default_str();
    bench->add_option("--seed", bn.seed, "Corpus and benchmark-key seed")->capture_default_str();
    add_key_option(bench, bn.key);
    bench->add_option("--chunk-size", bn.chunk_size, "Chunk size in bytes")->capture_default_str();
    bench->add_option("--out", bn.out, "CSV output, - for standard output")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*keygen) return cmd_keygen(kg);
        if (*encrypt) return cmd_encrypt(enc);
        if (*decrypt) return cmd_decrypt(dec);
        if (*characterize) return cmd_characterize(ch);
        if (*analyze) return cmd_analyze(an);
        if (*bench) return cmd_bench(bn);
    } catch (const UsageError& e) {
        std::cerr << "chaoscomp: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "chaoscomp: " << errc_name(e.code()) << ": " << e.what() << '\n';
        return exit_library_base + static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "chaoscomp: " << e.what() << '\n';
        return 1;
    }
    return exit_usage;
}
