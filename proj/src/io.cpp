#include "blindlink/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "blindlink/version.hpp"

namespace blindlink {

namespace {

constexpr double rad_to_deg = 180.0 / M_PI;

std::string gain_db_string(double gain) {
    // Exact pattern zeros would print as -inf; clamp far below anything physical.
    if (!(gain > 1e-300)) return "-3000";
    return format_double(10.0 * std::log10(gain));
}

void write_file(const std::string& out_dir, const std::string& name, const std::string& content,
                RunManifest& manifest) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(0, "cannot write output file '" + path.string() + "'");
    out << content;
    manifest.outputs.push_back(name);
}

RunManifest make_manifest(const char* subcommand, const ScenarioConfig& cfg,
                          const RunOptions& opts) {
    RunManifest m;
    m.tool = std::string("blindlink ") + version_string;
    m.subcommand = subcommand;
    m.settings = cfg.summary();
    m.settings.emplace_back("grid_deg", format_double(opts.grid.theta_min_deg) + ":" +
                                            format_double(opts.grid.step_deg) + ":" +
                                            format_double(opts.grid.theta_max_deg));
    if (opts.exclude_main_lobe_deg) {
        m.settings.emplace_back("exclude_main_lobe_deg",
                                format_double(*opts.exclude_main_lobe_deg));
    }
    if (opts.seed) m.settings.emplace_back("seed_override", std::to_string(*opts.seed));
    return m;
}

void finish(RunManifest& manifest, const std::string& out_dir) {
    // The manifest lists itself last so the outputs section is complete.
    manifest.outputs.push_back("manifest.txt");
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path = std::filesystem::path(out_dir) / "manifest.txt";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(0, "cannot write '" + path.string() + "'");
    out << manifest.text();
}

std::vector<std::uint8_t> parse_bit_string(const std::string& bits) {
    std::vector<std::uint8_t> out;
    out.reserve(bits.size());
    for (char c : bits) {
        if (c == '_' || c == ' ') continue;  // optional grouping
        if (c != '0' && c != '1') throw ConfigError(0, "bits must be a string of 0s and 1s");
        out.push_back(c == '1');
    }
    return out;
}

std::vector<std::uint8_t> message_bits(const ScenarioConfig& cfg, const RunOptions& opts) {
    if (!opts.bits.empty()) return parse_bit_string(opts.bits);
    std::mt19937_64 rng(opts.seed.value_or(cfg.seed) ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::uint8_t> out(opts.random_bits);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng() & 1u);
    return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (std::uint8_t b : bits) s += b ? '1' : '0';
    return s;
}

std::string codeword_file(const ScenarioConfig& cfg, const SymbolStream& stream,
                          const std::vector<Codeword>& codewords, std::size_t symbol_count) {
    std::ostringstream out;
    out << "# blindlink codewords\n";
    out << "# p " << cfg.prime << "\n";
    out << "# q " << cfg.plan.q << "\n";
    out << "# scheme " << (cfg.scheme == Scheme::single_message ? 1 : 2) << "\n";
    out << "# bits_per_symbol " << stream.bits_per_symbol << "\n";
    out << "# pad_bits " << stream.pad_bits << "\n";
    out << "# symbol_count " << symbol_count << "\n";
    for (const Codeword& cw : codewords) out << format_codeword(cw) << "\n";
    return out.str();
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string RunManifest::text() const {
    std::ostringstream out;
    out << tool << "\n";
    out << "subcommand = " << subcommand << "\n";
    out << "[settings]\n";
    for (const auto& [key, value] : settings) out << key << " = " << value << "\n";
    if (!results.empty()) {
        out << "[results]\n";
        for (const auto& [key, value] : results) out << key << " = " << value << "\n";
    }
    if (!notes.empty()) {
        out << "[notes]\n";
        for (const std::string& note : notes) out << note << "\n";
    }
    out << "[outputs]\n";
    for (const std::string& name : outputs) out << name << "\n";
    return out.str();
}

RunManifest run_patterns(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir) {
    RunManifest manifest = make_manifest("patterns", cfg, opts);
    const auto antenna = cfg.make_antenna();

    std::vector<double> freqs = opts.pattern_freqs_hz;
    if (freqs.empty()) {
        for (std::size_t i = 0; i < cfg.plan.q; ++i) freqs.push_back(cfg.plan.channel_center_hz(i));
    }
    for (std::size_t fi = 0; fi < freqs.size(); ++fi) {
        std::ostringstream csv;
        csv << "theta_deg,gain_db\n";
        for (std::size_t a = 0; a < opts.grid.size(); ++a) {
            csv << format_double(opts.grid.angle_deg(a)) << ","
                << gain_db_string(antenna->gain(freqs[fi], opts.grid.angle_rad(a))) << "\n";
        }
        char name[64];
        std::snprintf(name, sizeof(name), "pattern_%03zu.csv", fi);
        manifest.results.emplace_back(std::string(name) + ".f_hz", format_double(freqs[fi]));
        write_file(out_dir, name, csv.str(), manifest);
    }
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_blindmap(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir) {
    RunManifest manifest = make_manifest("blindmap", cfg, opts);
    const auto antenna = cfg.make_antenna();
    const auto medium = cfg.make_medium();

    const ResolvedPlan resolved = resolve_policy(cfg.plan, *antenna, *medium, cfg.bob);
    const BlindMap map = compute_blind_map(resolved, *antenna, *medium, cfg.eve_range_m, opts.grid);

    std::ostringstream csv;
    csv << "theta_deg,gamma";
    for (std::size_t c = 0; c < map.q; ++c) csv << ",S_ch" << c;
    csv << "\n";
    for (std::size_t a = 0; a < map.grid.size(); ++a) {
        csv << format_double(map.grid.angle_deg(a)) << "," << map.gamma[a];
        for (std::size_t c = 0; c < map.q; ++c) csv << "," << format_double(map.intensity_at(c, a));
        csv << "\n";
    }
    write_file(out_dir, "blindmap.csv", csv.str(), manifest);

    manifest.results.emplace_back("blind_fraction", format_double(map.blind_fraction));
    if (opts.exclude_main_lobe_deg) {
        manifest.results.emplace_back(
            "blind_fraction_excluding_main_lobe",
            format_double(blind_fraction_excluding(map, -*opts.exclude_main_lobe_deg,
                                                   *opts.exclude_main_lobe_deg)));
    }
    const std::vector<AngularInterval> intervals = blind_intervals(map);
    manifest.results.emplace_back("blind_interval_count", std::to_string(intervals.size()));
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_sweep(const ScenarioConfig& cfg, const RunOptions& opts,
                      const std::string& out_dir) {
    RunManifest manifest = make_manifest("sweep", cfg, opts);
    if (!cfg.sweep) throw ConfigError(0, "sweep needs a [sweep] section");
    const auto antenna = cfg.make_antenna();
    const auto medium = cfg.make_medium();

    const std::vector<SweepPoint> points =
        blind_fraction_sweep(cfg.plan, *antenna, *medium, cfg.bob, cfg.eve_range_m, opts.grid,
                             cfg.sweep->variable, cfg.sweep->values);

    std::ostringstream csv;
    csv << "swept_value,blind_fraction\n";
    for (const SweepPoint& point : points) {
        if (point.ok) {
            csv << format_double(point.value) << "," << format_double(point.blind_fraction)
                << "\n";
        } else {
            manifest.notes.push_back("skipped value " + format_double(point.value) + ": " +
                                     point.error);
        }
    }
    write_file(out_dir, "sweep.csv", csv.str(), manifest);
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_capacity(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir) {
    RunManifest manifest = make_manifest("capacity", cfg, opts);
    const auto antenna = cfg.make_antenna();
    const auto medium = cfg.make_medium();

    const ResolvedPlan resolved = resolve_policy(cfg.plan, *antenna, *medium, cfg.bob);
    std::ostringstream csv;
    csv << "channel,f_center_hz,s_bob_w_per_m2,capacity_bits_per_s\n";
    double total = 0.0;
    for (std::size_t i = 0; i < cfg.plan.q; ++i) {
        const double s = received_intensity(resolved, *antenna, *medium, cfg.bob, i);
        const double cap = subchannel_capacity_bits(s, cfg.plan.delta_w_per_m2_hz,
                                                    cfg.plan.subchannel_width_hz());
        total += cap;
        csv << i << "," << format_double(cfg.plan.channel_center_hz(i)) << "," << format_double(s)
            << "," << format_double(cap) << "\n";
    }
    write_file(out_dir, "capacity.csv", csv.str(), manifest);
    manifest.results.emplace_back("total_rate_bits_per_s", format_double(total));
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_encode(const ScenarioConfig& cfg, const RunOptions& opts,
                       const std::string& out_dir) {
    RunManifest manifest = make_manifest("encode", cfg, opts);
    const SecrecyCode code = cfg.make_code();
    const std::vector<std::uint8_t> bits = message_bits(cfg, opts);
    const SymbolStream stream = pack_bits(bits, code.field());

    std::vector<Codeword> codewords;
    if (cfg.scheme == Scheme::single_message) {
        UniformSymbolSampler sampler(code.field(), opts.seed.value_or(cfg.seed));
        std::vector<std::uint32_t> pads(code.q() - 1);
        for (std::uint32_t symbol : stream.symbols) {
            for (auto& pad : pads) pad = sampler.next();
            codewords.push_back(code.encode_with_pads(symbol, pads));
        }
    } else {
        std::vector<std::uint32_t> block(code.q());
        for (std::size_t base = 0; base < stream.symbols.size(); base += code.q()) {
            for (std::size_t i = 0; i < code.q(); ++i) {
                block[i] = base + i < stream.symbols.size() ? stream.symbols[base + i] : 0;
            }
            codewords.push_back(code.encode_messages(block));
        }
    }
    write_file(out_dir, "codewords.txt", codeword_file(cfg, stream, codewords, stream.symbols.size()),
               manifest);
    write_file(out_dir, "message_bits.txt", bits_to_string(bits) + "\n", manifest);
    manifest.results.emplace_back("message_bits", std::to_string(bits.size()));
    manifest.results.emplace_back("codewords", std::to_string(codewords.size()));
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_decode(const ScenarioConfig& cfg, const RunOptions& opts,
                       const std::string& out_dir) {
    RunManifest manifest = make_manifest("decode", cfg, opts);
    if (opts.input_path.empty()) throw ConfigError(0, "decode needs an input codeword file");
    std::ifstream in(opts.input_path);
    if (!in) throw ConfigError(0, "cannot read codeword file '" + opts.input_path + "'");

    std::map<std::string, std::string> header;
    std::vector<Codeword> codewords;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key, value;
            if (hs >> key >> value) header[key] = value;
            continue;
        }
        codewords.push_back(parse_codeword(line));
    }
    const auto need = [&](const char* key) -> std::string {
        auto it = header.find(key);
        if (it == header.end()) {
            throw EncodingError(std::string("codeword file is missing the '") + key +
                                "' header");
        }
        return it->second;
    };
    const auto p = static_cast<std::uint32_t>(std::stoul(need("p")));
    const auto q = static_cast<std::size_t>(std::stoul(need("q")));
    const Scheme scheme = need("scheme") == "1" ? Scheme::single_message : Scheme::multi_message;
    SymbolStream stream;
    stream.bits_per_symbol = static_cast<unsigned>(std::stoul(need("bits_per_symbol")));
    stream.pad_bits = static_cast<unsigned>(std::stoul(need("pad_bits")));
    const auto symbol_count = static_cast<std::size_t>(std::stoul(need("symbol_count")));

    const SecrecyCode code(PrimeField(p), q, scheme);
    for (const Codeword& cw : codewords) {
        if (scheme == Scheme::single_message) {
            stream.symbols.push_back(code.decode_with_pads(cw).message);
        } else {
            const std::vector<std::uint32_t> block = code.decode_messages(cw);
            stream.symbols.insert(stream.symbols.end(), block.begin(), block.end());
        }
    }
    if (stream.symbols.size() < symbol_count) {
        throw EncodingError("codeword file carries fewer symbols than its header declares");
    }
    stream.symbols.resize(symbol_count);
    const std::vector<std::uint8_t> bits = unpack_bits(stream);

    write_file(out_dir, "decoded_bits.txt", bits_to_string(bits) + "\n", manifest);
    manifest.results.emplace_back("decoded_bits", std::to_string(bits.size()));
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_leakage(const ScenarioConfig& cfg, const RunOptions& opts,
                        const std::string& out_dir) {
    RunManifest manifest = make_manifest("leakage", cfg, opts);
    const SecrecyCode code = cfg.make_code();
    for (std::size_t s : opts.subset) {
        if (s >= code.q()) throw ConfigError(0, "subset index X_" + std::to_string(s + 1) +
                                                    " is out of range for q = " +
                                                    std::to_string(code.q()));
    }

    std::ostringstream report;
    report << "p = " << cfg.prime << "\n";
    report << "q = " << code.q() << "\n";
    report << "scheme = " << (cfg.scheme == Scheme::single_message ? 1 : 2) << "\n";
    std::string observed;
    for (std::size_t s : opts.subset) {
        if (!observed.empty()) observed += ",";
        observed += "X" + std::to_string(s + 1);
    }
    report << "observed = " << (observed.empty() ? "(none)" : observed) << "\n";

    double worst_bits = 0.0;
    bool all_factorize = true;
    for (std::size_t k = 0; k < code.message_symbols_per_codeword(); ++k) {
        const LeakageReport r =
            exact_mutual_information(code, opts.subset, LeakageTarget::message(k));
        report << "message_" << k
               << ": mutual_information_bits = " << format_double(r.mutual_information_bits)
               << ", exact_zero = " << (r.exact_zero() ? "true" : "false") << "\n";
        worst_bits = std::max(worst_bits, r.mutual_information_bits);
        all_factorize = all_factorize && r.joint_factorizes;
    }
    report << "worst_mutual_information_bits = " << format_double(worst_bits) << "\n";
    report << "all_exact_zero = " << (all_factorize ? "true" : "false") << "\n";

    write_file(out_dir, "leakage.txt", report.str(), manifest);
    manifest.results.emplace_back("worst_mutual_information_bits", format_double(worst_bits));
    manifest.results.emplace_back("all_exact_zero", all_factorize ? "true" : "false");
    finish(manifest, out_dir);
    return manifest;
}

RunManifest run_simulate(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir) {
    RunManifest manifest = make_manifest("simulate", cfg, opts);
    const auto antenna = cfg.make_antenna();
    const auto medium = cfg.make_medium();
    const LinkScenario scenario{cfg.plan, antenna, medium, cfg.bob, cfg.eve(), cfg.make_code()};

    const std::vector<std::uint8_t> bits = message_bits(cfg, opts);
    const Transcript t = run_link(scenario, bits, opts.seed.value_or(cfg.seed));

    const ResolvedPlan resolved = resolve_policy(cfg.plan, *antenna, *medium, cfg.bob);
    std::ostringstream csv;
    csv << "channel,f_center_hz,s_bob_w_per_m2,s_eve_w_per_m2,blind_bob,blind_eve\n";
    for (std::size_t i = 0; i < cfg.plan.q; ++i) {
        csv << i << "," << format_double(cfg.plan.channel_center_hz(i)) << ","
            << format_double(received_intensity(resolved, *antenna, *medium, cfg.bob, i)) << ","
            << format_double(received_intensity(resolved, *antenna, *medium, scenario.eve, i))
            << "," << int(t.blind_bob[i]) << "," << int(t.blind_eve[i]) << "\n";
    }
    write_file(out_dir, "channels.csv", csv.str(), manifest);

    std::ostringstream transcript;
    transcript << "gamma_bob = " << t.gamma_bob << "\n";
    transcript << "gamma_eve = " << t.gamma_eve << "\n";
    std::string observed;
    for (std::size_t i : t.leakage.observed) {
        if (!observed.empty()) observed += ",";
        observed += "X" + std::to_string(i + 1);
    }
    transcript << "eve_observed = " << (observed.empty() ? "(none)" : observed) << "\n";
    transcript << "message_bits = " << bits.size() << "\n";
    transcript << "codewords = " << t.sent.size() << "\n";
    transcript << "pad_bits = " << t.pad_bits << "\n";
    transcript << "filler_symbols = " << t.filler_symbols << "\n";
    transcript << "bob_bits_match = " << (t.decoded_bits == bits ? "true" : "false") << "\n";
    transcript << "leakage_bits = " << format_double(t.leakage.mutual_information_bits) << "\n";
    transcript << "leakage_exact_zero = " << (t.leakage.exact_zero() ? "true" : "false") << "\n";
    transcript << "secure = " << (t.secure ? "true" : "false") << "\n";
    transcript << "[eve_codewords]\n";
    for (const Codeword& cw : t.eve_received) transcript << format_codeword(cw) << "\n";
    write_file(out_dir, "transcript.txt", transcript.str(), manifest);

    manifest.results.emplace_back("gamma_bob", std::to_string(t.gamma_bob));
    manifest.results.emplace_back("gamma_eve", std::to_string(t.gamma_eve));
    manifest.results.emplace_back("bob_bits_match", t.decoded_bits == bits ? "true" : "false");
    manifest.results.emplace_back("leakage_bits",
                                  format_double(t.leakage.mutual_information_bits));
    manifest.results.emplace_back("secure", t.secure ? "true" : "false");
    finish(manifest, out_dir);

    if (!t.secure) {
        throw SecurityViolation(
            t.gamma_eve == 0
                ? "the eavesdropper observes every subchannel (gamma_eve = 0); leakage = " +
                      format_double(t.leakage.mutual_information_bits) + " bits per codeword"
                : "leakage joint distribution does not factorize");
    }
    return manifest;
}

}  // namespace blindlink
