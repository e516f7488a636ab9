#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blindlink/config.hpp"

namespace blindlink {

/// Raised by simulate when the transmission is not information-theoretically
/// secure (Eve observes every channel or the leakage joint fails to
/// factorize). Outputs are written before this is thrown.
struct SecurityViolation : std::runtime_error {
    explicit SecurityViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Floating-point cell format shared by every CSV and manifest: 12
/// significant digits, locale-independent.
std::string format_double(double v);

/// Deterministic record of one command run: resolved settings, derived
/// results worth keeping, and the output files written. Rendering the same
/// scenario twice yields byte-identical text.
struct RunManifest {
    std::string tool;
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<std::string> notes;
    std::vector<std::string> outputs;

    std::string text() const;
};

struct RunOptions {
    AngleGrid grid = AngleGrid::standard();
    std::optional<double> exclude_main_lobe_deg;  // half-width around 0
    std::vector<double> pattern_freqs_hz;         // patterns: override channel centers
    std::string bits;                             // encode/simulate: explicit 0/1 string
    std::size_t random_bits = 10000;              // encode/simulate: used when bits is empty
    std::optional<std::uint64_t> seed;            // overrides code.seed
    std::vector<std::size_t> subset;              // leakage: observed channels, 0-based
    std::string input_path;                       // decode: codeword file
};

// Each runner writes its outputs plus manifest.txt under out_dir and returns
// the manifest. Errors propagate as the library exceptions; the CLI maps them
// to exit codes.
RunManifest run_patterns(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir);
RunManifest run_blindmap(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir);
RunManifest run_sweep(const ScenarioConfig& cfg, const RunOptions& opts,
                      const std::string& out_dir);
RunManifest run_capacity(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir);
RunManifest run_encode(const ScenarioConfig& cfg, const RunOptions& opts,
                       const std::string& out_dir);
RunManifest run_decode(const ScenarioConfig& cfg, const RunOptions& opts,
                       const std::string& out_dir);
RunManifest run_leakage(const ScenarioConfig& cfg, const RunOptions& opts,
                        const std::string& out_dir);
RunManifest run_simulate(const ScenarioConfig& cfg, const RunOptions& opts,
                         const std::string& out_dir);

}  // namespace blindlink
