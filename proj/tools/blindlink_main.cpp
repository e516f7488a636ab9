#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blindlink/io.hpp"
#include "blindlink/version.hpp"

namespace {

using blindlink::RunManifest;
using blindlink::RunOptions;
using blindlink::ScenarioConfig;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    double grid_min_deg = -90.0;
    double grid_max_deg = 90.0;
    double grid_step_deg = 0.01;
    std::optional<std::size_t> quad_points;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "Scenario config file (INI)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", args.out_dir, "Output directory (default: out)");
    cmd->add_option("--grid-min-deg", args.grid_min_deg, "Grid start angle in degrees");
    cmd->add_option("--grid-max-deg", args.grid_max_deg, "Grid end angle in degrees");
    cmd->add_option("--grid-step-deg", args.grid_step_deg, "Grid step in degrees");
    cmd->add_option("--quad-points", args.quad_points,
                    "Override the per-channel quadrature order");
    cmd->add_option("--seed", args.seed, "Override the pad/message seed");
}

int dispatch(const CommonArgs& args, const RunOptions& base_opts,
             const std::function<RunManifest(const ScenarioConfig&, const RunOptions&,
                                             const std::string&)>& runner) {
    try {
        ScenarioConfig cfg = blindlink::load_config(args.config_path);
        if (args.quad_points) cfg.plan.quadrature_points = *args.quad_points;
        cfg.plan.validate();
        RunOptions opts = base_opts;
        opts.grid = blindlink::AngleGrid(args.grid_min_deg, args.grid_max_deg, args.grid_step_deg);
        opts.seed = args.seed;
        const RunManifest manifest = runner(cfg, opts, args.out_dir);
        std::fputs(manifest.text().c_str(), stdout);
        return 0;
    } catch (const blindlink::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const blindlink::PolicyInfeasible& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const blindlink::BobBlind& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const blindlink::BelowCutoff& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const blindlink::SecurityViolation& e) {
        std::fprintf(stderr, "security violation: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("blindlink ") + blindlink::version_string +
                 " - blind-region secure link simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    RunOptions opts;
    std::vector<double> freqs_ghz;
    std::vector<std::size_t> subset_1based;
    double exclude_deg = -1.0;
    std::function<RunManifest(const ScenarioConfig&, const RunOptions&, const std::string&)> run;

    auto* patterns = app.add_subcommand(
        "patterns", "Radiation pattern CSVs, one file per frequency");
    add_common(patterns, args);
    patterns->add_option("--freqs", freqs_ghz,
                         "Frequencies in GHz (default: the plan's channel centers)");
    patterns->callback([&] { run = blindlink::run_patterns; });

    auto* blindmap = app.add_subcommand(
        "blindmap", "Per-angle blind channel counts and intensities");
    add_common(blindmap, args);
    blindmap->add_option("--exclude-main-lobe-deg", exclude_deg,
                         "Also report the blind fraction with |theta| below this excluded");
    blindmap->callback([&] { run = blindlink::run_blindmap; });

    auto* sweep = app.add_subcommand("sweep", "Blind fraction over the [sweep] variable");
    add_common(sweep, args);
    sweep->callback([&] { run = blindlink::run_sweep; });

    auto* capacity = app.add_subcommand("capacity", "Per-channel Shannon rates at Bob");
    add_common(capacity, args);
    capacity->callback([&] { run = blindlink::run_capacity; });

    auto* encode = app.add_subcommand("encode", "Pack and encode message bits into codewords");
    add_common(encode, args);
    encode->add_option("--bits", opts.bits, "Explicit message bits (string of 0/1)");
    encode->add_option("--random-bits", opts.random_bits,
                       "Number of seeded random message bits when --bits is absent");
    encode->callback([&] { run = blindlink::run_encode; });

    auto* decode = app.add_subcommand("decode", "Decode a codeword file back to bits");
    add_common(decode, args);
    decode->add_option("--in", opts.input_path, "Codeword file written by encode")->required();
    decode->callback([&] { run = blindlink::run_decode; });

    auto* leakage = app.add_subcommand(
        "leakage", "Exact mutual information for an observed symbol subset");
    add_common(leakage, args);
    leakage
        ->add_option("--subset", subset_1based,
                     "Observed symbols as 1-based indices (e.g. --subset 1 2 observes X1, X2)")
        ->required();
    leakage->callback([&] { run = blindlink::run_leakage; });

    auto* simulate = app.add_subcommand(
        "simulate", "End-to-end secured transmission with leakage audit");
    add_common(simulate, args);
    simulate->add_option("--bits", opts.bits, "Explicit message bits (string of 0/1)");
    simulate->add_option("--random-bits", opts.random_bits,
                         "Number of seeded random message bits when --bits is absent");
    simulate->callback([&] { run = blindlink::run_simulate; });

    CLI11_PARSE(app, argc, argv);

    for (double f : freqs_ghz) opts.pattern_freqs_hz.push_back(f * 1e9);
    for (std::size_t s : subset_1based) {
        if (s == 0) {
            std::fprintf(stderr, "error: --subset indices are 1-based\n");
            return 1;
        }
        opts.subset.push_back(s - 1);
    }
    if (exclude_deg >= 0.0) opts.exclude_main_lobe_deg = exclude_deg;

    return dispatch(args, opts, run);
}
