#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blindlink/coding.hpp"
#include "blindlink/link.hpp"

namespace blindlink {

struct SweepSpec {
    SweepVariable variable;
    std::vector<double> values;  // Hz for bandwidth/subchannel sweeps, dB for power
};

/// Fully resolved scenario: every default filled in, every quantity in SI
/// units, the power policy decided.
struct ScenarioConfig {
    std::string antenna_kind;
    // Geometry in meters; only the fields of the chosen kind are used.
    unsigned elements = 16;
    double spacing_m = 0.75e-3;
    double diameter_m = 16e-3;
    double focal_length_m = 10e-3;
    double plate_separation_m = 1e-3;
    double attenuation_per_m = 1.0;
    double horn_length_m = 20e-3;
    double aperture_m = 11e-3;
    double beam_waist_m = 3e-3;
    double block_width_m = 4e-3;

    TransmissionPlan plan;
    bool thermal_delta = false;             // delta came from the thermal fit
    std::optional<double> power_margin_db;  // set when the policy came from p_ab

    Location bob{1.0, 0.0};
    std::optional<double> eve_theta_rad;  // required only by eavesdropper commands
    double eve_range_m = 1.0;             // defaults to Bob's range

    std::uint32_t prime = 11;
    Scheme scheme = Scheme::single_message;
    std::uint64_t seed = 20260816;

    std::optional<SweepSpec> sweep;

    std::shared_ptr<const AntennaPattern> make_antenna() const;
    std::shared_ptr<const ChannelGainModel> make_medium() const;
    Location eve() const;  // throws ConfigError when eve_theta is missing
    SecrecyCode make_code() const;

    /// Key/value echo of every resolved setting, for the run manifest.
    std::vector<std::pair<std::string, std::string>> summary() const;
};

/// Parses the INI-style scenario text. Sections [antenna], [plan],
/// [locations], [code], [sweep]; '#' or ';' start comments; values may carry
/// unit suffixes (GHz, mm, deg, dB, ...). Unknown sections or keys and
/// malformed or missing required entries raise ConfigError with the 1-based
/// line number.
ScenarioConfig parse_config(const std::string& text);

/// parse_config applied to a file; throws ConfigError when unreadable.
ScenarioConfig load_config(const std::string& path);

}  // namespace blindlink
