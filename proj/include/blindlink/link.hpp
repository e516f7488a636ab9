#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "blindlink/blindmap.hpp"
#include "blindlink/coding.hpp"

namespace blindlink {

/// Everything needed to run one secured transmission: the sliced band, the
/// hardware, the two receivers, and the code (code.q() must equal plan.q).
struct LinkScenario {
    TransmissionPlan plan;
    std::shared_ptr<const AntennaPattern> antenna;
    std::shared_ptr<const ChannelGainModel> medium;
    Location bob;
    Location eve;
    SecrecyCode code;

    void validate() const;
};

/// Record of one run_link execution.
struct Transcript {
    std::vector<Codeword> sent;          // full codewords on the air
    std::vector<Codeword> eve_received;  // sent codewords after Eve's erasures
    std::vector<std::uint8_t> blind_bob;  // per-channel blind flags at Bob
    std::vector<std::uint8_t> blind_eve;  // per-channel blind flags at Eve
    std::size_t gamma_bob;
    std::size_t gamma_eve;
    std::vector<std::uint8_t> decoded_bits;  // Bob's output, equals the input bits
    unsigned pad_bits;                        // tail padding applied by pack_bits
    std::size_t filler_symbols;               // zero symbols appended to fill the last block
    LeakageReport leakage;                    // exact analysis of Eve's observed subset
    bool secure;  // gamma_eve >= 1 and the leakage joint factorizes
};

/// End-to-end secured transmission: packs message_bits into field symbols,
/// encodes them (single_message draws pad symbols from pad_seed), erases each
/// codeword at Eve according to her blind channels, decodes at Bob, and runs
/// the exact leakage analysis on Eve's observed subset. Throws BobBlind when
/// any channel is below Bob's detection threshold. An empty message still
/// produces the blind flags and the leakage report.
Transcript run_link(const LinkScenario& scenario, std::span<const std::uint8_t> message_bits,
                    std::uint64_t pad_seed);

// --- On-off-keying demo -------------------------------------------------------

/// OOK bit error rate at the given signal-to-noise ratio, clamped to
/// [1e-12, 0.5]: 0.5 erfc(sqrt(snr) / (2 sqrt(2))).
double ook_bit_error_rate(double snr);

/// Three independently calibrated carriers through one antenna. Each channel
/// is normalized to hit boresight_snr_db at theta = 0, so the demo depends
/// only on pattern ratios, not on absolute power.
struct OokDemoConfig {
    std::array<double, 3> carriers_hz{100e9, 200e9, 400e9};
    double subchannel_width_hz = 0.1e9;
    double boresight_snr_db = 40.0;
    std::size_t quadrature_points = 9;
};

struct OokDemoResult {
    OokDemoConfig config;
    AngleGrid grid;
    std::vector<std::array<double, 3>> snr;  // per angle, per carrier
    std::vector<std::array<double, 3>> ber;

    /// Channel i is undetectable at an angle when its SNR drops below 1.
    bool undetectable(std::size_t angle, std::size_t carrier) const {
        return snr[angle][carrier] < 1.0;
    }
};

OokDemoResult ook_ber_vs_angle(const HornWithBlockAntenna& antenna, const OokDemoConfig& config,
                               const AngleGrid& grid);

/// Maximal contiguous intervals where at least one carrier is undetectable.
std::vector<AngularInterval> undetectable_intervals(const OokDemoResult& demo);

/// Angle near the first pattern minimum of one carrier: the minimum of the
/// channel-averaged intensity, bracketed by the first field zero and refined
/// by golden-section search. nullopt when no zero exists below theta_hi.
std::optional<double> first_pattern_minimum(const HornWithBlockAntenna& antenna,
                                            const OokDemoConfig& config, std::size_t carrier,
                                            double theta_hi_rad);

}  // namespace blindlink
