#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "blindlink/antenna.hpp"

namespace blindlink {

/// Position in the H-plane relative to the transmitter: range in meters and
/// angle from boresight in radians.
struct Location {
    double range_m;
    double theta_rad;
};

/// Distance dependence of the received power density. FreeSpaceSpherical is
/// the 1 / (4 pi r^2) law; other media can subclass.
class ChannelGainModel {
public:
    virtual ~ChannelGainModel() = default;
    virtual double gain(double range_m, double f_hz) const = 0;
    virtual std::string name() const = 0;
};

class FreeSpaceSpherical final : public ChannelGainModel {
public:
    double gain(double range_m, double f_hz) const override;
    std::string name() const override { return "free_space_spherical"; }
};

/// Transmit power policies.
///   EqualizeAtBob: per-channel spectral density chosen so every channel
///     delivers the same power density s_bob (W/m^2) at Bob's location.
///   UniformSpectralDensity: every channel transmits p0 (W/Hz).
struct EqualizeAtBob {
    double s_bob_w_per_m2;
};
struct UniformSpectralDensity {
    double p0_w_per_hz;
};
using PowerPolicy = std::variant<EqualizeAtBob, UniformSpectralDensity>;

/// Band [f_low, f_high] sliced into q equal subchannels of width w, with a
/// detection threshold density delta (W m^-2 Hz^-1) defining blindness
/// (channel power density strictly below delta * w).
struct TransmissionPlan {
    double f_low_hz;
    double f_high_hz;
    std::size_t q;
    PowerPolicy policy;
    double delta_w_per_m2_hz;
    std::size_t quadrature_points = 9;

    double bandwidth_hz() const { return f_high_hz - f_low_hz; }
    double subchannel_width_hz() const { return bandwidth_hz() / double(q); }
    double center_hz() const { return 0.5 * (f_low_hz + f_high_hz); }
    double channel_low_hz(std::size_t i) const { return f_low_hz + double(i) * subchannel_width_hz(); }
    double channel_center_hz(std::size_t i) const {
        return channel_low_hz(i) + 0.5 * subchannel_width_hz();
    }
    /// Index of the subchannel containing the band center.
    std::size_t center_channel() const { return (q - 1) / 2; }

    void validate() const;  // throws OutOfRange on inconsistent fields
};

/// Plan with the per-channel transmit spectral densities resolved to numbers.
struct ResolvedPlan {
    TransmissionPlan plan;
    std::vector<double> tx_density_w_per_hz;  // one entry per subchannel
};

/// Channel-integrated power density at a location:
///   S_i = P_i * gamma(r) * int_channel G(f, theta) df
/// with the plan's Gauss-Legendre rule.
double received_intensity(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                          const ChannelGainModel& medium, const Location& where,
                          std::size_t channel);

/// Per-channel transmit densities that satisfy EqualizeAtBob exactly (same
/// quadrature as received_intensity). Throws PolicyInfeasible listing every
/// channel whose channel-averaged normalized gain at Bob is below 1e-5.
std::vector<double> equalize_power_at_bob(const TransmissionPlan& plan,
                                          const AntennaPattern& antenna,
                                          const ChannelGainModel& medium, const Location& bob,
                                          double s_bob_w_per_m2);

/// Applies the plan's power policy. EqualizeAtBob needs Bob's location.
ResolvedPlan resolve_policy(const TransmissionPlan& plan, const AntennaPattern& antenna,
                            const ChannelGainModel& medium, const Location& bob);

/// Per-channel blind flags at a location: S_i < delta * w, strict.
std::vector<std::uint8_t> blind_channels_at(const ResolvedPlan& resolved,
                                            const AntennaPattern& antenna,
                                            const ChannelGainModel& medium,
                                            const Location& where);

/// Number of blind channels at a location.
std::size_t gamma_at(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                     const ChannelGainModel& medium, const Location& where);

/// Margin of a power density over the detection threshold, in dB.
double power_margin_db(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz);

/// Power density giving the requested margin over the detection threshold.
double power_for_margin_db(double margin_db, double delta_w_per_m2_hz, double w_hz);

/// Uniform angular grid in degrees; both endpoints are grid points.
struct AngleGrid {
    AngleGrid(double theta_min_deg, double theta_max_deg, double step_deg);
    static AngleGrid standard() { return AngleGrid(-90.0, 90.0, 0.01); }

    double theta_min_deg;
    double theta_max_deg;
    double step_deg;
    std::size_t size() const noexcept { return count_; }
    double angle_deg(std::size_t i) const { return theta_min_deg + double(i) * step_deg; }
    double angle_rad(std::size_t i) const;

private:
    std::size_t count_;
};

/// Blind structure of a plan over an eavesdropper ring at fixed range.
struct BlindMap {
    AngleGrid grid;
    std::size_t q;
    std::vector<std::uint16_t> gamma;            // blind-channel count per angle
    std::vector<std::uint8_t> channel_blind;     // q * grid.size() flags, channel-major
    std::vector<double> intensity;               // q * grid.size() W/m^2, channel-major
    double blind_fraction;                       // share of grid angles with gamma >= 1

    bool is_blind(std::size_t channel, std::size_t angle) const {
        return channel_blind[channel * grid.size() + angle] != 0;
    }
    double intensity_at(std::size_t channel, std::size_t angle) const {
        return intensity[channel * grid.size() + angle];
    }
};

BlindMap compute_blind_map(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                           const ChannelGainModel& medium, double eve_range_m,
                           const AngleGrid& grid);

/// Blind fraction with a symmetric angular window (the main lobe) removed
/// from both numerator and denominator.
double blind_fraction_excluding(const BlindMap& map, double lo_deg, double hi_deg);

/// Maximal contiguous angular intervals where at least min_gamma channels are
/// blind.
struct AngularInterval {
    double lo_deg;
    double hi_deg;
};
std::vector<AngularInterval> blind_intervals(const BlindMap& map, std::size_t min_gamma = 1);

// --- Sweeps ----------------------------------------------------------------

enum class SweepVariable { bandwidth, subchannel_width, power_margin };

struct SweepPoint {
    double value;           // swept value in the variable's natural unit
    double blind_fraction;  // valid only when ok
    bool ok;
    std::string error;      // populated when !ok
};

/// Blind fraction as one scenario variable sweeps. bandwidth keeps the band
/// center and subchannel width fixed; subchannel_width keeps the band fixed
/// (q = round(B / w)); power_margin swaps in EqualizeAtBob at the given
/// margin. Per-point failures are recorded and the sweep continues.
std::vector<SweepPoint> blind_fraction_sweep(const TransmissionPlan& base,
                                             const AntennaPattern& antenna,
                                             const ChannelGainModel& medium, const Location& bob,
                                             double eve_range_m, const AngleGrid& grid,
                                             SweepVariable variable,
                                             const std::vector<double>& values);

// --- Capacity and thresholds -------------------------------------------------

/// Shannon rate of one subchannel in nats/s: (w / 2) ln(1 + S / (delta w)).
/// Small-signal limit: S / (2 delta) as S / (delta w) -> 0.
double subchannel_capacity_nats(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz);

/// Same rate in bits/s: (w / 2) log2(1 + S / (delta w)).
double subchannel_capacity_bits(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz);

/// Sum of per-channel capacities at Bob's location.
double total_rate_bits(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                       const ChannelGainModel& medium, const Location& bob);

/// Quadratic thermal-noise detection floor, valid on [50 GHz, 1 THz]:
/// delta(f) = 2.9e-15 (f / 100 GHz)^2 W m^-2 Hz^-1. Throws OutOfRange outside
/// the fitted band.
double thermal_threshold(double f_hz);

}  // namespace blindlink
