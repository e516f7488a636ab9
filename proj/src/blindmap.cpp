#include "blindlink/blindmap.hpp"

#include <algorithm>
#include <cmath>

#include "blindlink/quadrature.hpp"

namespace blindlink {

namespace {

constexpr double deg_to_rad = M_PI / 180.0;

// Channels with a smaller channel-averaged normalized gain at Bob than this
// cannot be equalized with any realistic transmit power (Bob sits in a
// pattern null for that channel).
constexpr double equalize_gain_floor = 1e-5;

void require_location(const Location& loc) {
    if (!(loc.range_m > 0.0)) throw OutOfRange("location range must be positive");
}

// int_channel G(f, theta) df with the plan's quadrature rule.
double channel_gain_integral(const TransmissionPlan& plan, const AntennaPattern& antenna,
                             double theta_rad, std::size_t channel) {
    const double lo = plan.channel_low_hz(channel);
    const double hi = lo + plan.subchannel_width_hz();
    return integrate([&](double f) { return antenna.gain(f, theta_rad); }, lo, hi,
                     plan.quadrature_points);
}

}  // namespace

double FreeSpaceSpherical::gain(double range_m, double) const {
    if (!(range_m > 0.0)) throw OutOfRange("range must be positive");
    return 1.0 / (4.0 * M_PI * range_m * range_m);
}

void TransmissionPlan::validate() const {
    if (!(f_low_hz > 0.0) || !(f_high_hz > f_low_hz)) {
        throw OutOfRange("band edges must satisfy 0 < f_low < f_high");
    }
    if (q == 0) throw OutOfRange("subchannel count must be positive");
    if (!(delta_w_per_m2_hz > 0.0)) throw OutOfRange("detection threshold must be positive");
    if (quadrature_points < 1 || quadrature_points > 64) {
        throw OutOfRange("quadrature points must be in [1, 64]");
    }
}

double received_intensity(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                          const ChannelGainModel& medium, const Location& where,
                          std::size_t channel) {
    require_location(where);
    const TransmissionPlan& plan = resolved.plan;
    if (channel >= plan.q) throw OutOfRange("channel index out of range");
    const double gamma = medium.gain(where.range_m, plan.channel_center_hz(channel));
    return resolved.tx_density_w_per_hz[channel] * gamma *
           channel_gain_integral(plan, antenna, where.theta_rad, channel);
}

std::vector<double> equalize_power_at_bob(const TransmissionPlan& plan,
                                          const AntennaPattern& antenna,
                                          const ChannelGainModel& medium, const Location& bob,
                                          double s_bob_w_per_m2) {
    plan.validate();
    require_location(bob);
    if (!(s_bob_w_per_m2 > 0.0)) throw OutOfRange("target power density must be positive");

    const double w = plan.subchannel_width_hz();
    std::vector<double> integrals(plan.q);
    std::vector<std::size_t> infeasible;
    for (std::size_t i = 0; i < plan.q; ++i) {
        integrals[i] = channel_gain_integral(plan, antenna, bob.theta_rad, i);
        if (!(integrals[i] / w > equalize_gain_floor)) infeasible.push_back(i);
    }
    if (!infeasible.empty()) throw PolicyInfeasible(std::move(infeasible));

    std::vector<double> density(plan.q);
    for (std::size_t i = 0; i < plan.q; ++i) {
        const double gamma = medium.gain(bob.range_m, plan.channel_center_hz(i));
        density[i] = s_bob_w_per_m2 / (gamma * integrals[i]);
    }
    return density;
}

ResolvedPlan resolve_policy(const TransmissionPlan& plan, const AntennaPattern& antenna,
                            const ChannelGainModel& medium, const Location& bob) {
    plan.validate();
    ResolvedPlan resolved{plan, {}};
    if (const auto* eq = std::get_if<EqualizeAtBob>(&plan.policy)) {
        resolved.tx_density_w_per_hz =
            equalize_power_at_bob(plan, antenna, medium, bob, eq->s_bob_w_per_m2);
    } else {
        const auto& uniform = std::get<UniformSpectralDensity>(plan.policy);
        if (!(uniform.p0_w_per_hz > 0.0)) {
            throw OutOfRange("transmit spectral density must be positive");
        }
        resolved.tx_density_w_per_hz.assign(plan.q, uniform.p0_w_per_hz);
    }
    return resolved;
}

std::vector<std::uint8_t> blind_channels_at(const ResolvedPlan& resolved,
                                            const AntennaPattern& antenna,
                                            const ChannelGainModel& medium,
                                            const Location& where) {
    const TransmissionPlan& plan = resolved.plan;
    const double threshold = plan.delta_w_per_m2_hz * plan.subchannel_width_hz();
    std::vector<std::uint8_t> blind(plan.q, 0);
    for (std::size_t i = 0; i < plan.q; ++i) {
        blind[i] = received_intensity(resolved, antenna, medium, where, i) < threshold;
    }
    return blind;
}

std::size_t gamma_at(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                     const ChannelGainModel& medium, const Location& where) {
    const std::vector<std::uint8_t> blind = blind_channels_at(resolved, antenna, medium, where);
    return static_cast<std::size_t>(std::count(blind.begin(), blind.end(), 1));
}

double power_margin_db(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz) {
    return 10.0 * std::log10(s_w_per_m2 / (delta_w_per_m2_hz * w_hz));
}

double power_for_margin_db(double margin_db, double delta_w_per_m2_hz, double w_hz) {
    return std::pow(10.0, margin_db / 10.0) * delta_w_per_m2_hz * w_hz;
}

AngleGrid::AngleGrid(double theta_min_deg, double theta_max_deg, double step_deg)
    : theta_min_deg(theta_min_deg), theta_max_deg(theta_max_deg), step_deg(step_deg) {
    if (!(step_deg > 0.0)) throw OutOfRange("grid step must be positive");
    if (!(theta_max_deg >= theta_min_deg)) throw OutOfRange("grid endpoints are reversed");
    const double span = theta_max_deg - theta_min_deg;
    const double steps = span / step_deg;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-6 * std::max(1.0, steps)) {
        throw OutOfRange("grid step does not divide the angular span");
    }
    count_ = static_cast<std::size_t>(rounded) + 1;
}

double AngleGrid::angle_rad(std::size_t i) const { return angle_deg(i) * deg_to_rad; }

BlindMap compute_blind_map(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                           const ChannelGainModel& medium, double eve_range_m,
                           const AngleGrid& grid) {
    if (!(eve_range_m > 0.0)) throw OutOfRange("eavesdropper range must be positive");
    const TransmissionPlan& plan = resolved.plan;
    const double threshold = plan.delta_w_per_m2_hz * plan.subchannel_width_hz();
    const std::size_t n = grid.size();

    BlindMap map{grid, plan.q, std::vector<std::uint16_t>(n, 0),
                 std::vector<std::uint8_t>(plan.q * n, 0), std::vector<double>(plan.q * n, 0.0),
                 0.0};
    for (std::size_t c = 0; c < plan.q; ++c) {
        const double gamma = medium.gain(eve_range_m, plan.channel_center_hz(c));
        const double density = resolved.tx_density_w_per_hz[c];
        for (std::size_t a = 0; a < n; ++a) {
            const double s =
                density * gamma * channel_gain_integral(plan, antenna, grid.angle_rad(a), c);
            map.intensity[c * n + a] = s;
            if (s < threshold) {
                map.channel_blind[c * n + a] = 1;
                ++map.gamma[a];
            }
        }
    }
    std::size_t blind_angles = 0;
    for (std::size_t a = 0; a < n; ++a) blind_angles += map.gamma[a] >= 1;
    map.blind_fraction = double(blind_angles) / double(n);
    return map;
}

double blind_fraction_excluding(const BlindMap& map, double lo_deg, double hi_deg) {
    if (!(hi_deg >= lo_deg)) throw OutOfRange("exclusion window endpoints are reversed");
    std::size_t kept = 0;
    std::size_t blind = 0;
    for (std::size_t a = 0; a < map.grid.size(); ++a) {
        const double theta = map.grid.angle_deg(a);
        if (theta >= lo_deg && theta <= hi_deg) continue;
        ++kept;
        blind += map.gamma[a] >= 1;
    }
    if (kept == 0) throw OutOfRange("exclusion window covers the whole grid");
    return double(blind) / double(kept);
}

std::vector<AngularInterval> blind_intervals(const BlindMap& map, std::size_t min_gamma) {
    std::vector<AngularInterval> intervals;
    bool open = false;
    double start = 0.0;
    for (std::size_t a = 0; a < map.grid.size(); ++a) {
        const bool blind = map.gamma[a] >= min_gamma;
        if (blind && !open) {
            open = true;
            start = map.grid.angle_deg(a);
        } else if (!blind && open) {
            open = false;
            intervals.push_back({start, map.grid.angle_deg(a - 1)});
        }
    }
    if (open) intervals.push_back({start, map.grid.theta_max_deg});
    return intervals;
}

std::vector<SweepPoint> blind_fraction_sweep(const TransmissionPlan& base,
                                             const AntennaPattern& antenna,
                                             const ChannelGainModel& medium, const Location& bob,
                                             double eve_range_m, const AngleGrid& grid,
                                             SweepVariable variable,
                                             const std::vector<double>& values) {
    base.validate();
    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (double value : values) {
        SweepPoint point{value, 0.0, false, {}};
        try {
            if (variable != SweepVariable::power_margin && !(value > 0.0)) {
                throw OutOfRange("swept value must be positive");
            }
            TransmissionPlan plan = base;
            switch (variable) {
                case SweepVariable::bandwidth: {
                    // Keep the band center and subchannel width; q tracks B.
                    const double w = base.subchannel_width_hz();
                    const double center = base.center_hz();
                    const std::size_t q = std::max<std::size_t>(1, std::llround(value / w));
                    plan.q = q;
                    plan.f_low_hz = center - 0.5 * double(q) * w;
                    plan.f_high_hz = center + 0.5 * double(q) * w;
                    break;
                }
                case SweepVariable::subchannel_width: {
                    // Keep the band; q is the nearest integer slicing. An
                    // equalized target scales with the realized width so the
                    // margin over delta * w is the same at every point.
                    const std::size_t q =
                        std::max<std::size_t>(1, std::llround(base.bandwidth_hz() / value));
                    if (const auto* eq = std::get_if<EqualizeAtBob>(&plan.policy)) {
                        const double scale =
                            base.bandwidth_hz() / double(q) / base.subchannel_width_hz();
                        plan.policy = EqualizeAtBob{eq->s_bob_w_per_m2 * scale};
                    }
                    plan.q = q;
                    break;
                }
                case SweepVariable::power_margin: {
                    plan.policy = EqualizeAtBob{power_for_margin_db(
                        value, plan.delta_w_per_m2_hz, plan.subchannel_width_hz())};
                    break;
                }
            }
            const ResolvedPlan resolved = resolve_policy(plan, antenna, medium, bob);
            point.blind_fraction =
                compute_blind_map(resolved, antenna, medium, eve_range_m, grid).blind_fraction;
            point.ok = true;
        } catch (const std::exception& e) {
            point.error = e.what();
        }
        points.push_back(std::move(point));
    }
    return points;
}

namespace {

double capacity_snr(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz) {
    if (!(s_w_per_m2 >= 0.0)) throw OutOfRange("power density must be nonnegative");
    if (!(delta_w_per_m2_hz > 0.0) || !(w_hz > 0.0)) {
        throw OutOfRange("threshold and width must be positive");
    }
    return s_w_per_m2 / (delta_w_per_m2_hz * w_hz);
}

}  // namespace

double subchannel_capacity_nats(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz) {
    return 0.5 * w_hz * std::log1p(capacity_snr(s_w_per_m2, delta_w_per_m2_hz, w_hz));
}

double subchannel_capacity_bits(double s_w_per_m2, double delta_w_per_m2_hz, double w_hz) {
    return 0.5 * w_hz * std::log2(1.0 + capacity_snr(s_w_per_m2, delta_w_per_m2_hz, w_hz));
}

double total_rate_bits(const ResolvedPlan& resolved, const AntennaPattern& antenna,
                       const ChannelGainModel& medium, const Location& bob) {
    const TransmissionPlan& plan = resolved.plan;
    double total = 0.0;
    for (std::size_t i = 0; i < plan.q; ++i) {
        total += subchannel_capacity_bits(received_intensity(resolved, antenna, medium, bob, i),
                                          plan.delta_w_per_m2_hz, plan.subchannel_width_hz());
    }
    return total;
}

double thermal_threshold(double f_hz) {
    if (f_hz < 50e9 || f_hz > 1e12) {
        throw OutOfRange("thermal threshold fit is valid on [50 GHz, 1 THz] only");
    }
    const double ratio = f_hz / 100e9;
    return 2.9e-15 * ratio * ratio;
}

}  // namespace blindlink
