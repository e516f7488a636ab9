#include "blindlink/link.hpp"

#include <algorithm>
#include <cmath>

#include "blindlink/quadrature.hpp"

namespace blindlink {

void LinkScenario::validate() const {
    plan.validate();
    if (!antenna || !medium) throw OutOfRange("scenario needs an antenna and a medium");
    if (!(bob.range_m > 0.0) || !(eve.range_m > 0.0)) {
        throw OutOfRange("receiver ranges must be positive");
    }
    if (code.q() != plan.q) {
        throw ShapeError("code length q = " + std::to_string(code.q()) +
                         " differs from the plan's subchannel count " + std::to_string(plan.q));
    }
}

Transcript run_link(const LinkScenario& scenario, std::span<const std::uint8_t> message_bits,
                    std::uint64_t pad_seed) {
    scenario.validate();
    const SecrecyCode& code = scenario.code;
    const PrimeField& field = code.field();
    const std::size_t q = code.q();

    const ResolvedPlan resolved =
        resolve_policy(scenario.plan, *scenario.antenna, *scenario.medium, scenario.bob);

    Transcript t;
    t.blind_bob = blind_channels_at(resolved, *scenario.antenna, *scenario.medium, scenario.bob);
    t.blind_eve = blind_channels_at(resolved, *scenario.antenna, *scenario.medium, scenario.eve);
    t.gamma_bob = std::count(t.blind_bob.begin(), t.blind_bob.end(), 1);
    t.gamma_eve = std::count(t.blind_eve.begin(), t.blind_eve.end(), 1);

    if (t.gamma_bob > 0) {
        std::vector<std::size_t> blind;
        for (std::size_t i = 0; i < q; ++i) {
            if (t.blind_bob[i]) blind.push_back(i);
        }
        throw BobBlind(std::move(blind));
    }

    // Eve observes exactly the channels she can detect.
    std::vector<std::uint8_t> eve_mask(q);
    std::vector<std::size_t> eve_observed;
    for (std::size_t i = 0; i < q; ++i) {
        eve_mask[i] = !t.blind_eve[i];
        if (eve_mask[i]) eve_observed.push_back(i);
    }

    const SymbolStream stream = pack_bits(message_bits, field);
    t.pad_bits = stream.pad_bits;
    t.filler_symbols = 0;

    std::vector<std::uint32_t> recovered;
    recovered.reserve(stream.symbols.size());
    if (code.scheme() == Scheme::single_message) {
        UniformSymbolSampler sampler(field, pad_seed);
        std::vector<std::uint32_t> pads(q - 1);
        for (std::uint32_t symbol : stream.symbols) {
            for (auto& pad : pads) pad = sampler.next();
            Codeword cw = code.encode_with_pads(symbol, pads);
            t.eve_received.push_back(cw.masked(eve_mask));
            recovered.push_back(code.decode_with_pads(cw).message);
            t.sent.push_back(std::move(cw));
        }
    } else {
        std::vector<std::uint32_t> block(q);
        for (std::size_t base = 0; base < stream.symbols.size(); base += q) {
            for (std::size_t i = 0; i < q; ++i) {
                if (base + i < stream.symbols.size()) {
                    block[i] = stream.symbols[base + i];
                } else {
                    block[i] = 0;
                    ++t.filler_symbols;
                }
            }
            Codeword cw = code.encode_messages(block);
            t.eve_received.push_back(cw.masked(eve_mask));
            const std::vector<std::uint32_t> decoded = code.decode_messages(cw);
            recovered.insert(recovered.end(), decoded.begin(), decoded.end());
            t.sent.push_back(std::move(cw));
        }
        recovered.resize(stream.symbols.size());  // drop block filler
    }

    t.decoded_bits = unpack_bits(SymbolStream{recovered, stream.bits_per_symbol, stream.pad_bits});

    // Worst-case exact leakage over the individual message symbols.
    LeakageReport worst =
        exact_mutual_information(code, eve_observed, LeakageTarget::message(0));
    for (std::size_t k = 1; k < code.message_symbols_per_codeword(); ++k) {
        LeakageReport r = exact_mutual_information(code, eve_observed, LeakageTarget::message(k));
        worst.joint_factorizes = worst.joint_factorizes && r.joint_factorizes;
        worst.mutual_information_bits =
            std::max(worst.mutual_information_bits, r.mutual_information_bits);
    }
    t.leakage = std::move(worst);
    t.secure = t.gamma_eve >= 1 && t.leakage.joint_factorizes;
    return t;
}

double ook_bit_error_rate(double snr) {
    if (!(snr >= 0.0)) throw OutOfRange("signal-to-noise ratio must be nonnegative");
    const double ber = 0.5 * std::erfc(std::sqrt(snr) / (2.0 * std::sqrt(2.0)));
    return std::clamp(ber, 1e-12, 0.5);
}

namespace {

// Channel-averaged normalized gain around one carrier.
double carrier_mean_gain(const HornWithBlockAntenna& antenna, const OokDemoConfig& config,
                         std::size_t carrier, double theta_rad) {
    const double w = config.subchannel_width_hz;
    const double lo = config.carriers_hz[carrier] - 0.5 * w;
    return integrate([&](double f) { return antenna.gain(f, theta_rad); }, lo, lo + w,
                     config.quadrature_points) /
           w;
}

}  // namespace

OokDemoResult ook_ber_vs_angle(const HornWithBlockAntenna& antenna, const OokDemoConfig& config,
                               const AngleGrid& grid) {
    if (!(config.subchannel_width_hz > 0.0)) throw OutOfRange("subchannel width must be positive");
    const double snr0 = std::pow(10.0, config.boresight_snr_db / 10.0);

    OokDemoResult demo{config, grid, {}, {}};
    demo.snr.resize(grid.size());
    demo.ber.resize(grid.size());

    std::array<double, 3> boresight{};
    for (std::size_t c = 0; c < 3; ++c) {
        boresight[c] = carrier_mean_gain(antenna, config, c, 0.0);
    }
    for (std::size_t a = 0; a < grid.size(); ++a) {
        const double theta = grid.angle_rad(a);
        for (std::size_t c = 0; c < 3; ++c) {
            const double snr = snr0 * carrier_mean_gain(antenna, config, c, theta) / boresight[c];
            demo.snr[a][c] = snr;
            demo.ber[a][c] = ook_bit_error_rate(snr);
        }
    }
    return demo;
}

std::vector<AngularInterval> undetectable_intervals(const OokDemoResult& demo) {
    std::vector<AngularInterval> intervals;
    bool open = false;
    double start = 0.0;
    for (std::size_t a = 0; a < demo.grid.size(); ++a) {
        const bool blind = demo.undetectable(a, 0) || demo.undetectable(a, 1) ||
                           demo.undetectable(a, 2);
        if (blind && !open) {
            open = true;
            start = demo.grid.angle_deg(a);
        } else if (!blind && open) {
            open = false;
            intervals.push_back({start, demo.grid.angle_deg(a - 1)});
        }
    }
    if (open) intervals.push_back({start, demo.grid.theta_max_deg});
    return intervals;
}

std::optional<double> first_pattern_minimum(const HornWithBlockAntenna& antenna,
                                            const OokDemoConfig& config, std::size_t carrier,
                                            double theta_hi_rad) {
    if (carrier >= config.carriers_hz.size()) throw OutOfRange("carrier index out of range");
    const double f = config.carriers_hz[carrier];
    const std::optional<double> zero = antenna.first_field_zero(f, 1e-4, theta_hi_rad);
    if (!zero) return std::nullopt;

    // The averaged intensity minimum sits within half a beamwidth of the
    // center-frequency field zero; golden-section search on a small bracket.
    const double span = 0.2 * *zero;
    double a = std::max(1e-4, *zero - span);
    double b = std::min(theta_hi_rad, *zero + span);
    const auto objective = [&](double theta) {
        return carrier_mean_gain(antenna, config, carrier, theta);
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int iter = 0; iter < 120 && (b - a) > 1e-10; ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace blindlink
