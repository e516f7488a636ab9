// Acceptance gate: twelve release criteria, one [PASS]/[FAIL] line each.
// Numeric anchors were computed with an independent reference implementation
// and are pinned inline. Scenario CSVs are pinned byte-for-byte under
// tests/golden; pass --write-golden to regenerate them after a deliberate
// model change (the trend assertions still run in that mode). The exit code
// is the number of failed criteria.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blindlink/antenna.hpp"
#include "blindlink/blindmap.hpp"
#include "blindlink/coding.hpp"
#include "blindlink/field.hpp"
#include "blindlink/link.hpp"

#ifndef BLINDLINK_GOLDEN_DIR
#define BLINDLINK_GOLDEN_DIR "tests/golden"
#endif

namespace {

using namespace blindlink;

using Problems = std::vector<std::string>;

constexpr double kPi = 3.14159265358979323846;

bool g_write_golden = false;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Byte-compares `content` against the pinned file, or rewrites the pin in
/// --write-golden mode. Never call with placeholder content: a write run
/// freezes exactly what the comparison run will demand.
void check_golden(Problems& problems, const std::string& filename, const std::string& content) {
    const std::filesystem::path path = std::filesystem::path(BLINDLINK_GOLDEN_DIR) / filename;
    if (g_write_golden) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) problems.push_back("cannot write " + path.string());
        return;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        problems.push_back("missing pinned file " + filename + " (regenerate with --write-golden)");
        return;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (buffer.str() != content) {
        problems.push_back("pinned file " + filename + " differs from this run");
    }
}

bool all_ok(const std::vector<SweepPoint>& points) {
    return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
}

// --- 1: decoder matrix ------------------------------------------------------

void c01_decoder_matrix(Problems& problems) {
    const PrimeField field(11);
    const std::vector<std::uint32_t> points{1, 2, 3};
    (void)vandermonde(field, points).invert();  // warm pass; the timed pass is steady state
    const auto t0 = std::chrono::steady_clock::now();
    const FieldMatrix decoder = vandermonde(field, points).invert();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const std::uint32_t want[3][3] = {{3, 8, 1}, {3, 4, 4}, {6, 10, 6}};
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (decoder.value(r, c) != want[r][c]) {
                problems.push_back("decoder(" + std::to_string(r) + "," + std::to_string(c) +
                                   ") = " + std::to_string(decoder.value(r, c)) + ", want " +
                                   std::to_string(want[r][c]));
            }
        }
    }
    if (!(ms < 1.0)) problems.push_back("inversion took " + fmt6(ms) + " ms, budget 1 ms");
}

// --- 2, 3: exact zero leakage -------------------------------------------------

std::string pair_label(std::size_t i, std::size_t j) {
    return "X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1);
}

void c02_single_message_zero_leakage(Problems& problems) {
    const SecrecyCode code(PrimeField(11), 3, Scheme::single_message);
    const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pair : pairs) {
        const std::vector<std::size_t> subset{pair[0], pair[1]};
        const LeakageReport report =
            exact_mutual_information(code, subset, LeakageTarget::message(0));
        if (report.mutual_information_bits != 0.0) {
            problems.push_back("I(M; " + pair_label(pair[0], pair[1]) +
                               ") = " + fmt(report.mutual_information_bits) + " bits, want 0");
        }
        if (!report.joint_factorizes) {
            problems.push_back("joint does not factorize for " + pair_label(pair[0], pair[1]));
        }
    }
}

void c03_per_message_zero_leakage(Problems& problems) {
    const SecrecyCode code(PrimeField(11), 3, Scheme::multi_message);
    const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (std::size_t k = 0; k < 3; ++k) {
        for (const auto& pair : pairs) {
            const std::vector<std::size_t> subset{pair[0], pair[1]};
            const LeakageReport report =
                exact_mutual_information(code, subset, LeakageTarget::message(k));
            if (report.mutual_information_bits != 0.0) {
                problems.push_back("I(M" + std::to_string(k + 1) + "; " +
                                   pair_label(pair[0], pair[1]) +
                                   ") = " + fmt(report.mutual_information_bits) + " bits, want 0");
            }
            if (!report.joint_factorizes) {
                problems.push_back("joint does not factorize for M" + std::to_string(k + 1) +
                                   " with " + pair_label(pair[0], pair[1]));
            }
        }
    }
}

// --- 4: efficiency ------------------------------------------------------------

void c04_efficiency(Problems& problems) {
    const PrimeField field(11);
    const Efficiency single = SecrecyCode(field, 3, Scheme::single_message).efficiency();
    const Efficiency multi = SecrecyCode(field, 3, Scheme::multi_message).efficiency();
    if (single.num != 1 || single.den != 3) {
        problems.push_back("single-message efficiency = " + std::to_string(single.num) + "/" +
                           std::to_string(single.den) + ", want 1/3");
    }
    if (multi.num != 1 || multi.den != 1 || multi.value() != 1.0) {
        problems.push_back("multi-message efficiency = " + std::to_string(multi.num) + "/" +
                           std::to_string(multi.den) + ", want 1/1");
    }
}

// --- 5: antenna anchors -------------------------------------------------------

void c05_antenna_anchors(Problems& problems) {
    const ParabolicDishAntenna dish(0.016, 0.010);
    const double dbi = dish.boresight_gain_dbi(200e9);
    if (!(std::abs(dbi - 30.5) <= 0.1)) {
        problems.push_back("dish boresight gain = " + fmt6(dbi) + " dBi, want 30.5 +- 0.1");
    }
    const LeakyWaveAntenna leaky(1e-3, 1.0);
    const double peak_deg = leaky.peak_angle(300e9) * 180.0 / kPi;
    if (!(std::abs(peak_deg - 30.0) <= 0.5)) {
        problems.push_back("leaky-wave peak at 300 GHz = " + fmt6(peak_deg) +
                           " deg, want 30 +- 0.5");
    }
    const PhasedArrayAntenna array16(16, 0.75e-3);
    const double analytic = std::asin(speed_of_light / 200e9 / (16.0 * 0.75e-3));
    const double null1 = array16.null_angle(200e9, 1);
    if (!(std::abs(null1 - analytic) < 1e-6)) {
        problems.push_back("array first null = " + fmt(null1) + " rad, want " + fmt(analytic) +
                           " within 1e-6");
    }
}

// --- 6, 8: bandwidth sweeps ---------------------------------------------------

std::vector<double> swept_bandwidths() {
    std::vector<double> values;
    for (int ghz = 2; ghz <= 40; ghz += 2) values.push_back(double(ghz) * 1e9);
    return values;
}

/// Blind-fraction bandwidth sweep with Bob on boresight at 1 m, Eve on the
/// same ring, 1 GHz subchannels around a 200 GHz center, equalized to the
/// given margin over a 1e-15 W m^-2 Hz^-1 threshold, on the 0.05 degree grid.
std::vector<SweepPoint> bandwidth_sweep(const AntennaPattern& antenna, double margin_db,
                                        const std::vector<double>& values) {
    const FreeSpaceSpherical medium;
    const Location bob{1.0, 0.0};
    const TransmissionPlan base{199e9, 201e9, 2,
                                EqualizeAtBob{power_for_margin_db(margin_db, 1e-15, 1e9)}, 1e-15,
                                9};
    const AngleGrid grid(-90.0, 90.0, 0.05);
    return blind_fraction_sweep(base, antenna, medium, bob, 1.0, grid, SweepVariable::bandwidth,
                                values);
}

bool report_sweep_failures(Problems& problems, const std::string& label,
                           const std::vector<SweepPoint>& points) {
    for (const SweepPoint& p : points) {
        if (!p.ok) {
            problems.push_back(label + ": sweep failed at " + fmt6(p.value) + " Hz: " + p.error);
        }
    }
    return all_ok(points);
}

void check_growth(Problems& problems, const std::string& label,
                  const std::vector<SweepPoint>& points) {
    if (!report_sweep_failures(problems, label, points)) return;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].blind_fraction < points[i - 1].blind_fraction) {
            problems.push_back(label + ": blind fraction falls from " +
                               fmt6(points[i - 1].blind_fraction) + " to " +
                               fmt6(points[i].blind_fraction) + " at B = " +
                               fmt6(points[i].value) + " Hz");
        }
    }
    if (!(points.back().blind_fraction > points.front().blind_fraction)) {
        problems.push_back(label + ": blind fraction at B = 40 GHz (" +
                           fmt6(points.back().blind_fraction) + ") does not exceed B = 2 GHz (" +
                           fmt6(points.front().blind_fraction) + ")");
    }
}

std::string sweep_pair_csv(const std::vector<SweepPoint>& at25,
                           const std::vector<SweepPoint>& at35) {
    std::string csv = "bandwidth_hz,blind_fraction_25db,blind_fraction_35db\n";
    for (std::size_t i = 0; i < at25.size(); ++i) {
        csv += fmt(at25[i].value) + "," + fmt(at25[i].blind_fraction) + "," +
               fmt(at35[i].blind_fraction) + "\n";
    }
    return csv;
}

void c06_bandwidth_widens_blind_region(Problems& problems) {
    const std::vector<double> values = swept_bandwidths();
    const ParabolicDishAntenna dish(0.016, 0.010);
    const PhasedArrayAntenna array16(16, 0.75e-3);
    const auto dish25 = bandwidth_sweep(dish, 25.0, values);
    const auto dish35 = bandwidth_sweep(dish, 35.0, values);
    const auto array25 = bandwidth_sweep(array16, 25.0, values);
    const auto array35 = bandwidth_sweep(array16, 35.0, values);
    check_growth(problems, "dish 25 dB", dish25);
    check_growth(problems, "dish 35 dB", dish35);
    check_growth(problems, "array 25 dB", array25);
    check_growth(problems, "array 35 dB", array35);
    if (all_ok(dish25) && all_ok(dish35)) {
        check_golden(problems, "bandwidth_sweep_dish.csv", sweep_pair_csv(dish25, dish35));
    }
    if (all_ok(array25) && all_ok(array35)) {
        check_golden(problems, "bandwidth_sweep_array.csv", sweep_pair_csv(array25, array35));
    }
}

void c08_smooth_horn_counterexample(Problems& problems) {
    const DiagonalHornAntenna horn(0.020, 0.011);
    const std::vector<double> values = swept_bandwidths();
    const auto horn25 = bandwidth_sweep(horn, 25.0, values);
    const auto horn35 = bandwidth_sweep(horn, 35.0, values);
    const auto check_flat = [&problems](const std::string& label,
                                        const std::vector<SweepPoint>& points) {
        if (!report_sweep_failures(problems, label, points)) return;
        const auto by_fraction = [](const SweepPoint& a, const SweepPoint& b) {
            return a.blind_fraction < b.blind_fraction;
        };
        const auto [lo, hi] = std::minmax_element(points.begin(), points.end(), by_fraction);
        const double spread = hi->blind_fraction - lo->blind_fraction;
        if (!(spread < 0.02)) {
            problems.push_back(label + ": blind fraction varies by " + fmt6(spread) +
                               " across the sweep, want < 0.02");
        }
    };
    check_flat("horn 25 dB", horn25);
    check_flat("horn 35 dB", horn35);
    if (all_ok(horn25) && all_ok(horn35)) {
        check_golden(problems, "bandwidth_sweep_horn.csv", sweep_pair_csv(horn25, horn35));
    }
}

// --- 7: subchannel-width sweep --------------------------------------------------

void c07_narrow_subchannels_widen_blind_region(Problems& problems) {
    const ParabolicDishAntenna dish(0.016, 0.010);
    const FreeSpaceSpherical medium;
    const Location bob{1.0, 0.0};
    const TransmissionPlan base{195e9, 205e9, 10,
                                EqualizeAtBob{power_for_margin_db(30.0, 1e-15, 1e9)}, 1e-15, 9};
    const AngleGrid grid(-90.0, 90.0, 0.05);
    const auto points = blind_fraction_sweep(base, dish, medium, bob, 1.0, grid,
                                             SweepVariable::subchannel_width, {0.5e9, 1e9, 2e9});
    if (!report_sweep_failures(problems, "dish 30 dB", points)) return;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].blind_fraction > points[i - 1].blind_fraction) {
            problems.push_back("blind fraction grows with w between " + fmt6(points[i - 1].value) +
                               " and " + fmt6(points[i].value) + " Hz");
        }
    }
    if (!(points.front().blind_fraction >= points.back().blind_fraction)) {
        problems.push_back("blind fraction at w = 0.5 GHz (" + fmt6(points.front().blind_fraction) +
                           ") is below w = 2 GHz (" + fmt6(points.back().blind_fraction) + ")");
    }
    std::string csv = "subchannel_width_hz,blind_fraction\n";
    for (const SweepPoint& p : points) csv += fmt(p.value) + "," + fmt(p.blind_fraction) + "\n";
    check_golden(problems, "subchannel_sweep_dish.csv", csv);
}

// --- 9: total-rate scaling ------------------------------------------------------

void c09_rate_scaling(Problems& problems) {
    const ParabolicDishAntenna dish(0.016, 0.010);
    const LeakyWaveAntenna leaky(1e-3, 1.0);
    const FreeSpaceSpherical medium;
    const Location dish_bob{1.0, 0.0};
    const Location leaky_bob{1.0, leaky.peak_angle(300e9)};
    const std::array<double, 4> bands{25e9, 50e9, 75e9, 100e9};
    std::array<double, 4> dish_rate{};
    std::array<double, 4> leaky_rate{};
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const double b = bands[i];
        const auto q = std::size_t(std::llround(b / 1e9));
        const TransmissionPlan plan{300e9 - 0.5 * b, 300e9 + 0.5 * b, q,
                                    UniformSpectralDensity{1e-11}, 1e-15, 9};
        dish_rate[i] =
            total_rate_bits(resolve_policy(plan, dish, medium, dish_bob), dish, medium, dish_bob);
        leaky_rate[i] = total_rate_bits(resolve_policy(plan, leaky, medium, leaky_bob), leaky,
                                        medium, leaky_bob);
    }
    const double dish_ratio = dish_rate[3] / dish_rate[1];
    const double leaky_ratio = leaky_rate[3] / leaky_rate[1];
    if (!(std::abs(dish_ratio - 2.0) <= 0.1)) {
        problems.push_back("dish rate ratio 100 / 50 GHz = " + fmt6(dish_ratio) +
                           ", want 2.0 +- 0.1");
    }
    if (!(leaky_ratio < 1.5)) {
        problems.push_back("leaky-wave rate ratio 100 / 50 GHz = " + fmt6(leaky_ratio) +
                           ", want < 1.5");
    }
    std::string csv = "bandwidth_hz,dish_rate_bits_per_s,leaky_rate_bits_per_s\n";
    for (std::size_t i = 0; i < bands.size(); ++i) {
        csv += fmt(bands[i]) + "," + fmt(dish_rate[i]) + "," + fmt(leaky_rate[i]) + "\n";
    }
    check_golden(problems, "rate_scaling.csv", csv);
}

// --- 10: threshold and capacity anchors -----------------------------------------

void c10_threshold_and_capacity_anchors(Problems& problems) {
    const double t100 = thermal_threshold(100e9);
    if (t100 != 2.9e-15) {
        problems.push_back("thermal threshold at 100 GHz = " + fmt(t100) +
                           ", want exactly 2.9e-15");
    }
    const double t300 = thermal_threshold(300e9);
    if (!(std::abs(t300 - 2.55e-14) <= 0.03 * 2.55e-14)) {
        problems.push_back("thermal threshold at 300 GHz = " + fmt6(t300) +
                           ", want 2.55e-14 +- 3%");
    }
    const double delta = 1e-15;
    const double w = 1e9;
    if (subchannel_capacity_nats(0.0, delta, w) != 0.0 ||
        subchannel_capacity_bits(0.0, delta, w) != 0.0) {
        problems.push_back("capacity at zero power is not exactly zero");
    }
    for (const double snr : {0.005, 0.009}) {
        const double s = snr * delta * w;
        const double exact = subchannel_capacity_nats(s, delta, w);
        const double limit = s / (2.0 * delta);
        if (!(std::abs(exact - limit) <= 0.01 * limit)) {
            problems.push_back("capacity at snr " + fmt6(snr) + " is " + fmt6(exact) +
                               " nats/s; small-signal limit " + fmt6(limit) + " missed by > 1%");
        }
    }
}

// --- 11: end-to-end secured link -------------------------------------------------

void c11_end_to_end_secure_link(Problems& problems) {
    const auto dish = std::make_shared<ParabolicDishAntenna>(0.016, 0.010);
    const auto medium = std::make_shared<FreeSpaceSpherical>();
    const TransmissionPlan plan{195.5e9, 205.5e9, 5,
                                EqualizeAtBob{power_for_margin_db(40.0, 1e-15, 2e9)}, 1e-15, 9};
    // Eve sits on Bob's ring at the 200 GHz aperture null; the two central
    // channels average below the detection threshold there.
    const double first_null_rad =
        std::asin(3.8317059702075123 * speed_of_light / (kPi * 0.016 * 200e9));
    const LinkScenario scenario{plan,
                                dish,
                                medium,
                                Location{1.0, 0.0},
                                Location{1.0, first_null_rad},
                                SecrecyCode(PrimeField(11), 5, Scheme::single_message)};
    std::vector<std::uint8_t> bits(10000);
    std::mt19937_64 rng(20260816);
    for (auto& b : bits) b = std::uint8_t(rng() & 1u);
    const Transcript t = run_link(scenario, bits, 20260816);
    if (t.gamma_bob != 0) {
        problems.push_back("gamma at Bob = " + std::to_string(t.gamma_bob) + ", want 0");
    }
    if (t.gamma_eve != 2) {
        problems.push_back("gamma at Eve = " + std::to_string(t.gamma_eve) + ", want 2");
    }
    if (t.decoded_bits != bits) problems.push_back("decoded bits differ from the 10000-bit input");
    if (!t.leakage.exact_zero()) {
        problems.push_back("leakage = " + fmt(t.leakage.mutual_information_bits) +
                           " bits, want exact zero");
    }
    if (!t.secure) problems.push_back("transcript not flagged secure");
    const ResolvedPlan resolved = resolve_policy(plan, *dish, *medium, scenario.bob);
    const BlindMap map = compute_blind_map(resolved, *dish, *medium, 1.0,
                                           AngleGrid(-90.0, 90.0, 0.1));
    std::string csv = "theta_deg,gamma\n";
    for (std::size_t i = 0; i < map.grid.size(); ++i) {
        csv += fmt(map.grid.angle_deg(i)) + "," + std::to_string(map.gamma[i]) + "\n";
    }
    check_golden(problems, "dish_blindmap.csv", csv);
}

// --- 12: three-carrier on-off-keying demo ----------------------------------------

void c12_three_carrier_ook_demo(Problems& problems) {
    const HornWithBlockAntenna horn(0.003, 0.004);
    const OokDemoConfig config{};
    const AngleGrid grid(0.0, 15.0, 0.01);
    const OokDemoResult demo = ook_ber_vs_angle(horn, config, grid);
    for (std::size_t c = 0; c < 3; ++c) {
        const std::string carrier = fmt6(config.carriers_hz[c] / 1e9) + " GHz";
        if (!(demo.ber[0][c] < 1e-9)) {
            problems.push_back("boresight bit error rate at " + carrier + " = " +
                               fmt6(demo.ber[0][c]) + ", want < 1e-9");
        }
        const auto minimum = first_pattern_minimum(horn, config, c, 15.0 * kPi / 180.0);
        if (!minimum) {
            problems.push_back("no pattern minimum below 15 degrees at " + carrier);
            continue;
        }
        const double min_deg = *minimum * 180.0 / kPi;
        const OokDemoResult at_min = ook_ber_vs_angle(horn, config, AngleGrid(min_deg, min_deg, 1.0));
        if (!(std::abs(at_min.ber[0][c] - 0.5) <= 0.01)) {
            problems.push_back("bit error rate at the " + carrier + " minimum (" + fmt6(min_deg) +
                               " deg) = " + fmt(at_min.ber[0][c]) + ", want 0.5 +- 0.01");
        }
    }
    const std::vector<AngularInterval> spans = undetectable_intervals(demo);
    if (spans.size() < 2) {
        problems.push_back("only " + std::to_string(spans.size()) +
                           " undetectable interval(s), want >= 2");
    }
    for (std::size_t i = 0; i < spans.size(); ++i) {
        if (!(spans[i].lo_deg > 0.5)) {
            problems.push_back("undetectable interval starting at " + fmt6(spans[i].lo_deg) +
                               " deg overlaps the main lobe");
        }
        if (i > 0 && !(spans[i].lo_deg > spans[i - 1].hi_deg)) {
            problems.push_back("undetectable intervals " + std::to_string(i - 1) + " and " +
                               std::to_string(i) + " overlap");
        }
    }
    std::string csv = "theta_deg,snr_100GHz,snr_200GHz,snr_400GHz,ber_100GHz,ber_200GHz,ber_400GHz\n";
    for (std::size_t i = 0; i < demo.grid.size(); ++i) {
        csv += fmt(demo.grid.angle_deg(i));
        for (std::size_t c = 0; c < 3; ++c) csv += "," + fmt(demo.snr[i][c]);
        for (std::size_t c = 0; c < 3; ++c) csv += "," + fmt(demo.ber[i][c]);
        csv += "\n";
    }
    check_golden(problems, "ook_demo_ber.csv", csv);
}

// --- harness ---------------------------------------------------------------------

struct Entry {
    int number;
    const char* name;
    void (*body)(Problems&);
    double budget_ms;  // 0 = no harness-level runtime bound
};

constexpr Entry kEntries[] = {
    {1, "decoder-matrix-inverse", c01_decoder_matrix, 0.0},
    {2, "single-message-zero-leakage", c02_single_message_zero_leakage, 1000.0},
    {3, "per-message-zero-leakage", c03_per_message_zero_leakage, 1000.0},
    {4, "coding-efficiency", c04_efficiency, 0.0},
    {5, "antenna-anchors", c05_antenna_anchors, 0.0},
    {6, "bandwidth-widens-blind-region", c06_bandwidth_widens_blind_region, 120000.0},
    {7, "narrow-subchannels-widen-blind-region", c07_narrow_subchannels_widen_blind_region,
     120000.0},
    {8, "smooth-horn-counterexample", c08_smooth_horn_counterexample, 0.0},
    {9, "rate-scaling-dish-vs-leaky", c09_rate_scaling, 0.0},
    {10, "threshold-and-capacity-anchors", c10_threshold_and_capacity_anchors, 0.0},
    {11, "end-to-end-secure-link", c11_end_to_end_secure_link, 10000.0},
    {12, "three-carrier-ook-demo", c12_three_carrier_ook_demo, 0.0},
};

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--write-golden") == 0) {
            g_write_golden = true;
        } else {
            std::fprintf(stderr, "usage: acceptance [--write-golden]\n");
            return 64;
        }
    }
    int failed = 0;
    for (const Entry& entry : kEntries) {
        Problems problems;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            entry.body(problems);
        } catch (const std::exception& e) {
            problems.push_back(std::string("threw ") + e.what());
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (entry.budget_ms > 0.0 && !(ms < entry.budget_ms)) {
            problems.push_back("took " + fmt6(ms) + " ms, budget " + fmt6(entry.budget_ms) + " ms");
        }
        std::printf("[%s] %2d %s (%.1f ms)\n", problems.empty() ? "PASS" : "FAIL", entry.number,
                    entry.name, ms);
        for (const std::string& p : problems) std::printf("         - %s\n", p.c_str());
        if (!problems.empty()) ++failed;
    }
    std::printf("acceptance: %d/12 criteria passed%s\n", 12 - failed,
                g_write_golden ? " (pinned files rewritten)" : "");
    return failed;
}
