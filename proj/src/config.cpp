#include "blindlink/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace blindlink {

namespace {

constexpr double deg_to_rad = M_PI / 180.0;

struct RawValue {
    std::string text;
    int line;
};
using Section = std::map<std::string, RawValue>;
using RawConfig = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"antenna",
         {"kind", "elements", "spacing", "diameter", "focal_length", "plate_separation",
          "attenuation", "horn_length", "aperture", "beam_waist", "block_width"}},
        {"plan",
         {"f_c", "f_l", "f_h", "b", "w", "q", "policy", "p_ab", "s_bob", "p0", "delta",
          "quad_points"}},
        {"locations", {"bob_r", "bob_theta", "eve_r", "eve_theta"}},
        {"code", {"p", "scheme", "seed"}},
        {"sweep", {"variable", "values"}},
    };
    return keys;
}

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.resize(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!known_keys().count(section)) {
                throw ConfigError(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
        if (section.empty()) throw ConfigError(line_no, "key outside any section");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        const auto& allowed = known_keys().at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(line_no, "unknown key '" + key + "' in section [" + section + "]");
        }
        if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
        if (raw[section].count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
        raw[section][key] = {value, line_no};
    }
    return raw;
}

enum class Dimension { frequency, length, angle, decibel, scalar };

double unit_scale(const std::string& unit, Dimension dim, int line) {
    if (unit.empty()) {
        // Bare numbers are SI base units; angles default to degrees.
        return 1.0;
    }
    const std::string u = lower(unit);
    switch (dim) {
        case Dimension::frequency:
            if (u == "hz") return 1.0;
            if (u == "khz") return 1e3;
            if (u == "mhz") return 1e6;
            if (u == "ghz") return 1e9;
            if (u == "thz") return 1e12;
            break;
        case Dimension::length:
            if (u == "m") return 1.0;
            if (u == "cm") return 1e-2;
            if (u == "mm") return 1e-3;
            if (u == "um") return 1e-6;
            break;
        case Dimension::angle:
            if (u == "deg") return 1.0;
            if (u == "rad") return 180.0 / M_PI;
            break;
        case Dimension::decibel:
            if (u == "db") return 1.0;
            break;
        case Dimension::scalar:
            break;
    }
    throw ConfigError(line, "unit '" + unit + "' does not fit here");
}

double parse_number(const std::string& text, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(line, "bad number '" + text + "'");
    }
}

/// number [unit]; returns degrees for angles, SI otherwise.
double parse_quantity(const std::string& text, Dimension dim, int line) {
    const std::string t = trim(text);
    std::size_t split = t.size();
    while (split > 0) {
        const char c = t[split - 1];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            --split;
        } else {
            break;
        }
    }
    const std::string number = trim(t.substr(0, split));
    const std::string unit = t.substr(split);
    if (number.empty()) throw ConfigError(line, "bad quantity '" + text + "'");
    return parse_number(number, line) * unit_scale(unit, dim, line);
}

class SectionReader {
public:
    SectionReader(const RawConfig& raw, const std::string& section) : section_(section) {
        auto it = raw.find(section);
        if (it != raw.end()) entries_ = &it->second;
    }

    bool has(const std::string& key) const { return entries_ && entries_->count(key); }
    const RawValue& at(const std::string& key) const { return entries_->at(key); }

    std::optional<double> quantity(const std::string& key, Dimension dim) const {
        if (!has(key)) return std::nullopt;
        const RawValue& rv = at(key);
        return parse_quantity(rv.text, dim, rv.line);
    }
    std::optional<std::string> text(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return at(key).text;
    }
    int line_of(const std::string& key) const { return has(key) ? at(key).line : 0; }

private:
    std::string section_;
    const Section* entries_ = nullptr;
};

std::uint64_t parse_unsigned(const std::string& text, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(line, "bad integer '" + text + "'");
    }
    return v;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    const RawConfig raw = tokenize(text);
    ScenarioConfig cfg;

    // [antenna]
    SectionReader antenna(raw, "antenna");
    if (auto kind = antenna.text("kind")) {
        cfg.antenna_kind = lower(*kind);
    } else {
        throw ConfigError(0, "missing required key: antenna.kind");
    }
    static const std::vector<std::string> kinds = {"phased_array", "parabolic_dish", "leaky_wave",
                                                   "diagonal_horn", "horn_with_block"};
    if (std::find(kinds.begin(), kinds.end(), cfg.antenna_kind) == kinds.end()) {
        throw ConfigError(antenna.line_of("kind"), "unknown antenna kind '" + cfg.antenna_kind +
                                                       "'");
    }
    if (auto v = antenna.quantity("elements", Dimension::scalar)) {
        if (*v < 2 || *v != std::floor(*v)) {
            throw ConfigError(antenna.line_of("elements"), "elements must be an integer >= 2");
        }
        cfg.elements = static_cast<unsigned>(*v);
    }
    if (auto v = antenna.quantity("spacing", Dimension::length)) cfg.spacing_m = *v;
    if (auto v = antenna.quantity("diameter", Dimension::length)) cfg.diameter_m = *v;
    if (auto v = antenna.quantity("focal_length", Dimension::length)) cfg.focal_length_m = *v;
    if (auto v = antenna.quantity("plate_separation", Dimension::length)) {
        cfg.plate_separation_m = *v;
    }
    if (auto v = antenna.quantity("attenuation", Dimension::scalar)) cfg.attenuation_per_m = *v;
    if (auto v = antenna.quantity("horn_length", Dimension::length)) cfg.horn_length_m = *v;
    if (auto v = antenna.quantity("aperture", Dimension::length)) cfg.aperture_m = *v;
    if (auto v = antenna.quantity("beam_waist", Dimension::length)) cfg.beam_waist_m = *v;
    if (auto v = antenna.quantity("block_width", Dimension::length)) cfg.block_width_m = *v;

    // [plan]
    SectionReader plan(raw, "plan");
    std::vector<std::string> missing;
    const std::optional<double> f_c = plan.quantity("f_c", Dimension::frequency);
    const std::optional<double> f_l = plan.quantity("f_l", Dimension::frequency);
    const std::optional<double> f_h = plan.quantity("f_h", Dimension::frequency);
    const std::optional<double> bandwidth = plan.quantity("b", Dimension::frequency);
    const std::optional<double> width = plan.quantity("w", Dimension::frequency);

    double center = f_c.value_or(200e9);
    double b_hz = 0.0;
    if (bool(f_l) != bool(f_h)) {
        throw ConfigError(f_l ? plan.line_of("f_l") : plan.line_of("f_h"),
                          "f_l and f_h must be given together");
    }
    if (f_l && f_h) {
        if (bandwidth || f_c) {
            throw ConfigError(plan.line_of("f_l"), "give either f_l/f_h or f_c/b, not both");
        }
        b_hz = *f_h - *f_l;
        if (!(b_hz > 0.0)) throw ConfigError(plan.line_of("f_h"), "f_h must exceed f_l");
        center = 0.5 * (*f_l + *f_h);
    } else if (bandwidth) {
        if (!(*bandwidth > 0.0)) throw ConfigError(plan.line_of("b"), "b must be positive");
        b_hz = *bandwidth;
    } else {
        missing.push_back("plan.b (or plan.f_l + plan.f_h)");
    }

    if (width && !(*width > 0.0)) {
        throw ConfigError(plan.line_of("w"), "w must be positive");
    }
    std::size_t q = 0;
    double w_hz = width.value_or(1e9);
    if (auto qv = plan.quantity("q", Dimension::scalar)) {
        if (*qv < 1 || *qv != std::floor(*qv)) {
            throw ConfigError(plan.line_of("q"), "q must be a positive integer");
        }
        q = static_cast<std::size_t>(*qv);
        if (width && b_hz > 0.0 && std::abs(double(q) * *width - b_hz) > 1e-6 * b_hz) {
            throw ConfigError(plan.line_of("q"), "q * w does not reproduce the bandwidth");
        }
        if (b_hz > 0.0) w_hz = b_hz / double(q);
    } else if (b_hz > 0.0) {
        const double ratio = b_hz / w_hz;
        q = static_cast<std::size_t>(std::llround(ratio));
        if (q < 1 || std::abs(double(q) * w_hz - b_hz) > 1e-6 * b_hz) {
            throw ConfigError(plan.line_of("w"),
                              "subchannel width must slice the bandwidth into a whole number of "
                              "channels");
        }
        w_hz = b_hz / double(q);
    }

    // Detection threshold.
    double delta = 0.0;
    if (auto d = plan.text("delta")) {
        if (lower(*d) == "thermal") {
            cfg.thermal_delta = true;
            try {
                delta = thermal_threshold(center);
            } catch (const OutOfRange& e) {
                throw ConfigError(plan.line_of("delta"), e.what());
            }
        } else {
            delta = parse_quantity(*d, Dimension::scalar, plan.line_of("delta"));
            if (!(delta > 0.0)) {
                throw ConfigError(plan.line_of("delta"), "delta must be positive");
            }
        }
    } else {
        missing.push_back("plan.delta");
    }

    // Power policy.
    const std::optional<double> p_ab = plan.quantity("p_ab", Dimension::decibel);
    const std::optional<double> s_bob = plan.quantity("s_bob", Dimension::scalar);
    const std::optional<double> p0 = plan.quantity("p0", Dimension::scalar);
    const int policy_sources = int(bool(p_ab)) + int(bool(s_bob)) + int(bool(p0));
    if (policy_sources > 1) {
        throw ConfigError(0, "give exactly one of plan.p_ab, plan.s_bob, plan.p0");
    }
    if (auto policy = plan.text("policy")) {
        const std::string pol = lower(*policy);
        if (pol != "equalize" && pol != "uniform") {
            throw ConfigError(plan.line_of("policy"), "policy must be 'equalize' or 'uniform'");
        }
        if ((pol == "uniform") != bool(p0)) {
            throw ConfigError(plan.line_of("policy"),
                              "policy does not match the power key (p_ab/s_bob equalize, p0 "
                              "uniform)");
        }
    }
    PowerPolicy policy = UniformSpectralDensity{0.0};
    if (p_ab) {
        if (delta > 0.0 && w_hz > 0.0) {
            policy = EqualizeAtBob{power_for_margin_db(*p_ab, delta, w_hz)};
        }
        cfg.power_margin_db = *p_ab;
    } else if (s_bob) {
        if (!(*s_bob > 0.0)) throw ConfigError(plan.line_of("s_bob"), "s_bob must be positive");
        policy = EqualizeAtBob{*s_bob};
    } else if (p0) {
        if (!(*p0 > 0.0)) throw ConfigError(plan.line_of("p0"), "p0 must be positive");
        policy = UniformSpectralDensity{*p0};
    } else {
        missing.push_back("plan.p_ab (or plan.s_bob / plan.p0)");
    }

    if (!missing.empty()) {
        std::string list;
        for (const std::string& key : missing) {
            if (!list.empty()) list += ", ";
            list += key;
        }
        throw ConfigError(0, "missing required key(s): " + list);
    }

    cfg.plan.f_low_hz = center - 0.5 * b_hz;
    cfg.plan.f_high_hz = center + 0.5 * b_hz;
    cfg.plan.q = q;
    cfg.plan.policy = policy;
    cfg.plan.delta_w_per_m2_hz = delta;
    if (auto v = plan.quantity("quad_points", Dimension::scalar)) {
        if (*v < 1 || *v > 64 || *v != std::floor(*v)) {
            throw ConfigError(plan.line_of("quad_points"), "quad_points must be in [1, 64]");
        }
        cfg.plan.quadrature_points = static_cast<std::size_t>(*v);
    }
    cfg.plan.validate();

    // [locations]
    SectionReader locations(raw, "locations");
    if (auto v = locations.quantity("bob_r", Dimension::length)) cfg.bob.range_m = *v;
    if (auto v = locations.quantity("bob_theta", Dimension::angle)) {
        cfg.bob.theta_rad = *v * deg_to_rad;
    }
    cfg.eve_range_m = cfg.bob.range_m;  // Eve sweeps a ring through Bob by default
    if (auto v = locations.quantity("eve_r", Dimension::length)) cfg.eve_range_m = *v;
    if (auto v = locations.quantity("eve_theta", Dimension::angle)) {
        cfg.eve_theta_rad = *v * deg_to_rad;
    }
    if (!(cfg.bob.range_m > 0.0)) {
        throw ConfigError(locations.line_of("bob_r"), "bob_r must be positive");
    }
    if (!(cfg.eve_range_m > 0.0)) {
        throw ConfigError(locations.line_of("eve_r"), "eve_r must be positive");
    }

    // [code]
    SectionReader code(raw, "code");
    if (auto v = code.text("p")) {
        const std::uint64_t p = parse_unsigned(*v, code.line_of("p"));
        if (p >= (1ull << 31)) throw ConfigError(code.line_of("p"), "p must be below 2^31");
        cfg.prime = static_cast<std::uint32_t>(p);
    }
    if (auto v = code.text("scheme")) {
        const std::uint64_t s = parse_unsigned(*v, code.line_of("scheme"));
        if (s != 1 && s != 2) throw ConfigError(code.line_of("scheme"), "scheme must be 1 or 2");
        cfg.scheme = s == 1 ? Scheme::single_message : Scheme::multi_message;
    }
    if (auto v = code.text("seed")) cfg.seed = parse_unsigned(*v, code.line_of("seed"));

    // [sweep]
    SectionReader sweep(raw, "sweep");
    if (sweep.has("variable") || sweep.has("values")) {
        if (!sweep.has("variable") || !sweep.has("values")) {
            throw ConfigError(0, "[sweep] needs both 'variable' and 'values'");
        }
        SweepSpec spec;
        const std::string var = lower(*sweep.text("variable"));
        Dimension dim = Dimension::frequency;
        if (var == "bandwidth") {
            spec.variable = SweepVariable::bandwidth;
        } else if (var == "subchannel") {
            spec.variable = SweepVariable::subchannel_width;
        } else if (var == "power") {
            spec.variable = SweepVariable::power_margin;
            dim = Dimension::decibel;
        } else {
            throw ConfigError(sweep.line_of("variable"),
                              "sweep variable must be bandwidth, subchannel, or power");
        }
        const std::string values = *sweep.text("values");
        const int values_line = sweep.line_of("values");
        std::size_t pos = 0;
        while (pos <= values.size()) {
            std::size_t comma = values.find(',', pos);
            if (comma == std::string::npos) comma = values.size();
            const std::string tok = trim(values.substr(pos, comma - pos));
            if (tok.empty()) throw ConfigError(values_line, "empty sweep value");
            spec.values.push_back(parse_quantity(tok, dim, values_line));
            pos = comma + 1;
            if (comma == values.size()) break;
        }
        if (spec.values.empty()) throw ConfigError(values_line, "sweep values list is empty");
        cfg.sweep = std::move(spec);
    }

    // The code must match the plan's slicing when simulation commands run;
    // checked here so every command reports it consistently.
    if (cfg.prime < 2 || cfg.plan.q > cfg.prime - 1) {
        throw ConfigError(0, "plan needs q <= p - 1 distinct evaluation points (q = " +
                                 std::to_string(cfg.plan.q) + ", p = " + std::to_string(cfg.prime) +
                                 ")");
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::shared_ptr<const AntennaPattern> ScenarioConfig::make_antenna() const {
    try {
        if (antenna_kind == "phased_array") {
            return std::make_shared<PhasedArrayAntenna>(elements, spacing_m);
        }
        if (antenna_kind == "parabolic_dish") {
            return std::make_shared<ParabolicDishAntenna>(diameter_m, focal_length_m);
        }
        if (antenna_kind == "leaky_wave") {
            return std::make_shared<LeakyWaveAntenna>(plate_separation_m, attenuation_per_m);
        }
        if (antenna_kind == "diagonal_horn") {
            return std::make_shared<DiagonalHornAntenna>(horn_length_m, aperture_m);
        }
        if (antenna_kind == "horn_with_block") {
            return std::make_shared<HornWithBlockAntenna>(beam_waist_m, block_width_m);
        }
    } catch (const BadGeometry& e) {
        throw ConfigError(0, e.what());
    }
    throw ConfigError(0, "unknown antenna kind '" + antenna_kind + "'");
}

std::shared_ptr<const ChannelGainModel> ScenarioConfig::make_medium() const {
    return std::make_shared<FreeSpaceSpherical>();
}

Location ScenarioConfig::eve() const {
    if (!eve_theta_rad) {
        throw ConfigError(0, "this command needs locations.eve_theta");
    }
    return Location{eve_range_m, *eve_theta_rad};
}

SecrecyCode ScenarioConfig::make_code() const {
    try {
        return SecrecyCode(PrimeField(prime), plan.q, scheme);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
}

namespace {

std::string format_si(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ScenarioConfig::summary() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("antenna.kind", antenna_kind);
    if (antenna_kind == "phased_array") {
        out.emplace_back("antenna.elements", std::to_string(elements));
        out.emplace_back("antenna.spacing_m", format_si(spacing_m));
    } else if (antenna_kind == "parabolic_dish") {
        out.emplace_back("antenna.diameter_m", format_si(diameter_m));
        out.emplace_back("antenna.focal_length_m", format_si(focal_length_m));
    } else if (antenna_kind == "leaky_wave") {
        out.emplace_back("antenna.plate_separation_m", format_si(plate_separation_m));
        out.emplace_back("antenna.attenuation_per_m", format_si(attenuation_per_m));
    } else if (antenna_kind == "diagonal_horn") {
        out.emplace_back("antenna.horn_length_m", format_si(horn_length_m));
        out.emplace_back("antenna.aperture_m", format_si(aperture_m));
    } else {
        out.emplace_back("antenna.beam_waist_m", format_si(beam_waist_m));
        out.emplace_back("antenna.block_width_m", format_si(block_width_m));
    }
    out.emplace_back("plan.f_low_hz", format_si(plan.f_low_hz));
    out.emplace_back("plan.f_high_hz", format_si(plan.f_high_hz));
    out.emplace_back("plan.q", std::to_string(plan.q));
    out.emplace_back("plan.w_hz", format_si(plan.subchannel_width_hz()));
    if (const auto* eq = std::get_if<EqualizeAtBob>(&plan.policy)) {
        out.emplace_back("plan.policy", "equalize");
        out.emplace_back("plan.s_bob_w_per_m2", format_si(eq->s_bob_w_per_m2));
    } else {
        out.emplace_back("plan.policy", "uniform");
        out.emplace_back("plan.p0_w_per_hz",
                         format_si(std::get<UniformSpectralDensity>(plan.policy).p0_w_per_hz));
    }
    out.emplace_back("plan.delta_w_per_m2_hz", format_si(plan.delta_w_per_m2_hz));
    out.emplace_back("plan.delta_source", thermal_delta ? "thermal" : "explicit");
    out.emplace_back("plan.quad_points", std::to_string(plan.quadrature_points));
    out.emplace_back("locations.bob_r_m", format_si(bob.range_m));
    out.emplace_back("locations.bob_theta_deg", format_si(bob.theta_rad / deg_to_rad));
    out.emplace_back("locations.eve_r_m", format_si(eve_range_m));
    if (eve_theta_rad) {
        out.emplace_back("locations.eve_theta_deg", format_si(*eve_theta_rad / deg_to_rad));
    }
    out.emplace_back("code.p", std::to_string(prime));
    out.emplace_back("code.scheme", scheme == Scheme::single_message ? "1" : "2");
    out.emplace_back("code.seed", std::to_string(seed));
    if (sweep) {
        out.emplace_back("sweep.variable", sweep->variable == SweepVariable::bandwidth
                                               ? "bandwidth"
                                               : sweep->variable == SweepVariable::subchannel_width
                                                     ? "subchannel"
                                                     : "power");
        std::string values;
        for (double v : sweep->values) {
            if (!values.empty()) values += ",";
            values += format_si(v);
        }
        out.emplace_back("sweep.values", values);
    }
    return out;
}

}  // namespace blindlink
