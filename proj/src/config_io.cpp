#include "fso/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fso {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;  // raw token
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s)
{
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

std::vector<Entry> tokenize(const std::string& text)
{
    std::vector<Entry> entries;
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(line_no, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected `key = value`");
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty()) fail(line_no, "empty key");
        if (e.value.empty()) fail(line_no, "empty value");
        entries.push_back(std::move(e));
    }
    return entries;
}

double as_double(const Entry& e)
{
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') fail(e.line, "expected a number for '" + e.key + "'");
    return v;
}

std::uint64_t as_uint(const Entry& e)
{
    try {
        if (e.value.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("not a plain integer");
        }
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(e.line, "expected a non-negative integer for '" + e.key + "'");
    }
}

bool as_bool(const Entry& e)
{
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(e.line, "expected true or false for '" + e.key + "'");
}

std::string as_string(const Entry& e)
{
    if (e.value.size() < 2 || e.value.front() != '"' || e.value.back() != '"') {
        fail(e.line, "expected a double-quoted string for '" + e.key + "'");
    }
    return e.value.substr(1, e.value.size() - 2);
}

void apply(ScenarioConfig& c, const Entry& e)
{
    const std::string id = e.section.empty() ? e.key : e.section + "." + e.key;

    if (id == "bit_rate_hz") c.bit_rate_hz = as_double(e);
    else if (id == "sequence_length_bits") c.sequence_length_bits = static_cast<std::size_t>(as_uint(e));
    else if (id == "samples_per_bit") c.samples_per_bit = static_cast<std::size_t>(as_uint(e));
    else if (id == "prbs_order") c.prbs_order = static_cast<int>(as_uint(e));
    else if (id == "tx_cutoff_factor") c.tx_cutoff_factor = as_double(e);
    else if (id == "receiver_cutoff_factor") c.receiver_cutoff_factor = as_double(e);
    else if (id == "sensitivity_dbm") c.sensitivity_dbm = as_double(e);
    else if (id == "laser.wavelength_nm") c.laser.wavelength_nm = as_double(e);
    else if (id == "laser.power_dbm") c.laser.power_dbm = as_double(e);
    else if (id == "laser.linewidth_hz") c.laser.linewidth_hz = as_double(e);
    else if (id == "modulator.extinction_ratio_db") c.modulator.extinction_ratio_db = as_double(e);
    else if (id == "modulator.insertion_loss_db") c.modulator.insertion_loss_db = as_double(e);
    else if (id == "channel.preset") { /* applied in a first pass */ }
    else if (id == "channel.gamma_db_per_km") c.channel.gamma_db_per_km = as_double(e);
    else if (id == "channel.range_km") c.channel.range_km = as_double(e);
    else if (id == "channel.tx_aperture_m") c.channel.tx_aperture_m = as_double(e);
    else if (id == "channel.rx_aperture_m") c.channel.rx_aperture_m = as_double(e);
    else if (id == "channel.divergence_rad") c.channel.divergence_rad = as_double(e);
    else if (id == "channel.extra_loss_db") c.channel.extra_loss_db = as_double(e);
    else if (id == "apd.responsivity_a_per_w") c.apd.responsivity_a_per_w = as_double(e);
    else if (id == "apd.dark_current_a") c.apd.dark_current_a = as_double(e);
    else if (id == "apd.ionization_ratio") c.apd.ionization_ratio = as_double(e);
    else if (id == "apd.gain") c.apd.gain = as_double(e);
    else if (id == "apd.thermal_psd_a2_per_hz") c.apd.thermal_psd_a2_per_hz = as_double(e);
    else if (id == "noise.enabled") c.noise.enabled = as_bool(e);
    else if (id == "noise.rng_seed") c.noise.rng_seed = as_uint(e);
    else fail(e.line, "unknown config key '" + id + "'");
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

ScenarioConfig parse_scenario_toml(const std::string& text)
{
    const std::vector<Entry> entries = tokenize(text);

    ScenarioConfig config;
    config.channel_preset.clear();
    for (const Entry& e : entries) {
        if (e.section == "channel" && e.key == "preset") {
            const std::string name = as_string(e);
            try {
                config.channel = preset(name);
            } catch (const std::invalid_argument& err) {
                fail(e.line, err.what());
            }
            config.channel_preset = name;
        }
    }
    for (const Entry& e : entries) {
        apply(config, e);
    }
    return config;
}

ScenarioConfig load_scenario_toml(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario_toml(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string scenario_to_toml(const ScenarioConfig& c)
{
    std::ostringstream out;
    out << "bit_rate_hz = " << format_double(c.bit_rate_hz) << "\n";
    out << "sequence_length_bits = " << c.sequence_length_bits << "\n";
    out << "samples_per_bit = " << c.samples_per_bit << "\n";
    out << "prbs_order = " << c.prbs_order << "\n";
    out << "tx_cutoff_factor = " << format_double(c.tx_cutoff_factor) << "\n";
    out << "receiver_cutoff_factor = " << format_double(c.receiver_cutoff_factor) << "\n";
    out << "sensitivity_dbm = " << format_double(c.sensitivity_dbm) << "\n";
    out << "\n[laser]\n";
    out << "wavelength_nm = " << format_double(c.laser.wavelength_nm) << "\n";
    out << "power_dbm = " << format_double(c.laser.power_dbm) << "\n";
    out << "linewidth_hz = " << format_double(c.laser.linewidth_hz) << "  # recorded, unused\n";
    out << "\n[modulator]\n";
    out << "extinction_ratio_db = " << format_double(c.modulator.extinction_ratio_db) << "\n";
    out << "insertion_loss_db = " << format_double(c.modulator.insertion_loss_db) << "\n";
    out << "\n[channel]\n";
    if (!c.channel_preset.empty()) {
        out << "preset = \"" << c.channel_preset << "\"\n";
    }
    out << "gamma_db_per_km = " << format_double(c.channel.gamma_db_per_km) << "\n";
    out << "range_km = " << format_double(c.channel.range_km) << "\n";
    out << "tx_aperture_m = " << format_double(c.channel.tx_aperture_m) << "\n";
    out << "rx_aperture_m = " << format_double(c.channel.rx_aperture_m) << "\n";
    out << "divergence_rad = " << format_double(c.channel.divergence_rad) << "\n";
    out << "extra_loss_db = " << format_double(c.channel.extra_loss_db) << "\n";
    out << "\n[apd]\n";
    out << "responsivity_a_per_w = " << format_double(c.apd.responsivity_a_per_w) << "\n";
    out << "dark_current_a = " << format_double(c.apd.dark_current_a) << "\n";
    out << "ionization_ratio = " << format_double(c.apd.ionization_ratio) << "\n";
    out << "gain = " << format_double(c.apd.gain) << "\n";
    out << "thermal_psd_a2_per_hz = " << format_double(c.apd.thermal_psd_a2_per_hz) << "\n";
    out << "\n[noise]\n";
    out << "enabled = " << (c.noise.enabled ? "true" : "false") << "\n";
    out << "rng_seed = " << c.noise.rng_seed << "\n";
    return out.str();
}

void save_scenario_toml(const ScenarioConfig& config, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write config file '" + path + "'");
    }
    out << scenario_to_toml(config);
}

}  // namespace fso
