#include "fso/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fso {

using nlohmann::ordered_json;

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ordered_json config_to_json(const ScenarioConfig& c)
{
    ordered_json j;
    j["bit_rate_hz"] = c.bit_rate_hz;
    j["sequence_length_bits"] = c.sequence_length_bits;
    j["samples_per_bit"] = c.samples_per_bit;
    j["prbs_order"] = c.prbs_order;
    j["tx_cutoff_factor"] = c.tx_cutoff_factor;
    j["receiver_cutoff_factor"] = c.receiver_cutoff_factor;
    j["sensitivity_dbm"] = c.sensitivity_dbm;
    j["laser"] = {{"wavelength_nm", c.laser.wavelength_nm},
                  {"power_dbm", c.laser.power_dbm},
                  {"linewidth_hz", c.laser.linewidth_hz}};
    j["modulator"] = {{"extinction_ratio_db", c.modulator.extinction_ratio_db},
                      {"insertion_loss_db", c.modulator.insertion_loss_db}};
    ordered_json channel;
    channel["preset"] = c.channel_preset.empty() ? ordered_json(nullptr)
                                                 : ordered_json(c.channel_preset);
    channel["gamma_db_per_km"] = c.channel.gamma_db_per_km;
    channel["range_km"] = c.channel.range_km;
    channel["tx_aperture_m"] = c.channel.tx_aperture_m;
    channel["rx_aperture_m"] = c.channel.rx_aperture_m;
    channel["divergence_rad"] = c.channel.divergence_rad;
    channel["extra_loss_db"] = c.channel.extra_loss_db;
    j["channel"] = channel;
    j["apd"] = {{"responsivity_a_per_w", c.apd.responsivity_a_per_w},
                {"dark_current_a", c.apd.dark_current_a},
                {"ionization_ratio", c.apd.ionization_ratio},
                {"gain", c.apd.gain},
                {"thermal_psd_a2_per_hz", c.apd.thermal_psd_a2_per_hz}};
    j["noise"] = {{"enabled", c.noise.enabled}, {"rng_seed", c.noise.rng_seed}};
    return j;
}

ordered_json budget_to_json(const LinkLossBreakdown& loss, const LinkBudget& budget)
{
    ordered_json j;
    j["link_loss"] = {{"atmospheric_db", loss.atmospheric_db},
                      {"geometric_db", loss.geometric_db},
                      {"extra_db", loss.extra_db},
                      {"total_db", loss.total_db},
                      {"transmittance", loss.transmittance}};
    ordered_json b;
    b["received_power_dbm"] = budget.received_power_dbm;
    b["sensitivity_dbm"] = budget.sensitivity_dbm;
    b["link_margin_db"] = budget.link_margin_db;
    b["paper_link_margin"] = budget.paper_link_margin.has_value()
                                 ? ordered_json(*budget.paper_link_margin)
                                 : ordered_json(nullptr);
    b["paper_link_margin_note"] = "paper-compat, non-physical units";
    j["link_budget"] = b;
    return j;
}

ordered_json report_to_json(const SimReport& r)
{
    ordered_json j;
    j["config"] = config_to_json(r.config);
    const ordered_json budget = budget_to_json(r.loss, r.budget);
    j["link_loss"] = budget["link_loss"];
    j["received_power_dbm"] = r.received_power_dbm;
    j["modulation_penalty_db"] = r.modulation_penalty_db;
    j["link_budget"] = budget["link_budget"];
    ordered_json eye;
    eye["mu1"] = r.eye.mu1;
    eye["mu0"] = r.eye.mu0;
    eye["sigma1"] = r.eye.sigma1;
    eye["sigma0"] = r.eye.sigma0;
    eye["q_factor"] = std::isinf(r.eye.q_factor) ? ordered_json(nullptr)
                                                 : ordered_json(r.eye.q_factor);
    eye["q_factor_is_infinite"] = std::isinf(r.eye.q_factor) && r.eye.q_factor > 0.0;
    eye["ber_estimate"] = r.eye.ber_estimate;
    eye["eye_height"] = r.eye.eye_height;
    eye["sampling_phase"] = r.eye.sampling_phase;
    j["eye_metrics"] = eye;
    return j;
}

std::string report_to_json_string(const SimReport& report)
{
    return report_to_json(report).dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "value,q_factor,ber_estimate,link_margin_db,total_db\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.value) << ',' << format_double(r.q_factor) << ','
            << format_double(r.ber_estimate) << ',' << format_double(r.link_margin_db) << ','
            << format_double(r.total_db) << '\n';
    }
}

void write_eye_csv(std::ostream& out, const EyeDiagram& eye)
{
    out << "trace_id,phase_ui,current_a\n";
    const double spb = static_cast<double>(eye.samples_per_ui);
    for (std::size_t t = 0; t < eye.traces.size(); ++t) {
        for (std::size_t i = 0; i < eye.traces[t].size(); ++i) {
            out << t << ',' << format_double(static_cast<double>(i) / spb) << ','
                << format_double(eye.traces[t][i]) << '\n';
        }
    }
}

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("CSV input is empty");
    }
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.header.push_back(cell);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row_stream(line);
        std::vector<double> row;
        while (std::getline(row_stream, cell, ',')) {
            const char* begin = cell.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0') {
                throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                            ": non-numeric cell '" + cell + "'");
            }
            row.push_back(v);
        }
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                        ": expected " + std::to_string(table.header.size()) +
                                        " cells, got " + std::to_string(row.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace fso
