#include "fso/cli_commands.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fso/config_io.hpp"
#include "fso/report_io.hpp"

namespace fso::cli {

namespace {

const char* kBold = "\033[1m";
const char* kReset = "\033[0m";

std::string heading(const std::string& text, bool color)
{
    return color ? kBold + text + kReset : text;
}

// Tables round to 4 significant digits; machine outputs keep full precision.
std::string fixed4(double v)
{
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write to '" + path + "'");
    }
    out << content;
}

double mean(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Transmit-side power accounting without running the receiver: mean
/// modulated power relative to the CW carrier.
double modulation_penalty_db(const ScenarioConfig& c)
{
    const BitSequence bits = prbs_generate(c.prbs_order, 1, c.sequence_length_bits);
    const SampledWaveform drive = nrz_encode(bits, c.samples_per_bit, c.sample_rate_hz());
    FilterSpec tx_filter;
    tx_filter.order = 4;
    tx_filter.cutoff_hz = c.tx_cutoff_factor * c.bit_rate_hz;
    const SampledWaveform shaped = bessel_lowpass(drive, tx_filter);
    const OpticalSignal carrier = cw_laser(c.laser, shaped.samples.size(), c.sample_rate_hz());
    const OpticalSignal modulated = mzm_modulate(carrier, shaped, c.modulator);
    return c.laser.power_dbm - watts_to_dbm(mean(modulated.power_w.samples));
}

}  // namespace

ScenarioConfig resolve_config(const CommonOptions& options)
{
    ScenarioConfig config;
    if (!options.config_path.empty()) {
        config = load_scenario_toml(options.config_path);
    }
    if (!options.preset.empty()) {
        const ChannelParams named = preset(options.preset);
        config.channel.gamma_db_per_km = named.gamma_db_per_km;
        config.channel.range_km = named.range_km;
        config.channel_preset = options.preset;
    }
    if (options.seed.has_value()) {
        config.noise.rng_seed = *options.seed;
    }
    if (options.no_noise) {
        config.noise.enabled = false;
    }
    validate(config);
    return config;
}

int cmd_simulate(const CommonOptions& options, std::ostream& out, std::ostream& err)
{
    ScenarioConfig config;
    try {
        config = resolve_config(options);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        EyeDiagram eye;
        const SimReport report = run_link(config, options.eye_csv_path.empty() ? nullptr : &eye);
        const std::string json = report_to_json_string(report);
        if (options.json_path.empty() || options.json_path == "-") {
            out << json;
        } else {
            write_file(options.json_path, json);
        }
        if (!options.eye_csv_path.empty()) {
            std::ostringstream csv;
            write_eye_csv(csv, eye);
            write_file(options.eye_csv_path, csv.str());
        }
        err << "simulate: " << fixed4(report.elapsed_seconds * 1e3) << " ms\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int cmd_sweep(const CommonOptions& options, const SweepOptions& sweep,
              std::ostream& out, std::ostream& err)
{
    ScenarioConfig base;
    try {
        base = resolve_config(options);
        if (sweep.param != "gamma_db_per_km" && sweep.param != "range_km" &&
            sweep.param != "power_dbm") {
            throw std::invalid_argument(
                "unknown sweep parameter '" + sweep.param +
                "' (supported: gamma_db_per_km, range_km, power_dbm)");
        }
        if (sweep.steps < 1) {
            throw std::invalid_argument("sweep needs at least one step");
        }
        if (!std::isfinite(sweep.from) || !std::isfinite(sweep.to)) {
            throw std::invalid_argument("sweep endpoints must be finite");
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        std::vector<SweepRow> rows;
        rows.reserve(static_cast<std::size_t>(sweep.steps));
        for (int i = 0; i < sweep.steps; ++i) {
            const double value =
                sweep.steps == 1
                    ? sweep.from
                    : sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);
            // Every point reuses the scenario seed so the Q(value) curve is a
            // single deterministic noise realization.
            ScenarioConfig cfg = base;
            if (sweep.param == "gamma_db_per_km") cfg.channel.gamma_db_per_km = value;
            else if (sweep.param == "range_km") cfg.channel.range_km = value;
            else cfg.laser.power_dbm = value;

            const SimReport report = run_link(cfg);
            rows.push_back({value, report.eye.q_factor, report.eye.ber_estimate,
                            report.budget.link_margin_db, report.loss.total_db});
        }

        if (sweep.out_path.empty()) {
            write_sweep_csv(out, rows);
        } else {
            std::ostringstream csv;
            write_sweep_csv(csv, rows);
            write_file(sweep.out_path, csv.str());
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int cmd_budget(const CommonOptions& options, const BudgetOptions& budget_opts,
               std::ostream& out, std::ostream& err)
{
    ScenarioConfig config;
    try {
        config = resolve_config(options);
        if (budget_opts.no_geometric) {
            config.channel.divergence_rad = 0.0;
            config.channel.rx_aperture_m = config.channel.tx_aperture_m;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        const LinkLossBreakdown loss = link_loss(config.channel);
        const double penalty = modulation_penalty_db(config);
        LinkBudget budget;
        budget.received_power_dbm = config.laser.power_dbm - penalty - loss.total_db;
        budget.sensitivity_dbm = config.sensitivity_dbm;
        budget.link_margin_db =
            link_margin_db(budget.received_power_dbm, budget.sensitivity_dbm);
        try {
            budget.paper_link_margin =
                paper_link_margin(budget.received_power_dbm, budget.sensitivity_dbm);
        } catch (const std::invalid_argument&) {
            budget.paper_link_margin.reset();
        }

        if (!options.json_path.empty()) {
            nlohmann::ordered_json j = budget_to_json(loss, budget);
            j["modulation_penalty_db"] = penalty;
            const std::string text = j.dump(2) + "\n";
            if (options.json_path == "-") {
                out << text;
            } else {
                write_file(options.json_path, text);
            }
            return kExitOk;
        }

        const bool color = options.color;
        out << heading("Loss breakdown", color) << "\n";
        out << "  atmospheric     " << fixed4(loss.atmospheric_db) << " dB"
            << "  (transmittance " << fixed4(loss.transmittance) << ")\n";
        out << "  geometric       " << fixed4(loss.geometric_db) << " dB\n";
        out << "  extra           " << fixed4(loss.extra_db) << " dB\n";
        out << "  total           " << fixed4(loss.total_db) << " dB\n";
        out << heading("Power", color) << "\n";
        out << "  laser                 " << fixed4(config.laser.power_dbm) << " dBm\n";
        out << "  modulation penalty    " << fixed4(penalty) << " dB\n";
        out << "  received              " << fixed4(budget.received_power_dbm) << " dBm\n";
        out << "  sensitivity           " << fixed4(budget.sensitivity_dbm) << " dBm\n";
        out << heading("Margins", color) << "\n";
        out << "  link margin           " << fixed4(budget.link_margin_db) << " dB\n";
        if (budget.paper_link_margin.has_value()) {
            out << "  paper-compat margin   " << fixed4(*budget.paper_link_margin)
                << "  (non-physical units)\n";
        } else {
            out << "  paper-compat margin   undefined for this dBm ratio\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int cmd_max_range(const CommonOptions& options, const MaxRangeOptions& max_range,
                  std::ostream& out, std::ostream& err)
{
    ScenarioConfig config;
    try {
        config = resolve_config(options);
        if (!(max_range.q_target > 0.0)) {
            throw std::invalid_argument("--q-target must be positive");
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        const double km = max_range_for_q(config, max_range.q_target);
        out << "max_range_km = " << format_double(km) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

}  // namespace fso::cli
