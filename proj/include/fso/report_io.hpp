#ifndef FSO_REPORT_IO_HPP
#define FSO_REPORT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fso/scenario.hpp"

namespace fso {

nlohmann::ordered_json config_to_json(const ScenarioConfig& config);

/// Serialized report. Wall-clock timing is deliberately left out so repeated
/// seeded runs serialize byte-identically.
nlohmann::ordered_json report_to_json(const SimReport& report);

std::string report_to_json_string(const SimReport& report);

nlohmann::ordered_json budget_to_json(const LinkLossBreakdown& loss, const LinkBudget& budget);

struct SweepRow {
    double value = 0.0;
    double q_factor = 0.0;
    double ber_estimate = 0.5;
    double link_margin_db = 0.0;
    double total_db = 0.0;
};

/// `value,q_factor,ber_estimate,link_margin_db,total_db`, one row per sweep
/// point, round-trip-exact doubles.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// `trace_id,phase_ui,current_a`, one row per eye-trace sample; phase_ui
/// spans [0, 2) across the two-UI window.
void write_eye_csv(std::ostream& out, const EyeDiagram& eye);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads back any CSV this tool writes (numeric cells, inf/nan included).
CsvTable read_csv(std::istream& in);

/// Shortest representation that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace fso

#endif
