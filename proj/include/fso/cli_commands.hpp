#ifndef FSO_CLI_COMMANDS_HPP
#define FSO_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fso/scenario.hpp"

namespace fso::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

struct CommonOptions {
    std::string preset;       // weather preset name, empty when not given
    std::string config_path;  // TOML scenario file, empty when not given
    std::optional<std::uint64_t> seed;
    bool no_noise = false;
    std::string eye_csv_path;
    std::string json_path;  // "-" writes JSON to stdout
    bool color = false;
};

struct SweepOptions {
    std::string param;  // gamma_db_per_km | range_km | power_dbm
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string out_path;  // empty writes CSV to stdout
};

struct BudgetOptions {
    bool no_geometric = false;
};

struct MaxRangeOptions {
    double q_target = 0.0;
};

/// Defaults, then config file, then the preset/seed/noise flags.
ScenarioConfig resolve_config(const CommonOptions& options);

int cmd_simulate(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& options, const SweepOptions& sweep,
              std::ostream& out, std::ostream& err);
int cmd_budget(const CommonOptions& options, const BudgetOptions& budget,
               std::ostream& out, std::ostream& err);
int cmd_max_range(const CommonOptions& options, const MaxRangeOptions& max_range,
                  std::ostream& out, std::ostream& err);

}  // namespace fso::cli

#endif
