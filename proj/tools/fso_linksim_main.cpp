#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include "fso/cli_commands.hpp"

namespace {

bool stdout_color_enabled()
{
    if (std::getenv("FSO_LINKSIM_NO_COLOR") != nullptr) return false;
    return isatty(fileno(stdout)) != 0;
}

void add_common_flags(CLI::App& cmd, fso::cli::CommonOptions& opts)
{
    cmd.add_option("--preset", opts.preset, "Weather preset: clear, fog, or rain")
        ->check(CLI::IsMember({"clear", "fog", "rain"}));
    cmd.add_option("--config", opts.config_path, "Scenario TOML file");
    cmd.add_option("--seed", opts.seed, "Noise RNG seed");
    cmd.add_flag("--no-noise", opts.no_noise, "Disable receiver noise");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Free-space optical link simulator"};
    app.require_subcommand(1);

    fso::cli::CommonOptions sim_opts;
    sim_opts.color = stdout_color_enabled();
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run the full link once and emit a JSON report");
    add_common_flags(*simulate, sim_opts);
    simulate->add_option("--json", sim_opts.json_path,
                         "Write the JSON report to a file instead of stdout");
    simulate->add_option("--eye-csv", sim_opts.eye_csv_path,
                         "Write the folded eye traces as CSV");

    fso::cli::CommonOptions sweep_common;
    sweep_common.color = sim_opts.color;
    fso::cli::SweepOptions sweep_opts;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Sweep one parameter and emit a CSV metrics table");
    add_common_flags(*sweep, sweep_common);
    sweep->add_option("--param", sweep_opts.param,
                      "Parameter to sweep: gamma_db_per_km, range_km, or power_dbm")
        ->required();
    sweep->add_option("--from", sweep_opts.from, "First value")->required();
    sweep->add_option("--to", sweep_opts.to, "Last value")->required();
    sweep->add_option("--steps", sweep_opts.steps, "Number of points")->required();
    sweep->add_option("--out", sweep_opts.out_path, "Write the CSV to a file instead of stdout");

    fso::cli::CommonOptions budget_common;
    budget_common.color = sim_opts.color;
    fso::cli::BudgetOptions budget_opts;
    CLI::App* budget = app.add_subcommand(
        "budget", "Loss breakdown and link margins without running the receiver");
    add_common_flags(*budget, budget_common);
    budget->add_flag("--no-geometric", budget_opts.no_geometric,
                     "Zero the beam-spread contribution");
    budget->add_option("--json", budget_common.json_path,
                       "Write JSON instead of the table ('-' for stdout)");

    fso::cli::CommonOptions range_common;
    range_common.color = sim_opts.color;
    fso::cli::MaxRangeOptions range_opts;
    CLI::App* max_range = app.add_subcommand(
        "max-range", "Largest range that still meets a Q-factor target");
    add_common_flags(*max_range, range_common);
    max_range->add_option("--q-target", range_opts.q_target, "Q-factor to maintain")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fso::cli::kExitConfigError;
    }

    if (simulate->parsed()) {
        return fso::cli::cmd_simulate(sim_opts, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return fso::cli::cmd_sweep(sweep_common, sweep_opts, std::cout, std::cerr);
    }
    if (budget->parsed()) {
        return fso::cli::cmd_budget(budget_common, budget_opts, std::cout, std::cerr);
    }
    if (max_range->parsed()) {
        return fso::cli::cmd_max_range(range_common, range_opts, std::cout, std::cerr);
    }
    return fso::cli::kExitConfigError;
}
