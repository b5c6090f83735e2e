#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "fso/cli_commands.hpp"
#include "fso/config_io.hpp"
#include "fso/report_io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the built CLI with stderr suppressed and captures stdout.
RunResult run_cli(const std::string& args)
{
    const std::string cmd = std::string(FSO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        result.output.append(buf, n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("simulate is byte-identical for repeated seeded runs")
{
    const RunResult first = run_cli("simulate --preset fog --seed 42");
    const RunResult second = run_cli("simulate --preset fog --seed 42");
    CHECK(first.exit_code == 0);
    CHECK(second.exit_code == 0);
    CHECK(first.output == second.output);

    const auto j = nlohmann::json::parse(first.output);
    CHECK(j["config"]["channel"]["preset"] == "fog");
    CHECK(j["config"]["noise"]["rng_seed"] == 42);
    CHECK(j["eye_metrics"]["q_factor"].is_number());

    const RunResult reseeded = run_cli("simulate --preset fog --seed 43");
    CHECK(reseeded.exit_code == 0);
    CHECK(reseeded.output != first.output);
}

TEST_CASE("budget reports the rain preset without geometric loss")
{
    const RunResult r = run_cli("budget --preset rain --no-geometric --json -");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["link_loss"]["atmospheric_db"].get<double>() == doctest::Approx(6.0));
    CHECK(j["link_loss"]["geometric_db"].get<double>() == 0.0);
    CHECK(j["link_loss"]["transmittance"].get<double>() == doctest::Approx(0.2512).epsilon(1e-3));
    CHECK(j["link_budget"]["link_margin_db"].is_number());
}

TEST_CASE("budget table renders without escape codes when piped")
{
    const RunResult r = run_cli("budget --preset rain");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("Loss breakdown") != std::string::npos);
    CHECK(r.output.find("transmittance 0.2512") != std::string::npos);
    CHECK(r.output.find('\033') == std::string::npos);
}

TEST_CASE("gamma sweep emits a CSV with non-increasing Q")
{
    const RunResult r =
        run_cli("sweep --param gamma_db_per_km --from 0 --to 100 --steps 11 --seed 7");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    const fso::CsvTable table = fso::read_csv(in);
    REQUIRE(table.rows.size() == 11);
    CHECK(table.rows.front()[0] == 0.0);
    CHECK(table.rows.back()[0] == 100.0);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(table.rows[i][1] <= table.rows[i - 1][1]);
    }
}

TEST_CASE("range and power sweeps produce full tables")
{
    const RunResult range = run_cli("sweep --param range_km --from 0.5 --to 2 --steps 4 --seed 1");
    REQUIRE(range.exit_code == 0);
    std::istringstream range_in(range.output);
    CHECK(fso::read_csv(range_in).rows.size() == 4);

    const RunResult power =
        run_cli("sweep --param power_dbm --from 0 --to 20 --steps 3 --seed 1 --preset rain");
    REQUIRE(power.exit_code == 0);
    std::istringstream power_in(power.output);
    const fso::CsvTable table = fso::read_csv(power_in);
    REQUIRE(table.rows.size() == 3);
    // more transmit power, better Q and margin
    CHECK(table.rows.back()[1] > table.rows.front()[1]);
    CHECK(table.rows.back()[3] > table.rows.front()[3]);
}

TEST_CASE("simulate writes JSON and eye CSV files")
{
    const std::string json_path = "cli_report.json";
    const std::string eye_path = "cli_eye.csv";
    const RunResult r = run_cli("simulate --preset rain --seed 3 --json " + json_path +
                                " --eye-csv " + eye_path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.empty());  // report went to the file

    const auto j = nlohmann::json::parse(slurp(json_path));
    CHECK(j["config"]["channel"]["preset"] == "rain");

    std::istringstream eye_csv(slurp(eye_path));
    const fso::CsvTable eye = fso::read_csv(eye_csv);
    CHECK(eye.header == std::vector<std::string>{"trace_id", "phase_ui", "current_a"});
    CHECK(eye.rows.size() == 127 * 128);  // (bits-1) traces x 2*64 samples

    std::remove(json_path.c_str());
    std::remove(eye_path.c_str());
}

TEST_CASE("max-range finds a plausible rain range")
{
    const RunResult r = run_cli("max-range --preset rain --q-target 6 --seed 2");
    REQUIRE(r.exit_code == 0);
    double km = 0.0;
    REQUIRE(std::sscanf(r.output.c_str(), "max_range_km = %lf", &km) == 1);
    CHECK(km > 1.0);
    CHECK(km < 5.0);
}

TEST_CASE("config errors exit with code 1")
{
    CHECK(run_cli("simulate --preset hail").exit_code == 1);
    CHECK(run_cli("simulate --config no-such-file.toml").exit_code == 1);
    CHECK(run_cli("simulate --bogus-flag").exit_code == 1);
    CHECK(run_cli("sweep --param frobnication --from 0 --to 1 --steps 2").exit_code == 1);
    CHECK(run_cli("sweep --param range_km --from 0.1 --to 1 --steps 0").exit_code == 1);
    CHECK(run_cli("max-range --preset rain --q-target -2").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);  // a subcommand is required
}

TEST_CASE("runtime failures exit with code 2")
{
    CHECK(run_cli("max-range --preset fog --q-target 1e9").exit_code == 2);

    // valid config whose record cannot fit the transmit filter below Nyquist
    const std::string path = "cli_bad_runtime.toml";
    {
        std::ofstream out(path);
        out << "samples_per_bit = 1\n";
    }
    CHECK(run_cli("simulate --config " + path).exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("config file feeds the scenario and flags take precedence")
{
    const std::string path = "cli_scenario.toml";
    {
        fso::ScenarioConfig c;
        c.channel = fso::preset("fog");
        c.channel_preset = "fog";
        c.channel.rx_aperture_m = 0.35;  // custom optics survive a preset flag
        c.laser.power_dbm = 17.0;
        c.noise.rng_seed = 900;
        fso::save_scenario_toml(c, path);
    }

    const RunResult from_file = run_cli("simulate --config " + path);
    REQUIRE(from_file.exit_code == 0);
    const auto j = nlohmann::json::parse(from_file.output);
    CHECK(j["config"]["channel"]["preset"] == "fog");
    CHECK(j["config"]["laser"]["power_dbm"] == 17.0);
    CHECK(j["config"]["noise"]["rng_seed"] == 900);

    // --preset and --seed override the file's channel and seed
    fso::cli::CommonOptions opts;
    opts.config_path = path;
    opts.preset = "rain";
    opts.seed = 17;
    const fso::ScenarioConfig resolved = fso::cli::resolve_config(opts);
    CHECK(resolved.channel.gamma_db_per_km == 6.0);
    CHECK(resolved.channel.range_km == 1.0);
    CHECK(resolved.channel.rx_aperture_m == 0.35);  // not reset by the flag
    CHECK(resolved.channel_preset == "rain");
    CHECK(resolved.noise.rng_seed == 17);
    CHECK(resolved.laser.power_dbm == 17.0);

    std::remove(path.c_str());
}

TEST_CASE("help exits cleanly")
{
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("simulate") != std::string::npos);
}
