#include <doctest.h>

#include <cmath>

#include "fso/report_io.hpp"
#include "fso/scenario.hpp"

using namespace fso;

namespace {

ScenarioConfig preset_scenario(const char* name, bool noise_on, std::uint64_t seed)
{
    ScenarioConfig c;
    c.channel = preset(name);
    c.channel_preset = name;
    c.noise.enabled = noise_on;
    c.noise.rng_seed = seed;
    return c;
}

}  // namespace

TEST_CASE("received power decomposes into laser minus penalty minus loss")
{
    ScenarioConfig c = preset_scenario("rain", false, 0);
    const SimReport r = run_link(c);
    const double reconstructed =
        c.laser.power_dbm - r.modulation_penalty_db - r.loss.total_db;
    CHECK(r.received_power_dbm == doctest::Approx(reconstructed).epsilon(1e-9));
    // balanced-ish NRZ sits near 3 dB below CW
    CHECK(r.modulation_penalty_db > 2.5);
    CHECK(r.modulation_penalty_db < 3.5);
    CHECK(r.loss.total_db == doctest::Approx(29.6654).epsilon(1e-4));
    CHECK(r.budget.link_margin_db ==
          doctest::Approx(r.received_power_dbm - c.sensitivity_dbm).epsilon(1e-12));
}

TEST_CASE("rain beats fog for the same seed")
{
    const SimReport rain = run_link(preset_scenario("rain", true, 42));
    const SimReport fog = run_link(preset_scenario("fog", true, 42));
    CHECK(rain.eye.q_factor > fog.eye.q_factor);
    CHECK(rain.eye.ber_estimate < fog.eye.ber_estimate);
    CHECK(rain.received_power_dbm > fog.received_power_dbm);
}

TEST_CASE("lossless noiseless link leaves only filter ISI")
{
    ScenarioConfig c;
    c.channel.gamma_db_per_km = 0.0;
    c.channel.divergence_rad = 0.0;
    c.channel_preset.clear();
    c.noise.enabled = false;
    const SimReport r = run_link(c);
    CHECK(r.loss.total_db == 0.0);
    CHECK(r.eye.ber_estimate == 0.0);
    CHECK(r.eye.q_factor > 30.0);
    CHECK(std::isfinite(r.eye.q_factor));  // Bessel shaping keeps sigma > 0
}

TEST_CASE("seeded runs serialize byte-identically")
{
    const SimReport a = run_link(preset_scenario("fog", true, 4242));
    const SimReport b = run_link(preset_scenario("fog", true, 4242));
    CHECK(report_to_json_string(a) == report_to_json_string(b));

    const SimReport other = run_link(preset_scenario("fog", true, 4243));
    CHECK(report_to_json_string(a) != report_to_json_string(other));
}

TEST_CASE("stage names travel with pipeline errors")
{
    ScenarioConfig c = preset_scenario("rain", false, 0);
    c.samples_per_bit = 1;  // tx cutoff 0.75*bitrate is above Nyquist = bitrate/2
    CHECK_THROWS_WITH_AS(run_link(c), doctest::Contains("tx-filter"), std::runtime_error);
}

TEST_CASE("scenario validation catches bad configs")
{
    ScenarioConfig c;
    c.sequence_length_bits = 1;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = ScenarioConfig{};
    c.bit_rate_hz = 0.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = ScenarioConfig{};
    c.channel.range_km = -1.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("Q decreases with range under a fixed seed")
{
    ScenarioConfig c = preset_scenario("rain", true, 11);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10; ++i) {
        c.channel.range_km = 0.25 + 0.35 * i;
        const double q = run_link(c).eye.q_factor;
        CHECK(q <= prev);
        prev = q;
    }
}

TEST_CASE("max_range_for_q recovers a precomputed operating point")
{
    ScenarioConfig c = preset_scenario("rain", true, 5);
    c.channel.range_km = 1.5;
    const double q_star = run_link(c).eye.q_factor;
    REQUIRE(q_star > 1.0);

    const double recovered = max_range_for_q(c, q_star);
    CHECK(std::abs(recovered - 1.5) <= 0.0011);
}

TEST_CASE("fog limits range harder than rain")
{
    const double q_target = 6.0;
    const double rain_km = max_range_for_q(preset_scenario("rain", true, 9), q_target);
    const double fog_km = max_range_for_q(preset_scenario("fog", true, 9), q_target);
    CHECK(fog_km < rain_km);
    CHECK(rain_km > 1.0);   // the rain preset's nominal 1 km link still meets Q=6
    CHECK(fog_km < 0.5);
}

TEST_CASE("unreachable Q target errors out")
{
    CHECK_THROWS_WITH_AS(max_range_for_q(preset_scenario("rain", true, 9), 1.0e9),
                         doctest::Contains("unreachable"), std::runtime_error);
    CHECK_THROWS_AS(max_range_for_q(preset_scenario("rain", true, 9), -1.0),
                    std::invalid_argument);
}

TEST_CASE("max_range_for_q caps at the 50 km search limit")
{
    // lossless channel: Q is range-independent, so any reachable target
    // holds everywhere in the search interval
    ScenarioConfig c;
    c.channel.gamma_db_per_km = 0.0;
    c.channel.divergence_rad = 0.0;
    c.channel_preset.clear();
    c.noise.enabled = false;
    CHECK(max_range_for_q(c, 10.0) == 50.0);
}

TEST_CASE("derived seeds are deterministic and spread")
{
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
