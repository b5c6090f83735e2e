#ifndef FSO_SCENARIO_HPP
#define FSO_SCENARIO_HPP

#include <string>

#include "fso/apd.hpp"
#include "fso/channel.hpp"
#include "fso/metrics.hpp"
#include "fso/optics.hpp"

namespace fso {

/// Full end-to-end scenario. Defaults model a 10 Gb/s, 1550 nm link with an
/// 8192-sample record (128 bits x 64 samples).
struct ScenarioConfig {
    double bit_rate_hz = 1.0e10;
    std::size_t sequence_length_bits = 128;
    std::size_t samples_per_bit = 64;
    int prbs_order = 7;
    double tx_cutoff_factor = 0.75;        // transmit Bessel cutoff / bit rate
    double receiver_cutoff_factor = 0.75;  // receive Bessel cutoff / bit rate
    double sensitivity_dbm = -20.0;
    LaserSpec laser;
    ModulatorSpec modulator;
    ChannelParams channel;
    std::string channel_preset = "clear";  // echo only; empty for explicit params
    ApdSpec apd;
    NoiseConfig noise;

    double sample_rate_hz() const
    {
        return bit_rate_hz * static_cast<double>(samples_per_bit);
    }
};

struct SimReport {
    ScenarioConfig config;  // resolved values actually used
    LinkLossBreakdown loss;
    double received_power_dbm = 0.0;      // mean optical power after the channel
    double modulation_penalty_db = 0.0;   // laser power over mean modulated power
    LinkBudget budget;
    EyeMetrics eye;
    double elapsed_seconds = 0.0;  // excluded from serialized reports
};

/// Runs the whole chain: PRBS -> NRZ -> tx Bessel filter -> intensity
/// modulator -> free-space channel -> APD -> rx Bessel filter -> eye
/// analysis. Deterministic for a fixed noise seed. Stage failures are
/// rethrown with the stage name attached. When `eye_out` is non-null the
/// folded eye diagram is stored there for export.
SimReport run_link(const ScenarioConfig& config, EyeDiagram* eye_out = nullptr);

/// Largest range in [0.001 km, 50 km] whose Q-factor still reaches
/// `q_target`, found by bisection on the fixed-seed Q(range) curve to a
/// 1 m bracket. Errors when even the minimal range falls short; capped at
/// 50 km when the target is met everywhere.
double max_range_for_q(const ScenarioConfig& base, double q_target);

/// Deterministic per-block seed for batch runs such as block-wise Monte
/// Carlo (splitmix64 mix of base seed and block index), so parallel and
/// serial evaluation orders produce identical results.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

void validate(const ScenarioConfig& config);

}  // namespace fso

#endif
