#include "fso/scenario.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fso {

namespace {

[[noreturn]] void stage_error(const char* stage, const std::exception& e)
{
    throw std::runtime_error(std::string(stage) + ": " + e.what());
}

template <typename F>
auto run_stage(const char* stage, F&& f)
{
    try {
        return f();
    } catch (const std::exception& e) {
        stage_error(stage, e);
    }
}

double mean(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void validate(const ScenarioConfig& c)
{
    if (!(c.bit_rate_hz > 0.0)) {
        throw std::invalid_argument("bit rate must be positive");
    }
    if (c.sequence_length_bits < 2) {
        throw std::invalid_argument("sequence length must be at least 2 bits");
    }
    if (c.samples_per_bit < 1) {
        throw std::invalid_argument("samples_per_bit must be at least 1");
    }
    if (!(c.tx_cutoff_factor > 0.0) || !(c.receiver_cutoff_factor > 0.0)) {
        throw std::invalid_argument("filter cutoff factors must be positive");
    }
    if (!std::isfinite(c.sensitivity_dbm)) {
        throw std::invalid_argument("receiver sensitivity must be finite");
    }
    validate(c.channel);
    validate(c.apd);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index)
{
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SimReport run_link(const ScenarioConfig& config, EyeDiagram* eye_out)
{
    const auto t0 = std::chrono::steady_clock::now();
    validate(config);

    const double sample_rate = config.sample_rate_hz();

    const BitSequence bits = run_stage("prbs", [&] {
        return prbs_generate(config.prbs_order, 1, config.sequence_length_bits);
    });

    const SampledWaveform drive = run_stage("nrz", [&] {
        return nrz_encode(bits, config.samples_per_bit, sample_rate);
    });

    const SampledWaveform shaped = run_stage("tx-filter", [&] {
        FilterSpec spec;
        spec.order = 4;
        spec.cutoff_hz = config.tx_cutoff_factor * config.bit_rate_hz;
        return bessel_lowpass(drive, spec);
    });

    const OpticalSignal carrier = run_stage("laser", [&] {
        return cw_laser(config.laser, shaped.samples.size(), sample_rate);
    });

    const OpticalSignal modulated = run_stage("modulator", [&] {
        return mzm_modulate(carrier, shaped, config.modulator);
    });

    auto [received, loss] = run_stage("channel", [&] {
        return apply_channel(modulated, config.channel);
    });

    const SampledWaveform current = run_stage("apd", [&] {
        return apd_detect(received, config.apd, config.noise);
    });

    const SampledWaveform filtered = run_stage("rx-filter", [&] {
        return receive_filter(current, config.bit_rate_hz, config.receiver_cutoff_factor);
    });

    const EyeMetrics eye = run_stage("eye", [&] {
        EyeDiagram diagram = eye_fold(filtered, config.samples_per_bit, bits);
        const EyeMetrics metrics = eye_metrics(diagram);
        if (eye_out != nullptr) *eye_out = std::move(diagram);
        return metrics;
    });

    SimReport report;
    report.config = config;
    report.loss = loss;
    report.received_power_dbm = watts_to_dbm(mean(received.power_w.samples));
    report.modulation_penalty_db =
        config.laser.power_dbm - watts_to_dbm(mean(modulated.power_w.samples));
    report.budget.received_power_dbm = report.received_power_dbm;
    report.budget.sensitivity_dbm = config.sensitivity_dbm;
    // direct difference instead of link_margin_db(): received power underflows
    // to -inf dBm at extreme attenuation and the margin should follow it
    report.budget.link_margin_db = report.received_power_dbm - config.sensitivity_dbm;
    try {
        report.budget.paper_link_margin =
            paper_link_margin(report.received_power_dbm, config.sensitivity_dbm);
    } catch (const std::invalid_argument&) {
        report.budget.paper_link_margin.reset();
    }
    report.eye = eye;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

double max_range_for_q(const ScenarioConfig& base, double q_target)
{
    if (!(q_target > 0.0)) {
        throw std::invalid_argument("Q target must be positive");
    }
    validate(base);

    const auto q_at = [&](double range_km) {
        ScenarioConfig cfg = base;
        cfg.channel.range_km = range_km;
        return run_link(cfg).eye.q_factor;
    };

    constexpr double kMinRangeKm = 0.001;
    constexpr double kMaxRangeKm = 50.0;
    constexpr double kResolutionKm = 0.001;  // 1 m bracket

    if (!(q_at(kMinRangeKm) > q_target)) {
        throw std::runtime_error("Q target unreachable even at minimal range (1 m)");
    }
    if (q_at(kMaxRangeKm) >= q_target) {
        return kMaxRangeKm;
    }

    double lo = kMinRangeKm;  // Q(lo) known to reach the target
    double hi = kMaxRangeKm;
    while (hi - lo > kResolutionKm) {
        const double mid = 0.5 * (lo + hi);
        (q_at(mid) >= q_target ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace fso
