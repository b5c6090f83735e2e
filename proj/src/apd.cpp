#include "fso/apd.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fso {

namespace {
constexpr double kElementaryChargeC = 1.602176634e-19;
}

void validate(const ApdSpec& spec)
{
    if (!(spec.responsivity_a_per_w > 0.0)) {
        throw std::invalid_argument("responsivity must be positive");
    }
    if (spec.dark_current_a < 0.0) {
        throw std::invalid_argument("dark current must be non-negative");
    }
    if (spec.ionization_ratio < 0.0 || spec.ionization_ratio > 1.0) {
        throw std::invalid_argument("ionization ratio must lie in [0, 1]");
    }
    if (!(spec.gain >= 1.0)) {
        throw std::invalid_argument("avalanche gain must be at least 1");
    }
    if (spec.thermal_psd_a2_per_hz < 0.0) {
        throw std::invalid_argument("thermal noise PSD must be non-negative");
    }
}

double excess_noise_factor(const ApdSpec& spec)
{
    validate(spec);
    const double k = spec.ionization_ratio;
    const double m = spec.gain;
    return k * m + (1.0 - k) * (2.0 - 1.0 / m);
}

SampledWaveform apd_detect(const OpticalSignal& optical,
                           const ApdSpec& spec,
                           const NoiseConfig& noise)
{
    validate(spec);
    if (optical.power_w.samples.empty()) {
        throw std::invalid_argument("optical signal has no samples");
    }
    if (!(optical.power_w.sample_rate_hz > 0.0)) {
        throw std::invalid_argument("optical signal sample rate must be positive");
    }
    for (double p : optical.power_w.samples) {
        if (p < 0.0 || !std::isfinite(p)) {
            throw std::invalid_argument("optical power samples must be finite and non-negative");
        }
    }

    const double m = spec.gain;
    const double r = spec.responsivity_a_per_w;
    const double id = spec.dark_current_a;
    const double f = excess_noise_factor(spec);
    const double bn = optical.power_w.sample_rate_hz / 2.0;
    const double shot_coeff = 2.0 * kElementaryChargeC * m * m * f * bn;
    const double thermal_var = spec.thermal_psd_a2_per_hz * bn;

    SampledWaveform out;
    out.sample_rate_hz = optical.power_w.sample_rate_hz;
    out.unit = WaveformUnit::Ampere;
    out.samples.resize(optical.power_w.samples.size());

    std::mt19937_64 rng(noise.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const double p = optical.power_w.samples[i];
        double current = m * r * p + id;
        if (noise.enabled) {
            const double var = shot_coeff * (r * p + id) + thermal_var;
            current += std::sqrt(var) * gauss(rng);
        }
        out.samples[i] = current;
    }
    return out;
}

SampledWaveform receive_filter(const SampledWaveform& current,
                               double bit_rate_hz,
                               double cutoff_factor)
{
    if (!(bit_rate_hz > 0.0)) {
        throw std::invalid_argument("bit rate must be positive");
    }
    if (!(cutoff_factor > 0.0)) {
        throw std::invalid_argument("cutoff factor must be positive");
    }
    FilterSpec spec;
    spec.order = 4;
    spec.cutoff_hz = cutoff_factor * bit_rate_hz;
    return bessel_lowpass(current, spec);
}

}  // namespace fso
