#include "fso/optics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fso {

double dbm_to_watts(double power_dbm)
{
    if (!std::isfinite(power_dbm)) {
        throw std::invalid_argument("power in dBm must be finite");
    }
    return std::pow(10.0, (power_dbm - 30.0) / 10.0);
}

double watts_to_dbm(double power_w)
{
    if (power_w < 0.0 || !std::isfinite(power_w)) {
        throw std::invalid_argument("power in watts must be finite and non-negative");
    }
    return 10.0 * std::log10(power_w) + 30.0;
}

OpticalSignal cw_laser(const LaserSpec& spec, std::size_t num_samples, double sample_rate_hz)
{
    if (num_samples == 0) {
        throw std::invalid_argument("laser output needs at least one sample");
    }
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (!(spec.wavelength_nm > 0.0)) {
        throw std::invalid_argument("laser wavelength must be positive");
    }

    OpticalSignal out;
    out.wavelength_nm = spec.wavelength_nm;
    out.power_w.sample_rate_hz = sample_rate_hz;
    out.power_w.unit = WaveformUnit::Watt;
    out.power_w.samples.assign(num_samples, dbm_to_watts(spec.power_dbm));
    return out;
}

OpticalSignal mzm_modulate(const OpticalSignal& carrier,
                           const SampledWaveform& drive,
                           const ModulatorSpec& spec)
{
    if (carrier.power_w.samples.size() != drive.samples.size()) {
        throw std::invalid_argument("drive and carrier sample counts differ");
    }
    if (carrier.power_w.sample_rate_hz != drive.sample_rate_hz) {
        throw std::invalid_argument("drive and carrier sample rates differ");
    }
    if (drive.unit != WaveformUnit::DimensionlessDrive) {
        throw std::invalid_argument("modulator drive must be a dimensionless waveform");
    }
    if (!(spec.extinction_ratio_db > 0.0)) {  // +inf allowed
        throw std::invalid_argument("extinction ratio must be positive");
    }
    if (spec.insertion_loss_db < 0.0 || !std::isfinite(spec.insertion_loss_db)) {
        throw std::invalid_argument("insertion loss must be finite and non-negative");
    }

    const double eps =
        std::isinf(spec.extinction_ratio_db) ? 0.0
                                             : std::pow(10.0, -spec.extinction_ratio_db / 10.0);
    const double il = std::pow(10.0, -spec.insertion_loss_db / 10.0);

    OpticalSignal out;
    out.wavelength_nm = carrier.wavelength_nm;
    out.power_w.sample_rate_hz = carrier.power_w.sample_rate_hz;
    out.power_w.unit = WaveformUnit::Watt;
    out.power_w.samples.resize(drive.samples.size());
    for (std::size_t i = 0; i < drive.samples.size(); ++i) {
        const double d = std::clamp(drive.samples[i], 0.0, 1.0);
        out.power_w.samples[i] = carrier.power_w.samples[i] * il * (eps + (1.0 - eps) * d);
    }
    return out;
}

}  // namespace fso
