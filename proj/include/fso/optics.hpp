#ifndef FSO_OPTICS_HPP
#define FSO_OPTICS_HPP

#include "fso/waveform.hpp"

namespace fso {

struct LaserSpec {
    double wavelength_nm = 1550.0;
    double power_dbm = 20.0;
    // Recorded for configuration fidelity only; the simulator models the
    // optical power envelope (direct detection), so linewidth has no effect.
    double linewidth_hz = 5.0e6;
};

/// Intensity-modulator parameters. extinction_ratio_db may be +infinity for
/// an ideal off state.
struct ModulatorSpec {
    double extinction_ratio_db = 30.0;
    double insertion_loss_db = 0.0;
};

/// Sampled optical power envelope (watts) at a carrier wavelength.
struct OpticalSignal {
    SampledWaveform power_w;
    double wavelength_nm = 1550.0;
};

double dbm_to_watts(double power_dbm);
double watts_to_dbm(double power_w);

/// Constant-power carrier at the laser's wavelength.
OpticalSignal cw_laser(const LaserSpec& spec, std::size_t num_samples, double sample_rate_hz);

/// Linear intensity gate: P_out = P_in * 10^(-IL/10) * (eps + (1-eps)*d)
/// with eps = 10^(-ER/10) and the drive clipped to [0, 1] per sample.
OpticalSignal mzm_modulate(const OpticalSignal& carrier,
                           const SampledWaveform& drive,
                           const ModulatorSpec& spec);

}  // namespace fso

#endif
