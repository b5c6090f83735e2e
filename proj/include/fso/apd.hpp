#ifndef FSO_APD_HPP
#define FSO_APD_HPP

#include <cstdint>

#include "fso/optics.hpp"

namespace fso {

struct ApdSpec {
    double responsivity_a_per_w = 1.0;
    double dark_current_a = 10e-9;
    double ionization_ratio = 0.9;  // k, in [0, 1]
    double gain = 3.0;              // avalanche gain M >= 1
    double thermal_psd_a2_per_hz = 1.0e-22;
};

struct NoiseConfig {
    bool enabled = true;
    std::uint64_t rng_seed = 1;
};

/// McIntyre excess noise factor F = k*M + (1-k)*(2 - 1/M).
double excess_noise_factor(const ApdSpec& spec);

/// Optical power to photocurrent. Per-sample mean is M*R*P + I_dark. With
/// noise enabled, adds zero-mean Gaussian noise of variance
///   2*q*M^2*F*(R*P + I_dark)*B_n + thermal_psd*B_n,  B_n = sample_rate/2,
/// i.e. white shot + thermal noise up to Nyquist; the receive filter later
/// sets the effective noise bandwidth. Deterministic for a fixed seed.
/// Individual noisy samples may be negative; the expected current is not.
SampledWaveform apd_detect(const OpticalSignal& optical,
                           const ApdSpec& spec,
                           const NoiseConfig& noise);

/// The post-detection low-pass: order-4 Bessel at cutoff_factor * bit_rate.
SampledWaveform receive_filter(const SampledWaveform& current,
                               double bit_rate_hz,
                               double cutoff_factor = 0.75);

void validate(const ApdSpec& spec);

}  // namespace fso

#endif
