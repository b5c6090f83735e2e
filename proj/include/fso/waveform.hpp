#ifndef FSO_WAVEFORM_HPP
#define FSO_WAVEFORM_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fso {

/// Logical data bits; every element is 0 or 1.
struct BitSequence {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
};

enum class WaveformUnit {
    DimensionlessDrive,  // normalized modulator drive
    Ampere,
    Watt,
};

std::string to_string(WaveformUnit unit);

/// Uniformly sampled real-valued signal.
struct SampledWaveform {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    WaveformUnit unit = WaveformUnit::DimensionlessDrive;

    std::size_t size() const { return samples.size(); }
};

/// Analog-prototype Bessel low-pass description. The cutoff is the -3 dB
/// point of the realized response.
struct FilterSpec {
    int order = 4;
    double cutoff_hz = 0.0;
};

/// Maximal-length PRBS from a Fibonacci LFSR. `seed` is the initial register
/// contents (stage i+1 = bit i of the integer), must be nonzero and fit in
/// `register_order` bits. Supported orders: 7, 9, 11, 15, 23, 31.
BitSequence prbs_generate(int register_order, std::uint64_t seed, std::size_t length);

/// NRZ line coding: bit k occupies samples [k*spb, (k+1)*spb) at its level.
SampledWaveform nrz_encode(const BitSequence& bits,
                           std::size_t samples_per_bit,
                           double sample_rate_hz,
                           double level_one = 1.0,
                           double level_zero = 0.0);

/// Applies the Bessel low-pass in the frequency domain: FFT, multiply each
/// bin by bessel_response(), inverse FFT. The record is treated as one
/// circular block, so energy filtered past the end wraps to the start.
SampledWaveform bessel_lowpass(const SampledWaveform& wave, const FilterSpec& spec);

/// Complex transfer function H(j*2*pi*f) of the filter `bessel_lowpass`
/// realizes: the DC-normalized reversed-Bessel-polynomial prototype, frequency
/// scaled so |H(cutoff)|^2 = 1/2 exactly.
std::complex<double> bessel_response(const FilterSpec& spec, double freq_hz);

/// Coefficients of the reversed Bessel polynomial theta_n, ascending powers.
/// theta_4 = 105 + 105 s + 45 s^2 + 10 s^3 + s^4.
std::vector<double> reverse_bessel_coefficients(int order);

/// -3 dB radian frequency of the unit-delay Bessel prototype of given order,
/// found by bisection on |theta_n(0)/theta_n(jw)|^2 = 1/2.
double bessel_prototype_3db_w(int order);

}  // namespace fso

#endif
