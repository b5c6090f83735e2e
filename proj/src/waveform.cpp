#include "fso/waveform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fso {

namespace {

// Feedback polynomial x^order + x^tap + 1, maximal-length taps following
// ITU-T O.150/O.152 conventions.
struct PrbsTaps {
    int order;
    int tap;
};

constexpr PrbsTaps kPrbsTaps[] = {
    {7, 6}, {9, 5}, {11, 9}, {15, 14}, {23, 18}, {31, 28},
};

const PrbsTaps* find_taps(int order)
{
    for (const auto& t : kPrbsTaps) {
        if (t.order == order) return &t;
    }
    return nullptr;
}

void check_waveform(const SampledWaveform& wave)
{
    if (wave.samples.empty()) {
        throw std::invalid_argument("waveform has no samples");
    }
    if (!(wave.sample_rate_hz > 0.0)) {
        throw std::invalid_argument("waveform sample rate must be positive");
    }
    for (double s : wave.samples) {
        if (!std::isfinite(s)) {
            throw std::invalid_argument("waveform contains a non-finite sample");
        }
    }
}

std::complex<double> eval_poly(const std::vector<double>& ascending, std::complex<double> s)
{
    std::complex<double> acc{0.0, 0.0};
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

// The FFTW planner is not thread-safe; plan creation/destruction is serialized.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

std::string to_string(WaveformUnit unit)
{
    switch (unit) {
        case WaveformUnit::DimensionlessDrive: return "dimensionless-drive";
        case WaveformUnit::Ampere: return "ampere";
        case WaveformUnit::Watt: return "watt";
    }
    return "unknown";
}

BitSequence prbs_generate(int register_order, std::uint64_t seed, std::size_t length)
{
    const PrbsTaps* taps = find_taps(register_order);
    if (taps == nullptr) {
        throw std::invalid_argument(
            "unsupported PRBS register order " + std::to_string(register_order) +
            " (supported: 7, 9, 11, 15, 23, 31)");
    }
    if (length == 0) {
        throw std::invalid_argument("PRBS length must be at least 1");
    }
    const std::uint64_t mask = (std::uint64_t{1} << register_order) - 1;
    if ((seed & mask) == 0) {
        throw std::invalid_argument("degenerate LFSR seed (all-zero register)");
    }
    if (seed > mask) {
        throw std::invalid_argument("LFSR seed wider than the register");
    }

    BitSequence out;
    out.bits.resize(length);
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < length; ++i) {
        const std::uint64_t fb =
            ((state >> (register_order - 1)) ^ (state >> (taps->tap - 1))) & 1u;
        state = ((state << 1) | fb) & mask;
        out.bits[i] = static_cast<std::uint8_t>(fb);
    }
    return out;
}

SampledWaveform nrz_encode(const BitSequence& bits,
                           std::size_t samples_per_bit,
                           double sample_rate_hz,
                           double level_one,
                           double level_zero)
{
    if (bits.size() == 0) {
        throw std::invalid_argument("cannot NRZ-encode an empty bit sequence");
    }
    if (samples_per_bit == 0) {
        throw std::invalid_argument("samples_per_bit must be at least 1");
    }
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (!(level_one > level_zero)) {
        throw std::invalid_argument("level_one must exceed level_zero");
    }
    for (std::uint8_t b : bits.bits) {
        if (b > 1) throw std::invalid_argument("bit sequence contains a non-binary symbol");
    }

    SampledWaveform wave;
    wave.sample_rate_hz = sample_rate_hz;
    wave.unit = WaveformUnit::DimensionlessDrive;
    wave.samples.resize(bits.size() * samples_per_bit);
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const double level = bits.bits[k] ? level_one : level_zero;
        std::fill_n(wave.samples.begin() + static_cast<std::ptrdiff_t>(k * samples_per_bit),
                    samples_per_bit, level);
    }
    return wave;
}

std::vector<double> reverse_bessel_coefficients(int order)
{
    if (order < 1 || order > 12) {
        throw std::invalid_argument("Bessel filter order must be in [1, 12]");
    }
    // theta_n(s) = (2n-1) theta_{n-1}(s) + s^2 theta_{n-2}(s)
    std::vector<double> prev{1.0};       // theta_0
    std::vector<double> cur{1.0, 1.0};   // theta_1
    for (int n = 2; n <= order; ++n) {
        std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
        for (std::size_t k = 0; k < cur.size(); ++k) {
            next[k] += (2.0 * n - 1.0) * cur[k];
        }
        for (std::size_t k = 0; k < prev.size(); ++k) {
            next[k + 2] += prev[k];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double bessel_prototype_3db_w(int order)
{
    const std::vector<double> theta = reverse_bessel_coefficients(order);
    const double dc = theta[0];
    const auto gain_sq = [&](double w) {
        const std::complex<double> d = eval_poly(theta, {0.0, w});
        return (dc * dc) / std::norm(d);
    };

    double lo = 0.0;
    double hi = 1.0;
    while (gain_sq(hi) > 0.5) hi *= 2.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gain_sq(mid) > 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::complex<double> bessel_response(const FilterSpec& spec, double freq_hz)
{
    if (!(spec.cutoff_hz > 0.0)) {
        throw std::invalid_argument("filter cutoff must be positive");
    }
    const std::vector<double> theta = reverse_bessel_coefficients(spec.order);
    const double w = bessel_prototype_3db_w(spec.order) * freq_hz / spec.cutoff_hz;
    return theta[0] / eval_poly(theta, {0.0, w});
}

SampledWaveform bessel_lowpass(const SampledWaveform& wave, const FilterSpec& spec)
{
    check_waveform(wave);
    if (!(spec.cutoff_hz > 0.0)) {
        throw std::invalid_argument("filter cutoff must be positive");
    }
    if (!(spec.cutoff_hz < wave.sample_rate_hz / 2.0)) {
        throw std::invalid_argument("filter cutoff must lie below the Nyquist frequency");
    }

    const std::size_t n = wave.samples.size();
    const std::vector<double> theta = reverse_bessel_coefficients(spec.order);
    const double dc = theta[0];
    const double w3 = bessel_prototype_3db_w(spec.order);

    std::vector<double> buf = wave.samples;
    std::vector<std::complex<double>> spectrum(n / 2 + 1);

    fftw_plan fwd;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(),
                                   reinterpret_cast<fftw_complex*>(spectrum.data()),
                                   FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    const double bin_hz = wave.sample_rate_hz / static_cast<double>(n);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double w = w3 * (static_cast<double>(k) * bin_hz) / spec.cutoff_hz;
        spectrum[k] *= dc / eval_poly(theta, {0.0, w});
    }

    SampledWaveform out;
    out.sample_rate_hz = wave.sample_rate_hz;
    out.unit = wave.unit;
    out.samples.resize(n);

    fftw_plan inv;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(spectrum.data()),
                                   out.samples.data(), FFTW_ESTIMATE);
    }
    fftw_execute(inv);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }

    const double scale = 1.0 / static_cast<double>(n);
    for (double& s : out.samples) s *= scale;
    return out;
}

}  // namespace fso
