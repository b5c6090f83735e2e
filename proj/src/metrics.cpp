#include "fso/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fso {

namespace {

struct ClassStats {
    double mu1 = 0.0;
    double mu0 = 0.0;
    double sigma1 = 0.0;
    double sigma0 = 0.0;

    double q() const
    {
        const double num = mu1 - mu0;
        const double den = sigma1 + sigma0;
        if (den > 0.0) return num / den;
        if (num > 0.0) return std::numeric_limits<double>::infinity();
        if (num < 0.0) return -std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
};

// Population mean/stddev of the two bit classes at one window index.
ClassStats stats_at(const EyeDiagram& eye, std::size_t index)
{
    double sum1 = 0.0, sum0 = 0.0;
    std::size_t n1 = 0, n0 = 0;
    for (std::size_t t = 0; t < eye.traces.size(); ++t) {
        const double v = eye.traces[t][index];
        if (eye.labels[t]) {
            sum1 += v;
            ++n1;
        } else {
            sum0 += v;
            ++n0;
        }
    }
    ClassStats s;
    s.mu1 = sum1 / static_cast<double>(n1);
    s.mu0 = sum0 / static_cast<double>(n0);

    double sq1 = 0.0, sq0 = 0.0;
    for (std::size_t t = 0; t < eye.traces.size(); ++t) {
        const double v = eye.traces[t][index];
        if (eye.labels[t]) {
            sq1 += (v - s.mu1) * (v - s.mu1);
        } else {
            sq0 += (v - s.mu0) * (v - s.mu0);
        }
    }
    s.sigma1 = std::sqrt(sq1 / static_cast<double>(n1));
    s.sigma0 = std::sqrt(sq0 / static_cast<double>(n0));
    return s;
}

}  // namespace

EyeDiagram eye_fold(const SampledWaveform& wave,
                    std::size_t samples_per_bit,
                    const BitSequence& bits)
{
    if (samples_per_bit == 0) {
        throw std::invalid_argument("samples_per_bit must be at least 1");
    }
    if (wave.samples.size() != bits.size() * samples_per_bit) {
        throw std::invalid_argument("waveform length does not equal bit count * samples_per_bit");
    }
    if (bits.size() < 2) {
        throw std::invalid_argument("eye folding needs at least two bits");
    }

    EyeDiagram eye;
    eye.samples_per_ui = samples_per_bit;
    eye.unit = wave.unit;
    eye.traces.reserve(bits.size() - 1);
    eye.labels.reserve(bits.size() - 1);
    for (std::size_t k = 0; k + 1 < bits.size(); ++k) {
        const auto begin = wave.samples.begin() + static_cast<std::ptrdiff_t>(k * samples_per_bit);
        eye.traces.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(2 * samples_per_bit));
        eye.labels.push_back(bits.bits[k]);
    }
    return eye;
}

EyeMetrics eye_metrics(const EyeDiagram& eye)
{
    if (eye.samples_per_ui == 0 || eye.traces.empty()) {
        throw std::invalid_argument("empty eye diagram");
    }
    std::size_t n1 = 0, n0 = 0;
    for (std::uint8_t label : eye.labels) {
        (label ? n1 : n0) += 1;
    }
    if (n1 < 2 || n0 < 2) {
        throw std::invalid_argument(
            "degenerate pattern: need at least two traces of each bit class (have " +
            std::to_string(n1) + " ones, " + std::to_string(n0) + " zeros)");
    }
    for (const auto& trace : eye.traces) {
        if (trace.size() != 2 * eye.samples_per_ui) {
            throw std::invalid_argument("eye trace length does not equal 2 * samples_per_ui");
        }
    }

    // One UI of candidate instants centered on the window middle.
    const std::size_t spb = eye.samples_per_ui;
    const std::size_t first = spb / 2;

    double best_q = -std::numeric_limits<double>::infinity();
    std::size_t best_index = first;
    ClassStats best_stats;
    bool found = false;
    for (std::size_t j = first; j < first + spb; ++j) {
        const ClassStats s = stats_at(eye, j);
        const double q = s.q();
        if (std::isnan(q)) continue;
        if (!found || q > best_q) {
            found = true;
            best_q = q;
            best_index = j;
            best_stats = s;
        }
    }
    if (!found) {
        throw std::invalid_argument("degenerate pattern: eye classes are indistinguishable");
    }

    EyeMetrics m;
    m.mu1 = best_stats.mu1;
    m.mu0 = best_stats.mu0;
    m.sigma1 = best_stats.sigma1;
    m.sigma0 = best_stats.sigma0;
    m.q_factor = best_q;
    m.ber_estimate = best_q >= 0.0 ? ber_from_q(best_q) : 0.5;
    m.eye_height = (m.mu1 - 3.0 * m.sigma1) - (m.mu0 + 3.0 * m.sigma0);
    const double phase = static_cast<double>(best_index) / static_cast<double>(spb);
    m.sampling_phase = phase - std::floor(phase);
    return m;
}

double ber_from_q(double q)
{
    if (std::isnan(q) || q < 0.0) {
        throw std::invalid_argument("Q must be non-negative");
    }
    return 0.5 * std::erfc(q / std::sqrt(2.0));
}

double link_margin_db(double p_r_dbm, double s_dbm)
{
    if (!std::isfinite(p_r_dbm) || !std::isfinite(s_dbm)) {
        throw std::invalid_argument("link margin inputs must be finite");
    }
    return p_r_dbm - s_dbm;
}

double paper_link_margin(double p_r_dbm, double s_dbm)
{
    if (!std::isfinite(p_r_dbm) || !std::isfinite(s_dbm)) {
        throw std::invalid_argument("link margin inputs must be finite");
    }
    if (s_dbm == 0.0 || p_r_dbm / s_dbm <= 0.0) {
        throw std::invalid_argument("paper-compat margin undefined for this dBm ratio");
    }
    return 10.0 * std::log10(p_r_dbm / s_dbm);
}

}  // namespace fso
