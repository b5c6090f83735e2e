#ifndef FSO_METRICS_HPP
#define FSO_METRICS_HPP

#include <optional>

#include "fso/waveform.hpp"

namespace fso {

/// Overlay of the waveform folded at the bit period. Trace k spans two unit
/// intervals, the samples of bits k and k+1; it is labeled with transmitted
/// bit k, whose eye it carries (edge bits without a full window are dropped,
/// so there are bit_count - 1 traces).
struct EyeDiagram {
    std::vector<std::vector<double>> traces;  // each 2 * samples_per_ui long
    std::vector<std::uint8_t> labels;         // transmitted bit per trace
    std::size_t samples_per_ui = 0;
    WaveformUnit unit = WaveformUnit::Ampere;
};

/// Eye statistics at the Q-maximizing sampling instant. q_factor is
/// +infinity when both class spreads are exactly zero (noiseless eye).
struct EyeMetrics {
    double mu1 = 0.0;
    double mu0 = 0.0;
    double sigma1 = 0.0;
    double sigma0 = 0.0;
    double q_factor = 0.0;
    double ber_estimate = 0.5;
    double eye_height = 0.0;     // (mu1 - 3*sigma1) - (mu0 + 3*sigma0)
    double sampling_phase = 0.0; // fraction of UI in [0, 1)
};

struct LinkBudget {
    double received_power_dbm = 0.0;
    double sensitivity_dbm = -20.0;
    double link_margin_db = 0.0;
    // Compatibility replication of margins tabulated in some published link
    // budgets, which ratio the dBm values directly. Non-physical units;
    // absent when the dBm ratio is not positive.
    std::optional<double> paper_link_margin;
};

EyeDiagram eye_fold(const SampledWaveform& wave,
                    std::size_t samples_per_bit,
                    const BitSequence& bits);

/// Grid-searches the sampling instant over one UI centered on the middle of
/// the two-UI trace window (where the labeled bit's eye sits once filter
/// group delay is accounted for), maximizing Q = (mu1-mu0)/(sigma1+sigma0).
/// The reported sampling_phase is the chosen instant as a fraction of the
/// labeled bit's UI, modulo 1: exactly 0.5 for an unfiltered NRZ eye.
EyeMetrics eye_metrics(const EyeDiagram& eye);

/// Gaussian tail mapping 0.5 * erfc(q / sqrt(2)).
double ber_from_q(double q);

/// Standard margin: received power over sensitivity in dB, i.e. the dBm
/// difference (10*log10 of the linear power ratio).
double link_margin_db(double p_r_dbm, double s_dbm);

/// Replication of the published procedure that ratios the dBm values
/// themselves: 10*log10(p_r_dbm / s_dbm). Flagged non-physical; errors when
/// the ratio is not positive.
double paper_link_margin(double p_r_dbm, double s_dbm);

}  // namespace fso

#endif
