#ifndef FSO_CHANNEL_HPP
#define FSO_CHANNEL_HPP

#include <string>
#include <utility>
#include <vector>

#include "fso/optics.hpp"

namespace fso {

struct ChannelParams {
    double gamma_db_per_km = 0.2;  // atmospheric attenuation coefficient
    double range_km = 1.0;
    double tx_aperture_m = 0.05;
    double rx_aperture_m = 0.20;
    double divergence_rad = 0.003;  // full-angle beam divergence
    double extra_loss_db = 0.0;
};

struct WeatherPreset {
    const char* name;
    double gamma_db_per_km;
    double range_km;
};

/// Per-mechanism losses in dB plus the atmospheric transmittance fraction.
struct LinkLossBreakdown {
    double atmospheric_db = 0.0;
    double geometric_db = 0.0;
    double extra_db = 0.0;
    double total_db = 0.0;
    double transmittance = 1.0;  // 10^(-atmospheric_db/10)
};

/// Beer-Lambert transmittance over `range_km` at the given coefficient:
/// 10^(-gamma*d/10), equivalently exp(-gamma_nepers*d).
double transmittance(double gamma_db_per_km, double range_km);

/// Intensity surviving after `range_km`: i0 * transmittance(gamma, range).
double intensity_at(double i0, double gamma_db_per_km, double range_km);

/// Beam-spread loss: the receiver captures (d_rx / (d_tx + theta*L))^2 of the
/// transmitted power, capped at 1 when the spot fits inside the aperture.
double geometric_loss_db(const ChannelParams& params);

LinkLossBreakdown link_loss(const ChannelParams& params);

/// Scales every power sample by 10^(-total_db/10) and reports the breakdown.
std::pair<OpticalSignal, LinkLossBreakdown> apply_channel(const OpticalSignal& signal,
                                                          const ChannelParams& params);

/// Named weather presets: rain (6 dB/km, 1 km), fog (100 dB/km, 0.3 km),
/// clear (0.2 dB/km, 1 km). Apertures and divergence take the global
/// defaults from ChannelParams.
ChannelParams preset(const std::string& name);

const std::vector<WeatherPreset>& weather_presets();

void validate(const ChannelParams& params);

}  // namespace fso

#endif
