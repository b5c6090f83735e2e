#include "fso/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fso {

void validate(const ChannelParams& p)
{
    if (p.gamma_db_per_km < 0.0 || !std::isfinite(p.gamma_db_per_km)) {
        throw std::invalid_argument("attenuation coefficient must be finite and non-negative");
    }
    if (!(p.range_km > 0.0) || !std::isfinite(p.range_km)) {
        throw std::invalid_argument("link range must be positive");
    }
    if (!(p.tx_aperture_m > 0.0) || !(p.rx_aperture_m > 0.0)) {
        throw std::invalid_argument("aperture diameters must be positive");
    }
    if (p.divergence_rad < 0.0 || !std::isfinite(p.divergence_rad)) {
        throw std::invalid_argument("beam divergence must be finite and non-negative");
    }
    if (p.extra_loss_db < 0.0 || !std::isfinite(p.extra_loss_db)) {
        throw std::invalid_argument("extra loss must be finite and non-negative");
    }
}

double transmittance(double gamma_db_per_km, double range_km)
{
    if (gamma_db_per_km < 0.0) {
        throw std::invalid_argument("attenuation coefficient must be non-negative");
    }
    if (range_km < 0.0) {
        throw std::invalid_argument("range must be non-negative");
    }
    return std::pow(10.0, -gamma_db_per_km * range_km / 10.0);
}

double intensity_at(double i0, double gamma_db_per_km, double range_km)
{
    if (i0 < 0.0) {
        throw std::invalid_argument("intensity must be non-negative");
    }
    return i0 * transmittance(gamma_db_per_km, range_km);
}

double geometric_loss_db(const ChannelParams& p)
{
    validate(p);
    const double range_m = p.range_km * 1000.0;
    const double spot_m = p.tx_aperture_m + p.divergence_rad * range_m;
    const double captured = std::min(1.0, (p.rx_aperture_m / spot_m) * (p.rx_aperture_m / spot_m));
    return -10.0 * std::log10(captured);
}

LinkLossBreakdown link_loss(const ChannelParams& p)
{
    validate(p);
    LinkLossBreakdown loss;
    loss.atmospheric_db = p.gamma_db_per_km * p.range_km;
    loss.geometric_db = geometric_loss_db(p);
    loss.extra_db = p.extra_loss_db;
    loss.total_db = loss.atmospheric_db + loss.geometric_db + loss.extra_db;
    loss.transmittance = std::pow(10.0, -loss.atmospheric_db / 10.0);
    return loss;
}

std::pair<OpticalSignal, LinkLossBreakdown> apply_channel(const OpticalSignal& signal,
                                                          const ChannelParams& params)
{
    const LinkLossBreakdown loss = link_loss(params);
    const double scale = std::pow(10.0, -loss.total_db / 10.0);

    OpticalSignal out = signal;
    for (double& s : out.power_w.samples) s *= scale;
    return {std::move(out), loss};
}

const std::vector<WeatherPreset>& weather_presets()
{
    static const std::vector<WeatherPreset> presets = {
        {"clear", 0.2, 1.0},
        {"fog", 100.0, 0.3},
        {"rain", 6.0, 1.0},
    };
    return presets;
}

ChannelParams preset(const std::string& name)
{
    for (const auto& w : weather_presets()) {
        if (name == w.name) {
            ChannelParams p;
            p.gamma_db_per_km = w.gamma_db_per_km;
            p.range_km = w.range_km;
            return p;
        }
    }
    std::string known;
    for (const auto& w : weather_presets()) {
        if (!known.empty()) known += ", ";
        known += w.name;
    }
    throw std::invalid_argument("unknown weather preset '" + name + "' (known: " + known + ")");
}

}  // namespace fso
