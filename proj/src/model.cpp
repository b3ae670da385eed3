#include "relay_sinr/model.hpp"

#include <cmath>
#include <string>

#include "relay_sinr/errors.hpp"

namespace relay_sinr {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
}

}  // namespace

void NetworkConfig::validate() const
{
    require_positive(total_power, "total_power");
    if (!(power_share > 0.0 && power_share <= 1.0))
        throw ConfigError("power_share must lie in (0, 1], got " + std::to_string(power_share));
    require_positive(noise_relay, "noise_relay");
    require_positive(noise_dest, "noise_dest");
    require_positive(gain_hop1, "gain_hop1");
    require_positive(gain_hop2, "gain_hop2");
}

double InterfererPopulation::nakagami_m() const
{
    if (const auto* n = std::get_if<Nakagami>(&fading))
        return n->m;
    return 1.0;
}

void InterfererPopulation::validate() const
{
    for (double v : mean_inrs)
        require_positive(v, "mean INR");
    if (const auto* n = std::get_if<Nakagami>(&fading); n && !(n->m > 0.0))
        throw ConfigError("Nakagami shape m must be > 0");
}

HopParams derive_hop_params(const NetworkConfig& config)
{
    config.validate();
    HopParams hp{config.source_power() * config.gain_hop1 / config.noise_relay,
                 config.relay_power() * config.gain_hop2 / config.noise_dest};
    if (!(hp.lambda1 > 0.0) || !(hp.lambda2 > 0.0))
        throw ConfigError("derived hop SNR is not positive (power_share = 1 leaves no source power)");
    return hp;
}

double outage_threshold(const ThresholdSpec& spec)
{
    if (!(spec.rho >= 1.0 && spec.rho <= 6.4) || spec.hops < 1 || !(spec.rate >= 0.0))
        throw ConfigError("threshold requires rho in [1, 6.4], hops >= 1, rate >= 0");
    return spec.rho * std::expm1(spec.hops * spec.rate * std::log(2.0));
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x)
{
    if (!(x > 0.0))
        throw DomainError("linear_to_db requires a positive argument");
    return 10.0 * std::log10(x);
}

}  // namespace relay_sinr
