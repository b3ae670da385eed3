#pragma once

// Physical configuration of a dual-hop amplify-and-forward link and the
// quantities derived from it. Everything here is in linear units; dB only
// exists at the command-line boundary.

#include <variant>
#include <vector>

namespace relay_sinr {

enum class SystemModel { SM1, SM2 };

struct NetworkConfig
{
    double total_power = 200.0;
    double power_share = 0.5;  // fraction of total_power given to the relay
    double noise_relay = 1.0;
    double noise_dest = 1.0;
    double gain_hop1 = 1.0;
    double gain_hop2 = 1.0;
    SystemModel model = SystemModel::SM2;

    double source_power() const { return (1.0 - power_share) * total_power; }
    double relay_power() const { return power_share * total_power; }

    void validate() const;
};

struct HopParams
{
    double lambda1;  // mean SNR of the source-relay hop
    double lambda2;  // mean SNR of the relay-destination hop
};

struct Rayleigh
{
};

struct Nakagami
{
    double m;
};

using Fading = std::variant<Rayleigh, Nakagami>;

/// Interferers seen by one node. mean_inrs holds one linear mean INR per
/// interferer; an empty list means the node is interference free.
struct InterfererPopulation
{
    std::vector<double> mean_inrs;
    Fading fading = Rayleigh{};

    std::size_t size() const { return mean_inrs.size(); }
    bool empty() const { return mean_inrs.empty(); }
    bool is_rayleigh() const { return std::holds_alternative<Rayleigh>(fading); }
    double nakagami_m() const;

    void validate() const;
};

struct ThresholdSpec
{
    double rho = 1.0;
    int hops = 2;
    double rate = 1.0;
};

HopParams derive_hop_params(const NetworkConfig& config);

/// rho * (2^{M R} - 1). A zero rate gives the degenerate threshold 0.
double outage_threshold(const ThresholdSpec& spec);

double db_to_linear(double x_db);
double linear_to_db(double x);

}  // namespace relay_sinr
