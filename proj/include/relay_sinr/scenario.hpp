#pragma once

// Batch scenario description read from JSON, plus the built-in figure
// presets. This is the only layer that knows about dB.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relay_sinr/analytic.hpp"
#include "relay_sinr/model.hpp"
#include "relay_sinr/oracle.hpp"

namespace relay_sinr::cli {

enum class Metric { Outage, Cdf, Pdf };

/// Quantity swept along the CSV x column.
enum class Axis {
    TotalSnrDb,        // total transmit power over unit noise, dB
    InterfererPowerDb, // per-interferer power over unit noise, dB
    Interferers,       // interferer count at the relay (destination tied or fixed)
    SinrDb,            // CDF abscissa in dB
    Sinr,              // PDF abscissa, linear
};

enum class Producer { Analytic, MonteCarlo, Quadrature };

struct Sweep
{
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start, start + step, ... up to stop inclusive (within 1e-9 step).
    std::vector<double> values() const;
};

struct Scenario
{
    std::string name;
    SystemModel model = SystemModel::SM2;
    Metric metric = Metric::Outage;
    bool nakagami = false;
    double m1 = 1.0;
    double m2 = 1.0;

    Axis axis = Axis::TotalSnrDb;
    Sweep sweep;

    // Fixed values for whichever quantities are not swept.
    double total_snr_db = 30.0;
    std::vector<double> inr_db{3.0};  // one common value, or one per interferer (relay first)
    int l1 = 4;
    int l2 = 4;
    bool l2_tied = false;  // l2 follows l1

    double zeta = 0.5;
    double noise = 1.0;  // noise power relative to the unit reference
    ThresholdSpec threshold;
    SeriesControl series;

    std::size_t mc_samples = 1000000;
    std::uint64_t seed = 1;
    GainModel gain = GainModel::Hypothetical;

    std::vector<Producer> producers{Producer::Analytic};
    std::optional<double> op_floor;
    std::string grid_note;

    bool has(Producer p) const;
};

/// Error in a scenario document. `pointer` is a JSON pointer to the
/// offending field, `line` the 1-based source line when known (0 otherwise).
class SchemaError : public std::runtime_error
{
  public:
    SchemaError(std::string pointer, const std::string& message, int line = 0);

    const std::string& pointer() const noexcept { return pointer_; }
    int line() const noexcept { return line_; }

  private:
    std::string pointer_;
    int line_;
};

Scenario parse_scenario(const nlohmann::json& doc);

/// Fully resolved form: every field present, defaults filled in.
nlohmann::json to_json(const Scenario& scenario);

/// Reads a scenario file or a manifest written by a previous run (its
/// embedded scenario is used). Throws SchemaError with a line number.
Scenario load_scenario_file(const std::string& path);
Scenario load_scenario_text(const std::string& text);

/// Physical quantities at one grid point.
struct PointSetup
{
    NetworkConfig config;
    InterfererPopulation relay;
    InterfererPopulation dest;
    double gamma = 0.0;  // SINR abscissa for the CDF/PDF metrics
};

PointSetup setup_point(const Scenario& scenario, double x);

std::string axis_unit(Axis axis);
std::string producer_name(Producer p);

struct PresetSeries
{
    std::string label;
    Scenario scenario;
};

struct Preset
{
    std::string name;
    std::string description;
    std::vector<PresetSeries> series;
};

std::vector<std::string> preset_names();

/// Throws SchemaError for an unknown name.
Preset figure_preset(const std::string& name);

}  // namespace relay_sinr::cli
