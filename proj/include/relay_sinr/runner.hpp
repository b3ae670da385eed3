#pragma once

// Evaluates a scenario on its grid and writes curves.csv / manifest.json.

#include <string>
#include <vector>

#include <json.hpp>

#include "relay_sinr/scenario.hpp"

namespace relay_sinr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNonConvergence = 3;

struct CurveRow
{
    double x = 0.0;
    Producer producer = Producer::Analytic;
    double value = 0.0;
    bool has_stderr = false;
    double stderr_ = 0.0;
    bool failed = false;
    std::string reason;
};

struct RunResult
{
    std::vector<double> grid;  // after op_floor filtering
    std::vector<CurveRow> rows; // grid-major, producers in scenario order
    double wall_seconds = 0.0;
    unsigned workers = 1;

    bool converged() const;
};

/// workers = 0 uses worker_count().
RunResult run_scenario(const Scenario& scenario, unsigned workers = 0);

/// CSV text: a `# x_unit=...` line, the header, then one row per point and
/// producer. Failed rows carry value `nan` and the word `failed` in the
/// stderr column; the reasons go to the manifest.
std::string format_curves(const Scenario& scenario, const RunResult& result);

nlohmann::json make_manifest(const Scenario& scenario, const RunResult& result);

/// Runs and writes both files into dir (created if needed). Returns the
/// process exit code.
int run_to_directory(const Scenario& scenario, const std::string& dir, unsigned workers = 0);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double v);

}  // namespace relay_sinr::cli
