#include "relay_sinr/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <boost/version.hpp>

#include "relay_sinr/charcoef.hpp"
#include "relay_sinr/errors.hpp"
#include "relay_sinr/oracle.hpp"
#include "relay_sinr/parallel.hpp"

namespace relay_sinr::cli {

using nlohmann::json;

namespace {

struct Cell
{
    double value = std::numeric_limits<double>::quiet_NaN();
    double stderr_ = 0.0;
    bool has_stderr = false;
    bool failed = false;
    std::string reason;
};

template <class F>
Cell guarded(F&& f)
{
    Cell c;
    try {
        c.value = f();
    } catch (const std::exception& e) {
        c.failed = true;
        c.reason = e.what();
    }
    return c;
}

std::vector<Cell> evaluate_points(const std::vector<double>& grid, unsigned workers,
                                  const std::function<Cell(double)>& eval)
{
    std::vector<Cell> out(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out[i] = eval(grid[i]);
    });
    return out;
}

double analytic_value(const Scenario& s, double x)
{
    const PointSetup p = setup_point(s, x);
    if (s.metric == Metric::Pdf)
        return sinr_pdf(p.gamma, p.config, p.relay, p.dest, s.series);
    return sinr_cdf(p.gamma, p.config, p.relay, p.dest, s.series);
}

double quad_value(const Scenario& s, double x)
{
    const PointSetup p = setup_point(s, x);
    const HopParams hp = derive_hop_params(p.config);
    if (s.model == SystemModel::SM1)
        return quad_cdf_sm1(p.gamma, Sm1Params{hp.lambda1, hp.lambda2, HypoexpSum::from_means(p.relay.mean_inrs)});
    return quad_cdf_sm2(p.gamma, Sm2Params{hp.lambda2, hp.lambda1, HypoexpSum::from_means(p.relay.mean_inrs),
                                           HypoexpSum::from_means(p.dest.mean_inrs)});
}

Cell mc_point(const Scenario& s, double x)
{
    Cell c;
    try {
        const PointSetup p = setup_point(s, x);
        const SinrSampleSet set = sample_sinr(p.config, p.relay, p.dest, s.gain, s.mc_samples, s.seed, 1);
        const double g[] = {p.gamma};
        const EmpiricalCurve e = empirical_cdf(set.samples, g);
        c.value = e.values.front();
        c.stderr_ = e.stderr_.front();
        c.has_stderr = true;
    } catch (const std::exception& e) {
        c.failed = true;
        c.reason = e.what();
    }
    return c;
}

// SINR-axis curves share one sample set across the whole grid.
std::vector<Cell> mc_curve(const Scenario& s, const std::vector<double>& grid, unsigned workers)
{
    std::vector<Cell> out(grid.size());
    try {
        const PointSetup p = setup_point(s, grid.front());
        const SinrSampleSet set = sample_sinr(p.config, p.relay, p.dest, s.gain, s.mc_samples, s.seed, workers);
        EmpiricalCurve e;
        if (s.metric == Metric::Cdf) {
            std::vector<double> gammas;
            for (double x : grid)
                gammas.push_back(setup_point(s, x).gamma);
            e = empirical_cdf(set.samples, gammas);
        } else {
            // Bins centred on the grid points, split halfway between neighbours.
            std::vector<double> edges;
            const double first_half = grid.size() > 1 ? 0.5 * (grid[1] - grid[0]) : 0.5 * grid[0];
            edges.push_back(std::max(0.0, grid.front() - first_half));
            for (std::size_t i = 0; i + 1 < grid.size(); ++i)
                edges.push_back(0.5 * (grid[i] + grid[i + 1]));
            const double last_half = grid.size() > 1 ? 0.5 * (grid.back() - grid[grid.size() - 2]) : 0.5 * grid.back();
            edges.push_back(grid.back() + last_half);
            e = empirical_pdf(set.samples, edges);
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i].value = e.values[i];
            out[i].stderr_ = e.stderr_[i];
            out[i].has_stderr = true;
        }
    } catch (const std::exception& ex) {
        for (auto& c : out) {
            c.failed = true;
            c.reason = ex.what();
        }
    }
    return out;
}

std::string now_utc()
{
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

bool RunResult::converged() const
{
    return std::none_of(rows.begin(), rows.end(), [](const CurveRow& r) { return r.failed; });
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

RunResult run_scenario(const Scenario& s, unsigned workers)
{
    const auto t0 = std::chrono::steady_clock::now();
    RunResult result;
    result.workers = workers == 0 ? worker_count() : workers;
    std::vector<double> grid = s.sweep.values();

    std::vector<Cell> analytic;
    if (s.has(Producer::Analytic)) {
        analytic = evaluate_points(grid, result.workers,
                                   [&](double x) { return guarded([&] { return analytic_value(s, x); }); });
        if (s.op_floor) {
            std::vector<double> kept_grid;
            std::vector<Cell> kept;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (!analytic[i].failed && analytic[i].value < *s.op_floor)
                    continue;
                kept_grid.push_back(grid[i]);
                kept.push_back(analytic[i]);
            }
            grid = std::move(kept_grid);
            analytic = std::move(kept);
        }
    }

    std::vector<Cell> mc;
    if (s.has(Producer::MonteCarlo) && !grid.empty()) {
        if (s.axis == Axis::SinrDb || s.axis == Axis::Sinr)
            mc = mc_curve(s, grid, result.workers);
        else
            mc = evaluate_points(grid, result.workers, [&](double x) { return mc_point(s, x); });
    }

    std::vector<Cell> quad;
    if (s.has(Producer::Quadrature))
        quad = evaluate_points(grid, result.workers,
                               [&](double x) { return guarded([&] { return quad_value(s, x); }); });

    result.grid = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (Producer p : s.producers) {
            const Cell& c = p == Producer::Analytic ? analytic[i] : p == Producer::MonteCarlo ? mc[i] : quad[i];
            CurveRow row;
            row.x = grid[i];
            row.producer = p;
            row.value = c.failed ? std::numeric_limits<double>::quiet_NaN() : c.value;
            row.has_stderr = c.has_stderr && !c.failed;
            row.stderr_ = c.stderr_;
            row.failed = c.failed;
            row.reason = c.reason;
            result.rows.push_back(std::move(row));
        }
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::string format_curves(const Scenario& s, const RunResult& result)
{
    std::string out = "# x_unit=" + axis_unit(s.axis) + "\n";
    out += "x,producer,value,stderr\n";
    for (const CurveRow& row : result.rows) {
        out += format_number(row.x);
        out += ',';
        out += producer_name(row.producer);
        out += ',';
        out += format_number(row.value);
        out += ',';
        if (row.failed)
            out += "failed";
        else if (row.has_stderr)
            out += format_number(row.stderr_);
        out += '\n';
    }
    return out;
}

json make_manifest(const Scenario& s, const RunResult& result)
{
    json failures = json::array();
    for (const CurveRow& row : result.rows)
        if (row.failed)
            failures.push_back({{"x", row.x}, {"producer", producer_name(row.producer)}, {"reason", row.reason}});

    json m;
    m["manifest_version"] = 1;
    m["tool"] = "relay-sinr";
    m["scenario"] = to_json(s);
    m["x_unit"] = axis_unit(s.axis);
    m["grid_points"] = result.grid.size();
    m["rows"] = result.rows.size();
    m["status"] = result.converged() ? "ok" : "non_convergence";
    m["failures"] = failures;
    m["rng"] = {{"algorithm", kRngAlgorithm},
                {"seed", s.seed},
                {"streams", "sample index; the seed is shared by every grid point"}};
    m["versions"] = {{"relay_sinr", RELAY_SINR_VERSION},
                     {"boost", BOOST_LIB_VERSION},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                     {"compiler", __VERSION__}};
    m["workers"] = result.workers;
    m["wall_time_seconds"] = result.wall_seconds;
    m["finished_utc"] = now_utc();
    return m;
}

int run_to_directory(const Scenario& s, const std::string& dir, unsigned workers)
{
    std::filesystem::create_directories(dir);
    const RunResult result = run_scenario(s, workers);
    const std::filesystem::path base(dir);
    {
        std::ofstream out(base / "curves.csv", std::ios::binary);
        out << format_curves(s, result);
        if (!out)
            throw std::runtime_error("cannot write " + (base / "curves.csv").string());
    }
    {
        std::ofstream out(base / "manifest.json", std::ios::binary);
        out << make_manifest(s, result).dump(2) << '\n';
        if (!out)
            throw std::runtime_error("cannot write " + (base / "manifest.json").string());
    }
    return result.converged() ? kExitOk : kExitNonConvergence;
}

}  // namespace relay_sinr::cli
