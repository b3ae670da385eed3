#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "relay_sinr/runner.hpp"
#include "relay_sinr/scenario.hpp"

using namespace relay_sinr::cli;

namespace {

int cmd_run(const std::string& path, const std::string& out)
{
    const Scenario s = load_scenario_file(path);
    const int code = run_to_directory(s, out);
    if (code == kExitNonConvergence)
        std::cerr << "relay-sinr: some points did not converge; see failures in " << out << "/manifest.json\n";
    return code;
}

int cmd_figure(const std::string& name, const std::string& out, long long mc_samples, long long seed)
{
    Preset preset = figure_preset(name);
    nlohmann::json index;
    index["preset"] = preset.name;
    index["description"] = preset.description;
    index["series"] = nlohmann::json::array();
    int worst = kExitOk;
    for (PresetSeries& series : preset.series) {
        if (mc_samples > 0)
            series.scenario.mc_samples = static_cast<std::size_t>(mc_samples);
        if (seed >= 0)
            series.scenario.seed = static_cast<std::uint64_t>(seed);
        // Round-trip through the schema so presets obey the same rules as files.
        const Scenario s = parse_scenario(to_json(series.scenario));
        const std::string dir = (std::filesystem::path(out) / series.label).string();
        std::cerr << "relay-sinr: " << preset.name << " / " << series.label << "\n";
        const int code = run_to_directory(s, dir);
        worst = std::max(worst, code);
        index["series"].push_back({{"label", series.label}, {"dir", series.label}, {"status", code == kExitOk ? "ok" : "non_convergence"}});
    }
    std::filesystem::create_directories(out);
    std::ofstream(std::filesystem::path(out) / "figure.json", std::ios::binary) << index.dump(2) << '\n';
    return worst;
}

int cmd_validate(const std::string& path)
{
    const Scenario s = load_scenario_file(path);
    std::cout << "ok: " << s.sweep.values().size() << " grid points, x_unit=" << axis_unit(s.axis) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage and SINR distributions of dual-hop relays under interference"};
    app.set_version_flag("--version", std::string(RELAY_SINR_VERSION));
    app.require_subcommand(1);

    std::string scenario_path, out_dir, preset_name;
    long long mc_samples = 0, seed = -1;

    auto* run = app.add_subcommand("run", "Evaluate a scenario (or re-run a manifest)");
    run->add_option("scenario", scenario_path, "Scenario JSON or manifest.json")->required();
    run->add_option("--out", out_dir, "Output directory")->required();

    auto* figure = app.add_subcommand("figure", "Run a built-in figure preset");
    std::string names;
    for (const auto& n : preset_names())
        names += (names.empty() ? "" : ", ") + n;
    figure->add_option("name", preset_name, "One of: " + names)->required();
    figure->add_option("--out", out_dir, "Output directory")->required();
    figure->add_option("--mc-samples", mc_samples, "Monte-Carlo samples per point")->check(CLI::PositiveNumber);
    figure->add_option("--seed", seed, "Random seed")->check(CLI::NonNegativeNumber);

    auto* validate = app.add_subcommand("validate", "Check a scenario file against the schema");
    validate->add_option("scenario", scenario_path, "Scenario JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitSchema;
    }

    try {
        if (*run)
            return cmd_run(scenario_path, out_dir);
        if (*figure)
            return cmd_figure(preset_name, out_dir, mc_samples, seed);
        return cmd_validate(scenario_path);
    } catch (const SchemaError& e) {
        std::cerr << "relay-sinr: schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "relay-sinr: " << e.what() << "\n";
        return 1;
    }
}
