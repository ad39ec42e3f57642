// Command line front end: init, run, campaign, analyze, plot.
// Exit codes: 0 ok, 1 usage, 2 validation, 3 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mescale/campaign.hpp"
#include "mescale/campaign_analysis.hpp"
#include "mescale/error.hpp"
#include "mescale/metrics.hpp"
#include "mescale/plots.hpp"
#include "mescale/sampling.hpp"
#include "mescale/scenario.hpp"
#include "mescale/simulator.hpp"

namespace fs = std::filesystem;
using namespace mescale;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

void log(const std::string& msg) { std::cerr << "[mescale] " << msg << '\n'; }

BenchmarkConfig config_or_default(const std::string& path) {
    return path.empty() ? default_config() : load_config(path);
}

std::vector<Factor> factors_or_default(const std::string& path) {
    auto factors = path.empty() ? default_factors() : load_factors(path);
    validate_factor_set(factors);
    return factors;
}

// A recipe file may hold a single recipe object or an array with one entry.
Recipe load_single_recipe(const fs::path& path) {
    const auto j = read_json_file(path);
    if (j.is_array()) {
        if (j.size() != 1) {
            throw ValidationError("recipe file holds " + std::to_string(j.size()) + " recipes; expected one");
        }
        return recipe_from_json(j.at(0));
    }
    return recipe_from_json(j);
}

struct CampaignArgs {
    std::string design;
    std::string factors;
    std::string config;
    std::size_t samples = 1024;
    bool second_order = false;
    std::vector<std::string> axes;
    std::size_t points = 8;
    std::string out;
    std::size_t jobs = 1;
    std::uint64_t seed = 42;
    bool no_trajectories = false;
};

int cmd_campaign(const CampaignArgs& a) {
    const auto factors = factors_or_default(a.factors);
    const auto config = config_or_default(a.config);
    CampaignDesign design;
    switch (design_kind_from_string(a.design)) {
        case DesignKind::Oat:
            design = oat_design(factors);
            break;
        case DesignKind::Saltelli: {
            std::string warning;
            design = saltelli_design(factors, a.samples, a.second_order, &warning);
            if (!warning.empty()) {
                log("warning: " + warning);
            }
            break;
        }
        case DesignKind::Grid:
            if (a.axes.empty()) {
                throw ValidationError("grid design needs --axes");
            }
            design = grid_design(factors, a.axes, a.points);
            break;
    }
    CampaignOptions options;
    options.out_dir = a.out;
    options.parallelism = a.jobs;
    options.seed = a.seed;
    options.write_trajectories = !a.no_trajectories;
    options.log = log;
    const auto result = run_campaign(design, config, options);
    std::cout << (options.out_dir / "results.csv").string() << '\n';
    return result.failed_count() == 0 ? 0 : kExitRuntime;
}

int cmd_run(const std::string& config_path, const std::string& recipe_path, const fs::path& out) {
    const auto config = config_or_default(config_path);
    Recipe recipe;
    if (!recipe_path.empty()) {
        recipe = load_single_recipe(recipe_path);
    }
    const BenchmarkConfig applied = apply_recipe(config, recipe);
    validate(applied);
    const Trajectory traj = simulate(applied);
    const MetricSet metrics = compute_metrics(traj);
    fs::create_directories(out);
    write_trajectory_csv(traj, out / "trajectory.csv");
    nlohmann::json j = to_json(metrics);
    j["run_id"] = recipe.run_id;
    j["config_hash"] = config_hash(config);
    write_json_file(j, out / "metrics.json");
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct AnalyzeArgs {
    std::string kind;
    std::string runs;
    std::string metric;
    int degree = 4;
    std::string out;
    std::string config;
    std::uint64_t seed = 42;
    std::size_t resamples = 1000;
    bool strict = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
    std::optional<std::string> expected;
    if (!a.config.empty()) {
        expected = config_hash(load_config(a.config));
    }
    const auto campaign = read_campaign(a.runs, expected);
    nlohmann::json out;
    if (a.kind == "sobol") {
        std::vector<std::string> metrics;
        if (!a.metric.empty()) {
            metrics.push_back(a.metric);
        }
        const auto result = analyze_sobol(campaign, a.seed, metrics, SobolOptions{a.resamples, 0.95});
        for (const auto& [name, idx] : result.metrics) {
            for (const auto& w : idx.warnings) {
                log("warning (" + name + "): " + w);
            }
        }
        out = to_json(result);
    } else if (a.kind == "oat") {
        const auto ranking = analyze_oat(campaign, !a.strict);
        for (const auto& w : ranking.warnings) {
            log("warning: " + w);
        }
        out = to_json(ranking, campaign.design.factors);
    } else if (a.kind == "metamodel") {
        if (a.metric.empty()) {
            throw ValidationError("metamodel analysis needs --metric");
        }
        const auto fit = analyze_metamodel(campaign, a.metric, a.degree);
        for (const auto& w : fit.warnings) {
            log("warning: " + w);
        }
        out = to_json(fit);
    } else {
        throw ValidationError("unknown analysis kind '" + a.kind + "'");
    }
    out["config_hash"] = campaign.provenance.config_hash;
    const fs::path path(a.out);
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    write_json_file(out, path);
    std::cout << path.string() << '\n';
    return 0;
}

int cmd_plot(const std::string& kind, const fs::path& in, const fs::path& out) {
    for (const auto& p : emit_plots(plot_kind_from_string(kind), in, out)) {
        std::cout << p.string() << '\n';
    }
    return 0;
}

int cmd_init(const fs::path& out) {
    fs::create_directories(out);
    save_config(default_config(), out / "config.json");
    save_factors(default_factors(), out / "factors.json");
    std::cout << (out / "config.json").string() << '\n' << (out / "factors.json").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-energy benchmark simulator and sensitivity-analysis toolbox"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string init_out = ".";
    auto* init = app.add_subcommand("init", "Write the default config.json and factors.json");
    init->add_option("--out", init_out, "Target directory");

    CampaignArgs ca;
    auto* campaign = app.add_subcommand("campaign", "Generate a design and simulate every recipe");
    campaign->add_option("--design", ca.design, "oat, sobol (saltelli) or grid")
        ->required()
        ->check(CLI::IsMember({"oat", "sobol", "saltelli", "grid"}));
    campaign->add_option("--factors", ca.factors, "factors.json (default: built-in factor set)");
    campaign->add_option("--config", ca.config, "config.json (default: built-in baseline)");
    campaign->add_option("--samples", ca.samples, "Saltelli base sample count N")->check(CLI::PositiveNumber);
    campaign->add_flag("--second-order", ca.second_order, "Add the BA_i blocks to the Saltelli design");
    campaign->add_option("--axes", ca.axes, "Grid axes (one or two factor names)")->delimiter(',');
    campaign->add_option("--points", ca.points, "Grid points per axis");
    campaign->add_option("--out", ca.out, "Output directory")->required();
    campaign->add_option("--jobs", ca.jobs, "Parallel workers")->check(CLI::PositiveNumber);
    campaign->add_option("--seed", ca.seed, "Campaign seed");
    campaign->add_flag("--no-trajectories", ca.no_trajectories, "Skip per-run trajectory CSVs");

    std::string run_config;
    std::string run_recipe;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Simulate a single recipe");
    run->add_option("--config", run_config, "config.json (default: built-in baseline)");
    run->add_option("--recipe", run_recipe, "recipe.json (default: no substitutions)");
    run->add_option("--out", run_out, "Output directory")->required();

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Sobol indices, OAT ranking or meta-model of a campaign");
    analyze->add_option("--kind", aa.kind, "sobol, oat or metamodel")
        ->required()
        ->check(CLI::IsMember({"sobol", "oat", "metamodel"}));
    analyze->add_option("--runs", aa.runs, "Campaign directory")->required();
    analyze->add_option("--metric", aa.metric, "Metric name (all metrics for sobol when omitted)");
    analyze->add_option("--degree", aa.degree, "Meta-model total degree")->check(CLI::NonNegativeNumber);
    analyze->add_option("--out", aa.out, "Output JSON file")->required();
    analyze->add_option("--config", aa.config, "Refuse the campaign unless it was run with this config");
    analyze->add_option("--seed", aa.seed, "Bootstrap seed");
    analyze->add_option("--resamples", aa.resamples, "Bootstrap resamples")->check(CLI::PositiveNumber);
    analyze->add_flag("--strict", aa.strict, "OAT: fail on missing runs instead of warning");

    std::string plot_kind;
    std::string plot_in;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "Render SVG plots (plus CSV data) from analysis output");
    plot->add_option("--kind", plot_kind, "sobol, oat, ranking or surface")
        ->required()
        ->check(CLI::IsMember({"sobol", "oat", "ranking", "surface"}));
    plot->add_option("--in", plot_in, "analysis.json, ranking.json or metamodel.json")->required();
    plot->add_option("--out", plot_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*init) return cmd_init(init_out);
        if (*campaign) return cmd_campaign(ca);
        if (*run) return cmd_run(run_config, run_recipe, run_out);
        if (*analyze) return cmd_analyze(aa);
        if (*plot) return cmd_plot(plot_kind, plot_in, plot_out);
    } catch (const ValidationError& e) {
        log("validation error: " + std::string(e.what()));
        return kExitValidation;
    } catch (const ParseError& e) {
        log("parse error: " + std::string(e.what()));
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        log("validation error: " + std::string(e.what()));
        return kExitValidation;
    } catch (const std::exception& e) {
        log("error: " + std::string(e.what()));
        return kExitRuntime;
    }
    return kExitUsage;
}
