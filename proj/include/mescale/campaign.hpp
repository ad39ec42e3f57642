#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mescale/metrics.hpp"
#include "mescale/profiles.hpp"
#include "mescale/sampling.hpp"
#include "mescale/scenario.hpp"

namespace mescale {

inline constexpr const char* kToolVersion = "mescale 0.1.0";

enum class RunStatus { Ok, Failed, Pending };

struct RunResult {
    std::uint64_t run_id = 0;
    RunStatus status = RunStatus::Pending;
    std::string reason;
    std::optional<MetricSet> metrics;
    std::uint64_t seed = 0;
};

struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
};

struct CampaignResult {
    CampaignDesign design;
    /// One entry per recipe, in run_id order.
    std::vector<RunResult> runs;
    Provenance provenance;
    std::size_t executed = 0;
    std::size_t resumed = 0;

    bool complete() const;
    std::size_t failed_count() const;
    /// Values of one metric for the ok runs; nothing for failed or pending ones.
    std::vector<std::optional<double>> metric_column(const std::string& metric) const;
};

struct CampaignOptions {
    std::size_t parallelism = 1;
    std::filesystem::path out_dir;
    std::uint64_t seed = 42;
    bool write_trajectories = true;
    /// Stop after this many newly simulated runs, leaving the rest pending.
    std::optional<std::size_t> max_new_runs;
    /// Progress messages, called from the coordinating thread only.
    std::function<void(const std::string&)> log;
};

/// Stable per-run seed derived from the campaign seed.
std::uint64_t run_seed(std::uint64_t campaign_seed, std::uint64_t run_id);

/// Simulates every recipe of `design` against `base_config`. Runs already
/// recorded in `out_dir/runs` are not repeated. Output files:
///   design.json, recipes.json, runs/run_NNNNNN.json (+ _trajectory.csv),
///   results.csv (only once every run has finished).
/// Throws ValidationError when out_dir holds a different campaign or when the
/// design names factors the configuration cannot bind, and std::runtime_error
/// when files cannot be written.
CampaignResult run_campaign(const CampaignDesign& design, const BenchmarkConfig& base_config,
                            const CampaignOptions& options);

void write_results_csv(const CampaignResult& result, std::ostream& out);
/// Reads a campaign directory (design.json + results.csv). Throws
/// ValidationError when the two disagree on the configuration hash or when
/// `expected_hash` is given and differs.
CampaignResult read_campaign(const std::filesystem::path& dir,
                             const std::optional<std::string>& expected_hash = std::nullopt);

/// Simulates one recipe; failures are captured in the returned status.
RunResult run_single(const BenchmarkConfig& base_config, const Profiles& profiles, const Recipe& recipe,
                     std::uint64_t seed, const std::filesystem::path* trajectory_path = nullptr);

}  // namespace mescale
