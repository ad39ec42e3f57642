#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mescale/metrics.hpp"
#include "mescale/sampling.hpp"

namespace mescale {

struct OatFactorScore {
    std::string factor;
    /// Population variance of the metric over the factor's (min, base, max) runs.
    double score = 0.0;
    int rank = 0;
    /// Metric values at (min, base, max); NaN where a run is missing.
    std::array<double, 3> values{};
};

struct OatMetricRanking {
    std::string metric;
    /// Sorted by rank (1 first): score descending, name ascending on ties.
    std::vector<OatFactorScore> scores;
};

struct OatRanking {
    std::vector<std::string> factors;
    std::vector<OatMetricRanking> per_metric;
    /// Mean rank across metrics, per factor.
    std::map<std::string, double> mean_rank;
    /// Factors sorted by mean rank, name ascending on ties.
    std::vector<std::string> aggregate_order;
    std::vector<std::string> warnings;

    const OatMetricRanking& metric(const std::string& name) const;
    int rank_of(const std::string& metric, const std::string& factor) const;
};

struct OatOptions {
    /// Score factors from whatever part of their triple is present (at least
    /// two runs) instead of failing on missing runs.
    bool tolerate_missing = false;
};

/// `run_values[r]` holds one value per entry of `metrics` for run r, or
/// nothing when the run failed.
OatRanking oat_ranking(const OatMeta& meta, const std::vector<std::string>& metrics,
                       const std::vector<std::optional<std::vector<double>>>& run_values,
                       const OatOptions& options = {});

/// Convenience overload over the six headline metrics.
OatRanking oat_ranking(const OatMeta& meta, const std::vector<std::optional<MetricSet>>& runs,
                       const OatOptions& options = {});

/// `factors` supplies the (min, base, max) inputs for plotting.
nlohmann::json to_json(const OatRanking& ranking, const std::vector<Factor>& factors);
OatRanking oat_ranking_from_json(const nlohmann::json& j);

}  // namespace mescale
