#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mescale/campaign.hpp"
#include "mescale/metamodel.hpp"
#include "mescale/oat_ranking.hpp"
#include "mescale/sobol_analysis.hpp"

namespace mescale {

/// Sobol indices for each listed metric (all metrics when empty). Every
/// Saltelli row must have succeeded.
SobolResult analyze_sobol(const CampaignResult& campaign, std::uint64_t seed,
                          const std::vector<std::string>& metrics = {}, const SobolOptions& options = {});

/// Failed runs are tolerated (with a warning in the ranking) when
/// `tolerate_missing` is set.
OatRanking analyze_oat(const CampaignResult& campaign, bool tolerate_missing);

struct MetaModelFit {
    MetaModel model;
    std::string metric;
    /// Distinct sampled values per axis, ascending.
    std::vector<std::vector<double>> grid_points;
    std::vector<std::string> warnings;
};

/// Fits `metric` over the axes of a grid campaign; failed runs are skipped
/// with a warning.
MetaModelFit analyze_metamodel(const CampaignResult& campaign, const std::string& metric, int degree);

nlohmann::json to_json(const MetaModelFit& fit);
MetaModelFit metamodel_fit_from_json(const nlohmann::json& j);

}  // namespace mescale
