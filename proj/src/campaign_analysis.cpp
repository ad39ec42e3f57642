#include "mescale/campaign_analysis.hpp"

#include <algorithm>
#include <random>

#include "mescale/error.hpp"

namespace mescale {

SobolResult analyze_sobol(const CampaignResult& campaign, std::uint64_t seed, const std::vector<std::string>& metrics,
                          const SobolOptions& options) {
    const auto* meta = std::get_if<SaltelliMeta>(&campaign.design.meta);
    if (meta == nullptr) {
        throw ValidationError("Sobol analysis needs a Saltelli campaign");
    }
    for (const auto& r : campaign.runs) {
        if (r.status != RunStatus::Ok) {
            throw ValidationError("Sobol analysis needs every run; run " + std::to_string(r.run_id) + " is " +
                                  (r.status == RunStatus::Failed ? "failed: " + r.reason : std::string("pending")));
        }
    }
    const auto& names = metrics.empty() ? metric_names() : metrics;
    SobolResult result;
    result.factors = meta->factors;
    result.n = meta->n;
    result.k = meta->k;
    std::mt19937_64 rng(seed);
    for (const auto& name : names) {
        std::vector<double> y;
        y.reserve(campaign.runs.size());
        for (const auto& r : campaign.runs) {
            y.push_back(metric_value(*r.metrics, name));
        }
        try {
            result.metrics[name] = sobol_indices(*meta, y, rng, options);
        } catch (const SolverError& e) {
            // A metric the factors cannot move has no variance to attribute;
            // report it instead of aborting the other metrics.
            SobolIndices idx;
            idx.factors = meta->factors;
            idx.n = meta->n;
            idx.k = meta->k;
            idx.s1.assign(meta->k, 0.0);
            idx.s1_conf.assign(meta->k, 0.0);
            idx.st.assign(meta->k, 0.0);
            idx.st_conf.assign(meta->k, 0.0);
            idx.warnings.push_back(e.what());
            result.metrics[name] = std::move(idx);
        }
    }
    return result;
}

OatRanking analyze_oat(const CampaignResult& campaign, bool tolerate_missing) {
    const auto* meta = std::get_if<OatMeta>(&campaign.design.meta);
    if (meta == nullptr) {
        throw ValidationError("OAT ranking needs an OAT campaign");
    }
    std::vector<std::optional<MetricSet>> runs;
    for (const auto& r : campaign.runs) {
        runs.push_back(r.status == RunStatus::Ok ? r.metrics : std::nullopt);
    }
    return oat_ranking(*meta, runs, OatOptions{tolerate_missing});
}

MetaModelFit analyze_metamodel(const CampaignResult& campaign, const std::string& metric, int degree) {
    const auto* meta = std::get_if<GridMeta>(&campaign.design.meta);
    if (meta == nullptr) {
        throw ValidationError("meta-model fitting needs a grid campaign");
    }
    metric_value(MetricSet{}, metric);  // rejects unknown names early

    MetaModelFit fit;
    fit.metric = metric;
    std::vector<MetaModelAxis> axes;
    for (const auto& a : meta->axes) {
        axes.push_back({a.factor, a.min, a.max});
        fit.grid_points.emplace_back();
    }
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < campaign.runs.size(); ++i) {
        const auto& recipe = campaign.design.recipes.at(i);
        std::vector<double> row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const double v = recipe.assignments.at(axes[a].name);
            row.push_back(v);
            auto& pts = fit.grid_points[a];
            if (std::find(pts.begin(), pts.end(), v) == pts.end()) {
                pts.push_back(v);
            }
        }
        const auto& r = campaign.runs[i];
        if (r.status != RunStatus::Ok) {
            fit.warnings.push_back("run " + std::to_string(r.run_id) + " skipped (not ok)");
            continue;
        }
        x.push_back(std::move(row));
        y.push_back(metric_value(*r.metrics, metric));
    }
    for (auto& pts : fit.grid_points) {
        std::sort(pts.begin(), pts.end());
    }
    fit.model = fit_metamodel(x, y, axes, degree);
    return fit;
}

nlohmann::json to_json(const MetaModelFit& fit) {
    nlohmann::json j = to_json(fit.model);
    j["metric"] = fit.metric;
    j["grid_points"] = fit.grid_points;
    j["warnings"] = fit.warnings;
    return j;
}

MetaModelFit metamodel_fit_from_json(const nlohmann::json& j) {
    MetaModelFit fit;
    fit.model = metamodel_from_json(j);
    try {
        fit.metric = j.value("metric", std::string());
        if (j.contains("grid_points")) {
            fit.grid_points = j.at("grid_points").get<std::vector<std::vector<double>>>();
        }
        if (j.contains("warnings")) {
            fit.warnings = j.at("warnings").get<std::vector<std::string>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("meta-model json: ") + e.what());
    }
    return fit;
}

}  // namespace mescale
