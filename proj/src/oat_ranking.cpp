#include "mescale/oat_ranking.hpp"

#include <algorithm>
#include <cmath>

#include "mescale/error.hpp"

namespace mescale {

const OatMetricRanking& OatRanking::metric(const std::string& name) const {
    for (const auto& m : per_metric) {
        if (m.metric == name) {
            return m;
        }
    }
    throw ValidationError("ranking has no metric '" + name + "'");
}

int OatRanking::rank_of(const std::string& metric_name, const std::string& factor) const {
    for (const auto& s : metric(metric_name).scores) {
        if (s.factor == factor) {
            return s.rank;
        }
    }
    throw ValidationError("ranking has no factor '" + factor + "'");
}

namespace {

double population_variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) {
        acc += (x - mean) * (x - mean);
    }
    return acc / static_cast<double>(v.size());
}

}  // namespace

OatRanking oat_ranking(const OatMeta& meta, const std::vector<std::string>& metrics,
                       const std::vector<std::optional<std::vector<double>>>& run_values,
                       const OatOptions& options) {
    if (meta.triples.empty()) {
        throw ValidationError("OAT ranking needs at least one factor");
    }
    if (metrics.empty()) {
        throw ValidationError("OAT ranking needs at least one metric");
    }
    OatRanking out;
    for (const auto& t : meta.triples) {
        out.factors.push_back(t.factor);
    }

    auto lookup = [&](std::size_t run, std::size_t metric) -> std::optional<double> {
        if (run >= run_values.size() || !run_values[run]) {
            return std::nullopt;
        }
        const auto& row = *run_values[run];
        if (row.size() != metrics.size()) {
            throw ValidationError("run " + std::to_string(run) + " has " + std::to_string(row.size()) +
                                  " metric values, expected " + std::to_string(metrics.size()));
        }
        return row[metric];
    };

    for (const auto& t : meta.triples) {
        for (std::size_t run : {t.min_run, t.base_run, t.max_run}) {
            if (run >= run_values.size() || !run_values[run]) {
                if (!options.tolerate_missing) {
                    throw ValidationError("OAT run " + std::to_string(run) + " (factor '" + t.factor +
                                          "') is missing");
                }
                out.warnings.push_back("OAT run " + std::to_string(run) + " (factor '" + t.factor +
                                       "') is missing; scored on the remaining runs");
            }
        }
    }

    for (std::size_t m = 0; m < metrics.size(); ++m) {
        OatMetricRanking ranking;
        ranking.metric = metrics[m];
        for (const auto& t : meta.triples) {
            OatFactorScore s;
            s.factor = t.factor;
            std::vector<double> present;
            const std::array<std::size_t, 3> runs{t.min_run, t.base_run, t.max_run};
            for (std::size_t i = 0; i < 3; ++i) {
                const auto v = lookup(runs[i], m);
                s.values[i] = v.value_or(std::nan(""));
                if (v) {
                    present.push_back(*v);
                }
            }
            if (present.size() < 2) {
                throw ValidationError("factor '" + t.factor + "' has fewer than two successful OAT runs");
            }
            s.score = population_variance(present);
            ranking.scores.push_back(s);
        }
        std::sort(ranking.scores.begin(), ranking.scores.end(), [](const auto& a, const auto& b) {
            if (a.score != b.score) {
                return a.score > b.score;
            }
            return a.factor < b.factor;
        });
        for (std::size_t i = 0; i < ranking.scores.size(); ++i) {
            ranking.scores[i].rank = static_cast<int>(i + 1);
            out.mean_rank[ranking.scores[i].factor] += static_cast<double>(i + 1);
        }
        out.per_metric.push_back(std::move(ranking));
    }

    for (auto& [_, r] : out.mean_rank) {
        r /= static_cast<double>(metrics.size());
    }
    out.aggregate_order = out.factors;
    std::sort(out.aggregate_order.begin(), out.aggregate_order.end(), [&](const auto& a, const auto& b) {
        const double ra = out.mean_rank.at(a);
        const double rb = out.mean_rank.at(b);
        if (ra != rb) {
            return ra < rb;
        }
        return a < b;
    });
    return out;
}

OatRanking oat_ranking(const OatMeta& meta, const std::vector<std::optional<MetricSet>>& runs,
                       const OatOptions& options) {
    const auto& names = primary_metric_names();
    std::vector<std::optional<std::vector<double>>> values;
    values.reserve(runs.size());
    for (const auto& r : runs) {
        if (!r) {
            values.emplace_back();
            continue;
        }
        std::vector<double> row;
        for (const auto& n : names) {
            row.push_back(metric_value(*r, n));
        }
        values.emplace_back(std::move(row));
    }
    return oat_ranking(meta, names, values, options);
}

nlohmann::json to_json(const OatRanking& ranking, const std::vector<Factor>& factors) {
    using nlohmann::json;
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json metrics = json::array();
    for (const auto& m : ranking.per_metric) {
        json scores = json::array();
        for (const auto& s : m.scores) {
            scores.push_back({{"factor", s.factor},
                              {"score", s.score},
                              {"rank", s.rank},
                              {"values", {finite_or_null(s.values[0]), finite_or_null(s.values[1]),
                                          finite_or_null(s.values[2])}}});
        }
        metrics.push_back({{"metric", m.metric}, {"scores", scores}});
    }
    json ranges = json::object();
    for (const auto& f : factors) {
        ranges[f.name] = {{"min", f.min}, {"base", f.base}, {"max", f.max}, {"unit", f.unit}};
    }
    json aggregate = json::array();
    for (const auto& f : ranking.aggregate_order) {
        aggregate.push_back({{"factor", f}, {"mean_rank", ranking.mean_rank.at(f)}});
    }
    return {{"kind", "oat"},
            {"factors", ranking.factors},
            {"factor_ranges", ranges},
            {"metrics", metrics},
            {"aggregate", aggregate},
            {"warnings", ranking.warnings}};
}

OatRanking oat_ranking_from_json(const nlohmann::json& j) {
    try {
        OatRanking r;
        r.factors = j.at("factors").get<std::vector<std::string>>();
        for (const auto& m : j.at("metrics")) {
            OatMetricRanking mr;
            mr.metric = m.at("metric").get<std::string>();
            for (const auto& s : m.at("scores")) {
                OatFactorScore fs;
                fs.factor = s.at("factor").get<std::string>();
                fs.score = s.at("score").get<double>();
                fs.rank = s.at("rank").get<int>();
                for (std::size_t i = 0; i < 3; ++i) {
                    const auto& v = s.at("values").at(i);
                    fs.values[i] = v.is_null() ? std::nan("") : v.get<double>();
                }
                mr.scores.push_back(fs);
            }
            r.per_metric.push_back(std::move(mr));
        }
        for (const auto& a : j.at("aggregate")) {
            const auto name = a.at("factor").get<std::string>();
            r.aggregate_order.push_back(name);
            r.mean_rank[name] = a.at("mean_rank").get<double>();
        }
        if (j.contains("warnings")) {
            r.warnings = j.at("warnings").get<std::vector<std::string>>();
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("ranking json: ") + e.what());
    }
}

}  // namespace mescale
