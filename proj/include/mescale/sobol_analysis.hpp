#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mescale/sampling.hpp"

namespace mescale {

/// First-order and total-effect indices of one output, with 95% bootstrap
/// half-widths.
struct SobolIndices {
    std::vector<std::string> factors;
    std::vector<double> s1;
    std::vector<double> s1_conf;
    std::vector<double> st;
    std::vector<double> st_conf;
    double variance = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;
    /// Soft-invariant violations (ST well below S1), reported not fatal.
    std::vector<std::string> warnings;
};

struct SobolOptions {
    std::size_t resamples = 1000;
    double confidence = 0.95;
};

/// Saltelli (2010) first-order and Jansen total-effect estimators over the
/// block layout of `meta`; confidence half-widths from a percentile
/// bootstrap over base-sample indices. Throws ValidationError on a layout
/// mismatch or non-finite output and SolverError("zero output variance")
/// for a constant model.
SobolIndices sobol_indices(const SaltelliMeta& meta, std::span<const double> outputs, std::mt19937_64& rng,
                           const SobolOptions& options = {});

/// Indices for every metric of a campaign.
struct SobolResult {
    std::vector<std::string> factors;
    std::size_t n = 0;
    std::size_t k = 0;
    std::map<std::string, SobolIndices> metrics;
};

nlohmann::json to_json(const SobolResult& result);
SobolResult sobol_result_from_json(const nlohmann::json& j);

/// Uniform integer in [0, bound) from the raw engine output.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

/// Linear-interpolated quantile of sorted data (q in [0,1]).
double sorted_quantile(std::span<const double> sorted, double q);

}  // namespace mescale
