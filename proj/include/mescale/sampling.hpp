#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mescale/scenario.hpp"

namespace mescale {

enum class DesignKind { Oat, Saltelli, Grid };

std::string_view to_string(DesignKind kind);
DesignKind design_kind_from_string(std::string_view text);

/// Run ids of the three OAT evaluations that involve one factor.
struct OatTriple {
    std::string factor;
    std::size_t base_run = 0;
    std::size_t min_run = 0;
    std::size_t max_run = 0;

    bool operator==(const OatTriple&) const = default;
};

struct OatMeta {
    std::vector<OatTriple> triples;

    bool operator==(const OatMeta&) const = default;
};

/// Block layout: A, B, AB_1..AB_k and, with second order, BA_1..BA_k; each
/// block holds `n` consecutive rows.
struct SaltelliMeta {
    std::size_t n = 0;
    std::size_t k = 0;
    bool second_order = false;
    std::vector<std::string> factors;

    std::size_t a_row(std::size_t j) const { return j; }
    std::size_t b_row(std::size_t j) const { return n + j; }
    std::size_t ab_row(std::size_t i, std::size_t j) const { return (2 + i) * n + j; }
    std::size_t ba_row(std::size_t i, std::size_t j) const { return (2 + k + i) * n + j; }
    std::size_t run_count() const { return n * (second_order ? 2 * k + 2 : k + 2); }

    bool operator==(const SaltelliMeta&) const = default;
};

struct GridAxis {
    std::string factor;
    double min = 0.0;
    double max = 0.0;

    bool operator==(const GridAxis&) const = default;
};

/// Row-major: the first axis is the outer loop.
struct GridMeta {
    std::vector<GridAxis> axes;
    std::size_t points_per_axis = 0;

    double value(std::size_t axis, std::size_t index) const;

    bool operator==(const GridMeta&) const = default;
};

using DesignMeta = std::variant<OatMeta, SaltelliMeta, GridMeta>;

struct CampaignDesign {
    DesignKind kind = DesignKind::Oat;
    std::vector<Factor> factors;
    std::vector<Recipe> recipes;
    DesignMeta meta;

    bool operator==(const CampaignDesign&) const = default;
};

/// Run 0 is the all-base recipe, then (min, max) per factor in input order.
CampaignDesign oat_design(const std::vector<Factor>& factors);

/// Base matrices A and B come from a 2k-dimensional Sobol sequence (origin
/// dropped); unit values map linearly onto each factor's [min, max].
/// Non-power-of-two `n` is accepted but reported through `warning`.
CampaignDesign saltelli_design(const std::vector<Factor>& factors, std::size_t n, bool second_order,
                               std::string* warning = nullptr);

/// Inclusive equally spaced grid over one or two named factors; the other
/// factors stay at base.
CampaignDesign grid_design(const std::vector<Factor>& factors, const std::vector<std::string>& axes,
                           std::size_t points_per_axis);

nlohmann::json to_json(const CampaignDesign& design);
CampaignDesign design_from_json(const nlohmann::json& j);

/// Checks recipe count and ordering against the meta layout.
void validate(const CampaignDesign& design);

}  // namespace mescale
