#pragma once

#include <filesystem>
#include <vector>

#include "mescale/campaign_analysis.hpp"

namespace mescale {

enum class PlotKind { Sobol, Oat, Ranking, Surface };

PlotKind plot_kind_from_string(std::string_view text);

/// Each function writes SVG files into `out_dir`, each next to a CSV of the
/// plotted numbers, and returns every path written.

/// One bar chart per metric: S1 and ST per factor with confidence whiskers.
std::vector<std::filesystem::path> plot_sobol(const SobolResult& result, const std::filesystem::path& out_dir);

/// One line plot per metric: metric value at each factor's (min, base, max).
std::vector<std::filesystem::path> plot_oat(const OatRanking& ranking, const std::filesystem::path& out_dir);

/// Heatmap of per-metric ranks with the aggregate mean rank as last column.
std::vector<std::filesystem::path> plot_ranking(const OatRanking& ranking, const std::filesystem::path& out_dir);

/// Curve (one axis) or heatmap (two axes) of the meta-model over the sampled
/// grid points, or `points` equally spaced points per axis when nonzero.
std::vector<std::filesystem::path> plot_surface(const MetaModelFit& fit, const std::filesystem::path& out_dir,
                                                std::size_t points = 0);

/// Dispatches on `kind`, reading the matching JSON file.
std::vector<std::filesystem::path> emit_plots(PlotKind kind, const std::filesystem::path& input,
                                              const std::filesystem::path& out_dir);

}  // namespace mescale
