#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mescale/simulator.hpp"

namespace mescale {

/// Target metrics of one run. Energies are in MWh.
struct MetricSet {
    double max_voltage_bus2_pu = 0.0;
    double max_line_loading_line0_pct = 0.0;
    double hp_average_cop = 0.0;
    double self_consumption_mwh = 0.0;
    double self_consumption_pct = 0.0;
    double min_supply_temperature_c = 0.0;
    double imported_heat_mwh = 0.0;

    bool operator==(const MetricSet&) const = default;
};

/// Column names used in results CSV and analysis outputs, in CSV order:
/// max_v2_pu, max_line0_pct, avg_cop, self_cons_mwh, self_cons_pct,
/// min_tsupply_c, heat_import_mwh.
const std::vector<std::string>& metric_names();

/// The six headline metrics (the percent variant of self-consumption is
/// excluded); used for rank aggregation.
const std::vector<std::string>& primary_metric_names();

double metric_value(const MetricSet& metrics, std::string_view name);
std::vector<double> metric_values(const MetricSet& metrics);
MetricSet metrics_from_values(const std::vector<double>& values);

/// Throws ValidationError on an empty trajectory or non-positive step.
MetricSet compute_metrics(const Trajectory& trajectory, double step_s);
MetricSet compute_metrics(const Trajectory& trajectory);

nlohmann::json to_json(const MetricSet& metrics);

}  // namespace mescale
