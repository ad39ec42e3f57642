#include "mescale/metrics.hpp"

#include <algorithm>
#include <limits>

#include "mescale/error.hpp"

namespace mescale {

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"max_v2_pu",     "max_line0_pct", "avg_cop",
                                                   "self_cons_mwh", "self_cons_pct", "min_tsupply_c",
                                                   "heat_import_mwh"};
    return names;
}

const std::vector<std::string>& primary_metric_names() {
    static const std::vector<std::string> names = {"max_v2_pu",     "max_line0_pct", "avg_cop",
                                                   "self_cons_mwh", "min_tsupply_c", "heat_import_mwh"};
    return names;
}

double metric_value(const MetricSet& m, std::string_view name) {
    if (name == "max_v2_pu") return m.max_voltage_bus2_pu;
    if (name == "max_line0_pct") return m.max_line_loading_line0_pct;
    if (name == "avg_cop") return m.hp_average_cop;
    if (name == "self_cons_mwh") return m.self_consumption_mwh;
    if (name == "self_cons_pct") return m.self_consumption_pct;
    if (name == "min_tsupply_c") return m.min_supply_temperature_c;
    if (name == "heat_import_mwh") return m.imported_heat_mwh;
    throw ValidationError("unknown metric '" + std::string(name) + "'");
}

std::vector<double> metric_values(const MetricSet& m) {
    std::vector<double> out;
    for (const auto& name : metric_names()) {
        out.push_back(metric_value(m, name));
    }
    return out;
}

MetricSet metrics_from_values(const std::vector<double>& v) {
    if (v.size() != metric_names().size()) {
        throw ValidationError("metric vector has wrong length");
    }
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

MetricSet compute_metrics(const Trajectory& trajectory) { return compute_metrics(trajectory, trajectory.step_s); }

MetricSet compute_metrics(const Trajectory& trajectory, double step_s) {
    if (trajectory.steps.empty()) {
        throw ValidationError("cannot compute metrics of an empty trajectory");
    }
    if (!(step_s > 0.0)) {
        throw ValidationError("metric step must be positive");
    }
    const double hours = step_s / 3600.0;

    MetricSet m;
    m.max_voltage_bus2_pu = -std::numeric_limits<double>::infinity();
    m.min_supply_temperature_c = std::numeric_limits<double>::infinity();
    double q_sum = 0.0;
    double p_sum = 0.0;
    double pv_kwh = 0.0;
    double self_kwh = 0.0;
    double heat_kwh = 0.0;
    for (const auto& r : trajectory.steps) {
        m.max_voltage_bus2_pu = std::max(m.max_voltage_bus2_pu, r.v2_pu);
        m.max_line_loading_line0_pct = std::max(m.max_line_loading_line0_pct, r.line0_loading_pct);
        if (r.hp_p_el_kw > 0.0) {
            p_sum += r.hp_p_el_kw;
            q_sum += r.hp_q_th_kw;
        }
        pv_kwh += r.pv_kw * hours;
        self_kwh += (r.pv_kw - r.export_kw) * hours;
        m.min_supply_temperature_c = std::min(m.min_supply_temperature_c, r.t_critical_c);
        heat_kwh += std::max(0.0, r.heat_ext_kw) * hours;
    }
    m.hp_average_cop = p_sum > 0.0 ? q_sum / p_sum : 0.0;
    m.self_consumption_mwh = self_kwh * 1e-3;
    m.self_consumption_pct = pv_kwh > 0.0 ? std::clamp(self_kwh / pv_kwh * 100.0, 0.0, 100.0) : 100.0;
    m.imported_heat_mwh = heat_kwh * 1e-3;
    return m;
}

nlohmann::json to_json(const MetricSet& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& name : metric_names()) {
        j[name] = metric_value(m, name);
    }
    return j;
}

}  // namespace mescale
