#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mescale/control.hpp"
#include "mescale/power_flow.hpp"
#include "mescale/profiles.hpp"
#include "mescale/scenario.hpp"
#include "mescale/tank.hpp"

namespace mescale {

struct StepRecord {
    std::size_t step = 0;
    double v1_pu = 0.0;
    double v2_pu = 0.0;
    double line0_loading_pct = 0.0;
    double hp_p_el_kw = 0.0;
    double hp_q_th_kw = 0.0;
    double cop = 0.0;
    double tank_top_c = 0.0;
    double tank_bottom_c = 0.0;
    double t_critical_c = 0.0;
    double heat_ext_kw = 0.0;
    double pv_kw = 0.0;
    double export_kw = 0.0;
    FlexMode mode = FlexMode::GridOnly;

    // Balance terms kept for conservation checks.
    double power_limit_kw = 0.0;
    double slack_import_kw = 0.0;
    double consumer_load_kw = 0.0;
    double line_losses_kw = 0.0;
    double heat_delivered_kw = 0.0;
    double pipe_losses_kw = 0.0;
    double tank_heat_kw = 0.0;
    TankEnergy tank_energy;

    bool operator==(const StepRecord&) const = default;
};

struct Trajectory {
    double step_s = 0.0;
    std::vector<StepRecord> steps;

    bool operator==(const Trajectory&) const = default;
};

RadialFeeder make_feeder(const ElectricalConfig& config);

/// Quasi-static run over the configured horizon. Per step: read profiles,
/// controllers act on the previous step's bus-1 voltage and PV surplus and
/// the current tank temperatures, heat pump and tank update, district
/// heating solve, then the electrical power flow. Solver failures are
/// rethrown as SolverError prefixed with the step index.
Trajectory simulate(const BenchmarkConfig& config, const Profiles& profiles);
Trajectory simulate(const BenchmarkConfig& config);

/// Columns: step,V1_pu,V2_pu,line0_loading_pct,hp_p_el_kw,hp_q_th_kw,cop,
/// tank_top_c,tank_bottom_c,t_critical_c,heat_ext_kw,pv_kw,export_kw,mode
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);
Trajectory read_trajectory_csv(std::istream& in, double step_s);

}  // namespace mescale
