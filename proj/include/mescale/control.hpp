#pragma once

#include <string_view>

#include "mescale/scenario.hpp"

namespace mescale {

struct VoltageControllerConfig {
    double kp = 0.0;
    double v_ref_pu = 0.96;
    double rated_power_kw = 0.0;
};

/// Heat-pump power limit from the measured voltage: full power at or above
/// the reference, proportional curtailment below it, clamped to [0, rated].
double voltage_power_limit(double v_meas_pu, const VoltageControllerConfig& config);

enum class FlexMode { GridOnly, Charge, Discharge };

std::string_view to_string(FlexMode mode);
FlexMode flex_mode_from_string(std::string_view text);

struct FlexHeatThresholds {
    double charge_start_c = 55.0;
    double charge_stop_c = 70.0;
    double discharge_start_c = 70.0;
    double discharge_stop_c = 60.0;
    double surplus_threshold_kw = 5.0;
};

struct FlexHeatState {
    FlexMode mode = FlexMode::GridOnly;
    FlexHeatThresholds thresholds;
    /// Set when charging stopped on a full tank; cleared once the bottom
    /// temperature falls below charge_start_c.
    bool tank_full = false;

    bool operator==(const FlexHeatState&) const = default;
};

/// Throws ValidationError unless the hysteresis bands are well ordered.
void validate(const FlexHeatThresholds& thresholds);

struct FlexHeatInputs {
    double top_c = 0.0;
    double bottom_c = 0.0;
    double pv_surplus_kw = 0.0;
    double power_limit_kw = 0.0;
    double hp_min_op_kw = 0.0;
};

struct FlexHeatOutput {
    FlexHeatState state;
    double hp_setpoint_kw = 0.0;
    bool discharge_enable = false;
};

/// One transition of the flex-heat supervisor followed by the outputs of the
/// resulting mode:
///   GRID_ONLY -> CHARGE     surplus can run the heat pump and the tank is not full
///   GRID_ONLY -> DISCHARGE  top >= discharge_start and no surplus
///   CHARGE    -> GRID_ONLY  bottom >= charge_stop (tank full) or set point below min-op
///   DISCHARGE -> GRID_ONLY  top <= discharge_stop
///   DISCHARGE -> CHARGE     surplus can run the heat pump and the tank is not full
FlexHeatOutput flex_heat_step(const FlexHeatState& state, const FlexHeatInputs& inputs);

VoltageControllerConfig voltage_controller_config(const BenchmarkConfig& config);
FlexHeatThresholds flex_heat_thresholds(const ControlConfig& config);

}  // namespace mescale
