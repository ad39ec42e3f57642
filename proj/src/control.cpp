#include "mescale/control.hpp"

#include <algorithm>
#include <string>

#include "mescale/error.hpp"

namespace mescale {

double voltage_power_limit(double v_meas_pu, const VoltageControllerConfig& config) {
    const double deficit = std::max(0.0, config.v_ref_pu - v_meas_pu);
    const double factor = std::clamp(1.0 - config.kp * deficit, 0.0, 1.0);
    return config.rated_power_kw * factor;
}

std::string_view to_string(FlexMode mode) {
    switch (mode) {
        case FlexMode::GridOnly:
            return "GRID_ONLY";
        case FlexMode::Charge:
            return "CHARGE";
        case FlexMode::Discharge:
            return "DISCHARGE";
    }
    return "?";
}

FlexMode flex_mode_from_string(std::string_view text) {
    if (text == "GRID_ONLY") {
        return FlexMode::GridOnly;
    }
    if (text == "CHARGE") {
        return FlexMode::Charge;
    }
    if (text == "DISCHARGE") {
        return FlexMode::Discharge;
    }
    throw ValidationError("unknown flex-heat mode '" + std::string(text) + "'");
}

void validate(const FlexHeatThresholds& t) {
    if (!(t.charge_start_c < t.charge_stop_c)) {
        throw ValidationError("charge_start_c must be below charge_stop_c");
    }
    if (!(t.discharge_stop_c < t.discharge_start_c)) {
        throw ValidationError("discharge_stop_c must be below discharge_start_c");
    }
    if (t.surplus_threshold_kw < 0.0) {
        throw ValidationError("surplus_threshold_kw must be non-negative");
    }
}

FlexHeatOutput flex_heat_step(const FlexHeatState& state, const FlexHeatInputs& in) {
    const auto& th = state.thresholds;
    FlexHeatState next = state;
    if (next.tank_full && in.bottom_c < th.charge_start_c) {
        next.tank_full = false;
    }

    const double effective = std::min(in.pv_surplus_kw, in.power_limit_kw);
    const bool can_run = effective > 0.0 && effective >= in.hp_min_op_kw;
    const bool can_charge = can_run && !next.tank_full && in.bottom_c < th.charge_stop_c;
    const bool has_surplus = in.pv_surplus_kw > th.surplus_threshold_kw;

    switch (state.mode) {
        case FlexMode::GridOnly:
            if (can_charge) {
                next.mode = FlexMode::Charge;
            } else if (in.top_c >= th.discharge_start_c && !has_surplus) {
                next.mode = FlexMode::Discharge;
            }
            break;
        case FlexMode::Charge:
            if (in.bottom_c >= th.charge_stop_c) {
                next.mode = FlexMode::GridOnly;
                next.tank_full = true;
            } else if (!can_run) {
                next.mode = FlexMode::GridOnly;
            }
            break;
        case FlexMode::Discharge:
            if (in.top_c <= th.discharge_stop_c) {
                next.mode = FlexMode::GridOnly;
            } else if (can_charge) {
                next.mode = FlexMode::Charge;
            }
            break;
    }

    FlexHeatOutput out;
    out.state = next;
    if (next.mode == FlexMode::Charge) {
        out.hp_setpoint_kw = effective;
    } else if (next.mode == FlexMode::Discharge) {
        out.discharge_enable = true;
    }
    return out;
}

VoltageControllerConfig voltage_controller_config(const BenchmarkConfig& config) {
    return {config.control.kp, config.control.v_ref_pu, config.heat_pump.rated_power_kw};
}

FlexHeatThresholds flex_heat_thresholds(const ControlConfig& c) {
    return {c.charge_start_c, c.charge_stop_c, c.discharge_start_c, c.discharge_stop_c, c.surplus_threshold_kw};
}

}  // namespace mescale
