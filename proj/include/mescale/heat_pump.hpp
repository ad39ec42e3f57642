#pragma once

#include "mescale/scenario.hpp"

namespace mescale {

struct HeatPumpOutput {
    double q_th_kw = 0.0;
    /// Zero while the heat pump is off.
    double cop = 0.0;
};

inline constexpr double kMinCop = 1.0;
inline constexpr double kMaxCop = 8.0;

/// Carnot-fraction heat pump. Source and sink temperatures are shifted by the
/// evaporator/condenser pinch offsets before the Carnot ratio is taken; the
/// COP is clamped to [1, 8]. Throws SolverError when `p_el_kw` is neither 0
/// nor inside [min operating point, rated power], or when the shifted
/// condenser temperature does not exceed the evaporator temperature.
HeatPumpOutput heat_pump_step(double p_el_kw, double source_c, double sink_c, const HeatPumpConfig& params);

}  // namespace mescale
