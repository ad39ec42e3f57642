#include "mescale/heat_pump.hpp"

#include <algorithm>
#include <string>

#include "mescale/constants.hpp"
#include "mescale/error.hpp"

namespace mescale {

HeatPumpOutput heat_pump_step(double p_el_kw, double source_c, double sink_c, const HeatPumpConfig& params) {
    if (p_el_kw == 0.0) {
        return {};
    }
    constexpr double slack = 1e-9;
    if (p_el_kw < params.min_operating_kw - slack || p_el_kw > params.rated_power_kw + slack) {
        throw SolverError("heat pump set point " + std::to_string(p_el_kw) + " kW outside [" +
                          std::to_string(params.min_operating_kw) + ", " + std::to_string(params.rated_power_kw) +
                          "] kW");
    }
    const double t_evap_k = source_c - params.pinch_evaporator_k + kCelsiusToKelvin;
    const double t_cond_k = sink_c + params.pinch_condenser_k + kCelsiusToKelvin;
    if (t_cond_k <= t_evap_k) {
        throw SolverError("heat pump infeasible: condenser temperature does not exceed evaporator temperature");
    }
    const double carnot = t_cond_k / (t_cond_k - t_evap_k);
    const double cop = std::clamp(params.carnot_efficiency * carnot, kMinCop, kMaxCop);
    return {cop * p_el_kw, cop};
}

}  // namespace mescale
