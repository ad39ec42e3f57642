#pragma once

#include <array>

#include "mescale/constants.hpp"
#include "mescale/scenario.hpp"

namespace mescale {

/// Exponential decay of the water temperature towards ground along a pipe.
/// A stagnant pipe (mdot = 0) returns the ground temperature.
double pipe_outlet_temperature(double inlet_c, double mdot_kg_s, double length_m, double loss_w_per_mk,
                               double ground_c, double cp = kWaterHeatCapacity);

/// Branch layout: external grid -> pipe 0 -> node A (tank injection,
/// consumer 1) -> pipe 1 -> node B (consumer 2). Pipe 2 is the return line
/// back to the external grid and only contributes losses.
struct DistrictHeatingInputs {
    std::array<double, 2> demand_kw{0.0, 0.0};
    /// Hot water handed over by the tank at node A.
    double tank_mdot_kg_s = 0.0;
    double tank_supply_c = 0.0;
};

struct ThermalState {
    double node_a_c = 0.0;
    double node_b_c = 0.0;
    /// Lowest consumer supply temperature.
    double critical_c = 0.0;
    std::array<double, 3> pipe_mdot_kg_s{};
    std::array<double, 3> pipe_loss_kw{};
    std::array<double, 2> consumer_mdot_kg_s{};
    /// Heat actually delivered to each consumer at the fixed return temperature.
    std::array<double, 2> delivered_kw{};
    /// Heat drawn from the external grid (supply minus cooled return).
    double external_heat_kw = 0.0;
    /// Heat handed over by the tank relative to the network return.
    double tank_heat_kw = 0.0;

    double pipe_losses_kw() const { return pipe_loss_kw[0] + pipe_loss_kw[1] + pipe_loss_kw[2]; }
    double delivered_total_kw() const { return delivered_kw[0] + delivered_kw[1]; }
};

/// Consumer mass flows from demand at the nominal supply/return split,
/// floored at the minimum circulation.
std::array<double, 2> consumer_mass_flows(const ThermalConfig& config, const std::array<double, 2>& demand_kw);

/// Quasi-static solve of the branch. The tank flow is capped at the total
/// consumer flow so the external grid never runs backwards.
ThermalState solve_district_heating(const ThermalConfig& config, const DistrictHeatingInputs& inputs);

}  // namespace mescale
