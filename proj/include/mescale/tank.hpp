#pragma once

#include <cmath>
#include <vector>

#include "mescale/scenario.hpp"

namespace mescale {

struct TankGeometry {
    double diameter_m = 0.0;
    double height_m = 0.0;
    int layers = 0;

    double volume_m3() const;
    double layer_mass_kg() const;
};

/// Layer temperatures, index 0 is the top of the tank.
struct TankState {
    std::vector<double> layer_c;
    TankGeometry geometry;

    double top_c() const { return layer_c.front(); }
    double bottom_c() const { return layer_c.back(); }
};

struct TankParams {
    double loss_coefficient_w_per_m2k = 0.0;
    double conductivity_w_per_mk = 0.0;
};

/// Charging enters hot at the top and leaves at the bottom; discharging draws
/// from the top and refills the bottom at `return_c`.
struct TankFlows {
    double charge_mdot_kg_s = 0.0;
    double charge_inlet_c = 0.0;
    double discharge_mdot_kg_s = 0.0;
    double return_c = 0.0;
};

/// Energy bookkeeping for one step, kJ, enthalpy relative to 0 degC.
struct TankEnergy {
    double in_kj = 0.0;
    double out_kj = 0.0;
    double loss_kj = 0.0;
    double stored_delta_kj = 0.0;

    double residual_kj() const { return stored_delta_kj - (in_kj - out_kj - loss_kj); }
    double throughput_kj() const { return in_kj + out_kj + std::abs(loss_kj); }

    bool operator==(const TankEnergy&) const = default;
};

struct TankStepResult {
    TankState state;
    TankEnergy energy;
    /// Mass-weighted outlet temperatures over the step (0 when the flow is 0).
    double charge_outlet_c = 0.0;
    double discharge_outlet_c = 0.0;
    int substeps = 0;
};

TankState make_tank(const TankConfig& config);
TankParams tank_params(const TankConfig& config);

double stored_energy_kj(const TankState& state);

/// One explicit step of the 1-D stratified model: upwind plug flow, layer
/// conduction and ambient losses with sub-steps sized for stability, followed
/// by inversion mixing after every sub-step. Throws SolverError when the
/// required sub-step would drop below 1 ms.
TankStepResult tank_step(const TankState& state, const TankFlows& flows, double ambient_c, double dt_s,
                         const TankParams& params);

/// Restores a non-increasing top-to-bottom profile by merging inverted
/// neighbours into their mean (equal layer masses, energy preserving).
void mix_inversions(std::vector<double>& layer_c);

}  // namespace mescale
