#include "mescale/tank.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mescale/constants.hpp"
#include "mescale/error.hpp"

namespace mescale {

double TankGeometry::volume_m3() const {
    const double r = 0.5 * diameter_m;
    return std::numbers::pi * r * r * height_m;
}

double TankGeometry::layer_mass_kg() const { return kWaterDensity * volume_m3() / layers; }

TankState make_tank(const TankConfig& config) {
    TankState s;
    s.geometry = {config.inner_diameter_m, config.height_m, config.layers};
    s.layer_c.assign(static_cast<std::size_t>(config.layers), config.initial_temperature_c);
    return s;
}

TankParams tank_params(const TankConfig& config) {
    return {config.loss_coefficient_w_per_m2k, config.conductivity_w_per_mk};
}

double stored_energy_kj(const TankState& state) {
    double sum = 0.0;
    for (double t : state.layer_c) {
        sum += t;
    }
    return sum * state.geometry.layer_mass_kg() * kWaterHeatCapacity * 1e-3;
}

void mix_inversions(std::vector<double>& layer_c) {
    struct Block {
        double sum;
        std::size_t count;
        double mean() const { return sum / static_cast<double>(count); }
    };
    std::vector<Block> blocks;
    blocks.reserve(layer_c.size());
    for (double t : layer_c) {
        blocks.push_back({t, 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
            const Block lower = blocks.back();
            blocks.pop_back();
            blocks.back().sum += lower.sum;
            blocks.back().count += lower.count;
        }
    }
    std::size_t i = 0;
    for (const auto& b : blocks) {
        const double m = b.mean();
        for (std::size_t c = 0; c < b.count; ++c) {
            layer_c[i++] = m;
        }
    }
}

TankStepResult tank_step(const TankState& state, const TankFlows& flows, double ambient_c, double dt_s,
                         const TankParams& params) {
    if (!(dt_s > 0.0)) {
        throw ValidationError("tank step needs a positive time step");
    }
    if (flows.charge_mdot_kg_s < 0.0 || flows.discharge_mdot_kg_s < 0.0) {
        throw ValidationError("tank flows must be non-negative");
    }
    const auto& g = state.geometry;
    const std::size_t n = state.layer_c.size();
    if (n == 0 || static_cast<int>(n) != g.layers) {
        throw ValidationError("tank state does not match its geometry");
    }

    constexpr double cp = kWaterHeatCapacity;
    const double layer_mass = g.layer_mass_kg();
    const double layer_capacity = layer_mass * cp;  // J/K
    const double dz = g.height_m / static_cast<double>(n);
    const double cross_section = std::numbers::pi * 0.25 * g.diameter_m * g.diameter_m;
    const double conductance = params.conductivity_w_per_mk * cross_section / dz;  // W/K

    std::vector<double> loss_ua(n, params.loss_coefficient_w_per_m2k * std::numbers::pi * g.diameter_m * dz);
    loss_ua.front() += params.loss_coefficient_w_per_m2k * cross_section;
    loss_ua.back() += params.loss_coefficient_w_per_m2k * cross_section;
    double max_ua = 0.0;
    for (double ua : loss_ua) {
        max_ua = std::max(max_ua, ua);
    }

    const double mc = flows.charge_mdot_kg_s;
    const double md = flows.discharge_mdot_kg_s;
    // Largest explicit step keeping every update a convex combination.
    const double rate = (mc + md) * cp + 2.0 * conductance + max_ua;
    // Count in floating point first: extreme flows would overflow an int.
    const double needed = rate > 0.0 ? std::max(1.0, std::ceil(dt_s * rate / layer_capacity - 1e-12)) : 1.0;
    if (dt_s / needed < 1e-3) {
        throw SolverError("tank sub-step " + std::to_string(dt_s / needed) + " s below 1 ms");
    }
    const int substeps = static_cast<int>(needed);
    const double h = dt_s / substeps;

    TankStepResult result;
    result.state = state;
    result.substeps = substeps;
    auto& t = result.state.layer_c;
    const double e_before = stored_energy_kj(state);

    std::vector<double> next(n);
    double charge_out_sum = 0.0;
    double discharge_out_sum = 0.0;
    double in_j = 0.0;
    double out_j = 0.0;
    double loss_j = 0.0;
    for (int s = 0; s < substeps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const double from_above = i == 0 ? flows.charge_inlet_c : t[i - 1];
            const double from_below = i + 1 == n ? flows.return_c : t[i + 1];
            double q = mc * cp * (from_above - t[i]) + md * cp * (from_below - t[i]);
            if (i > 0) {
                q += conductance * (t[i - 1] - t[i]);
            }
            if (i + 1 < n) {
                q += conductance * (t[i + 1] - t[i]);
            }
            const double loss = loss_ua[i] * (t[i] - ambient_c);
            q -= loss;
            loss_j += loss * h;
            next[i] = t[i] + q * h / layer_capacity;
        }
        in_j += (mc * flows.charge_inlet_c + md * flows.return_c) * cp * h;
        out_j += (mc * t[n - 1] + md * t[0]) * cp * h;
        charge_out_sum += t[n - 1];
        discharge_out_sum += t[0];
        t.swap(next);
        mix_inversions(t);
    }

    result.energy.in_kj = in_j * 1e-3;
    result.energy.out_kj = out_j * 1e-3;
    result.energy.loss_kj = loss_j * 1e-3;
    result.energy.stored_delta_kj = stored_energy_kj(result.state) - e_before;
    if (mc > 0.0) {
        result.charge_outlet_c = charge_out_sum / substeps;
    }
    if (md > 0.0) {
        result.discharge_outlet_c = discharge_out_sum / substeps;
    }
    return result;
}

}  // namespace mescale
