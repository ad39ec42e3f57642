#include "mescale/district_heating.hpp"

#include <algorithm>
#include <cmath>

#include "mescale/error.hpp"

namespace mescale {

double pipe_outlet_temperature(double inlet_c, double mdot_kg_s, double length_m, double loss_w_per_mk,
                               double ground_c, double cp) {
    if (mdot_kg_s <= 0.0) {
        return ground_c;
    }
    return ground_c + (inlet_c - ground_c) * std::exp(-loss_w_per_mk * length_m / (mdot_kg_s * cp));
}

std::array<double, 2> consumer_mass_flows(const ThermalConfig& config, const std::array<double, 2>& demand_kw) {
    const double dt_nominal = config.supply_temperature_c - config.return_temperature_c;
    std::array<double, 2> out{};
    for (std::size_t i = 0; i < 2; ++i) {
        const double needed = std::max(0.0, demand_kw[i]) * 1e3 / (kWaterHeatCapacity * dt_nominal);
        out[i] = std::max(needed, config.min_circulation_kg_s);
    }
    return out;
}

ThermalState solve_district_heating(const ThermalConfig& config, const DistrictHeatingInputs& in) {
    if (in.tank_mdot_kg_s < 0.0) {
        throw ValidationError("tank mass flow must be non-negative");
    }
    constexpr double cp = kWaterHeatCapacity;
    const double ts = config.supply_temperature_c;
    const double tr = config.return_temperature_c;
    const double tg = config.ground_temperature_c;
    const double u = config.pipe_loss_w_per_mk;
    const auto& len = config.pipe_length_km;

    ThermalState s;
    s.consumer_mdot_kg_s = consumer_mass_flows(config, in.demand_kw);
    const double m1 = s.consumer_mdot_kg_s[0];
    const double m2 = s.consumer_mdot_kg_s[1];
    const double m_tank = std::min(in.tank_mdot_kg_s, m1 + m2);
    const double m_ext = m1 + m2 - m_tank;
    s.pipe_mdot_kg_s = {m_ext, m2, m_ext};

    const double t_pipe0_out = pipe_outlet_temperature(ts, m_ext, len[0] * 1e3, u, tg);
    s.pipe_loss_kw[0] = m_ext * cp * (ts - t_pipe0_out) * 1e-3;

    const double m_a = m_ext + m_tank;
    s.node_a_c = m_a > 0.0 ? (m_ext * t_pipe0_out + m_tank * in.tank_supply_c) / m_a : tg;

    s.node_b_c = pipe_outlet_temperature(s.node_a_c, m2, len[1] * 1e3, u, tg);
    s.pipe_loss_kw[1] = m2 * cp * (s.node_a_c - s.node_b_c) * 1e-3;
    s.critical_c = std::min(s.node_a_c, s.node_b_c);

    s.delivered_kw[0] = m1 * cp * (s.node_a_c - tr) * 1e-3;
    s.delivered_kw[1] = m2 * cp * (s.node_b_c - tr) * 1e-3;

    const double t_return_at_grid = pipe_outlet_temperature(tr, m_ext, len[2] * 1e3, u, tg);
    s.pipe_loss_kw[2] = m_ext * cp * (tr - t_return_at_grid) * 1e-3;

    s.external_heat_kw = m_ext * cp * (ts - t_return_at_grid) * 1e-3;
    s.tank_heat_kw = m_tank * cp * (in.tank_supply_c - tr) * 1e-3;
    return s;
}

}  // namespace mescale
