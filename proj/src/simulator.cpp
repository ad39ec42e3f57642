#include "mescale/simulator.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "mescale/constants.hpp"
#include "mescale/district_heating.hpp"
#include "mescale/error.hpp"
#include "mescale/heat_pump.hpp"
#include "mescale/text.hpp"

namespace mescale {

namespace {

constexpr const char* kTrajectoryHeader =
    "step,V1_pu,V2_pu,line0_loading_pct,hp_p_el_kw,hp_q_th_kw,cop,tank_top_c,tank_bottom_c,t_critical_c,"
    "heat_ext_kw,pv_kw,export_kw,mode";

// Minimum lift across the condenser for the heat pump to push water into the tank.
constexpr double kMinChargeLiftK = 1.0;

}  // namespace

RadialFeeder make_feeder(const ElectricalConfig& c) {
    RadialFeeder feeder;
    feeder.nominal_voltage_v = c.nominal_voltage_v;
    feeder.slack_voltage_pu = c.slack_voltage_pu;
    for (double len : c.line_length_km) {
        feeder.lines.push_back({c.r_ohm_per_km * len, c.x_ohm_per_km * len, c.line_rating_kva});
    }
    return feeder;
}

Trajectory simulate(const BenchmarkConfig& config) { return simulate(config, resolve_profiles(config)); }

Trajectory simulate(const BenchmarkConfig& config, const Profiles& profiles) {
    validate(config);
    validate(profiles);
    const std::size_t steps = config.step_count();
    if (profiles.size() < steps) {
        throw ValidationError("profiles cover " + std::to_string(profiles.size()) + " steps, horizon needs " +
                              std::to_string(steps));
    }

    constexpr double cp = kWaterHeatCapacity;
    const RadialFeeder feeder = make_feeder(config.electrical);
    const auto& el = config.electrical;
    const auto& th = config.thermal;
    const auto& hp_cfg = config.heat_pump;
    const auto& tank_cfg = config.tank;
    const auto& sc = config.profiles;
    const double tan_phi = std::tan(std::acos(el.load_power_factor));
    const VoltageControllerConfig vc = voltage_controller_config(config);
    const TankParams tparams = tank_params(tank_cfg);

    FlexHeatState flex;
    flex.thresholds = flex_heat_thresholds(config.control);
    validate(flex.thresholds);
    TankState tank = make_tank(tank_cfg);

    double prev_v1 = el.slack_voltage_pu;
    double prev_surplus = 0.0;

    Trajectory traj;
    traj.step_s = config.step_s;
    traj.steps.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        try {
            const double pv1 = profiles.pv_normalized[t] * el.pv_peak_kw[0] * sc.pv_scaling;
            const double pv2 = profiles.pv_normalized[t] * el.pv_peak_kw[1] * sc.pv_scaling;
            const double load1 = profiles.electrical_load_kw[0][t] * sc.load_scaling;
            const double load2 = profiles.electrical_load_kw[1][t] * sc.load_scaling;
            const std::array<double, 2> heat{profiles.heat_load_kw[0][t] * sc.heat_scaling,
                                             profiles.heat_load_kw[1][t] * sc.heat_scaling};

            const double p_limit = config.control.voltage_control_enabled ? voltage_power_limit(prev_v1, vc)
                                                                          : hp_cfg.rated_power_kw;
            FlexHeatOutput ctl;
            ctl.state = flex;
            if (config.control.flex_heat_enabled) {
                ctl = flex_heat_step(
                    flex, {tank.top_c(), tank.bottom_c(), prev_surplus, p_limit, hp_cfg.min_operating_kw});
            }

            double p_el = ctl.hp_setpoint_kw;
            const double lift = tank_cfg.charge_temperature_c - tank.bottom_c();
            if (lift < kMinChargeLiftK) {
                p_el = 0.0;
            }
            const double sink_c = 0.5 * (tank.bottom_c() + tank_cfg.charge_temperature_c);
            const HeatPumpOutput hp = heat_pump_step(p_el, hp_cfg.source_temperature_c, sink_c, hp_cfg);
            const double m_charge = p_el > 0.0 ? hp.q_th_kw * 1e3 / (cp * lift) : 0.0;

            double m_discharge = 0.0;
            if (ctl.discharge_enable && tank.top_c() > th.return_temperature_c + 1.0) {
                const auto flows = consumer_mass_flows(th, heat);
                const double target_kw = std::min(heat[0] + heat[1], tank_cfg.max_discharge_kw);
                m_discharge = std::min(target_kw * 1e3 / (cp * (tank.top_c() - th.return_temperature_c)),
                                       flows[0] + flows[1]);
            }

            const TankStepResult ts =
                tank_step(tank, {m_charge, tank_cfg.charge_temperature_c, m_discharge, th.return_temperature_c},
                          th.ground_temperature_c, config.step_s, tparams);

            const ThermalState dh = solve_district_heating(th, {heat, m_discharge, ts.discharge_outlet_c});

            const std::array<std::complex<double>, 2> injections{
                std::complex<double>(pv1 - load1, -load1 * tan_phi),
                std::complex<double>(pv2 - load2 - p_el, -load2 * tan_phi)};
            const ElectricalState es = solve_radial_power_flow(feeder, injections);

            StepRecord r;
            r.step = t;
            r.v1_pu = std::abs(es.voltage_pu[1]);
            r.v2_pu = std::abs(es.voltage_pu[2]);
            r.line0_loading_pct = es.line_flow_kva[0] / el.line_rating_kva * 100.0;
            r.hp_p_el_kw = p_el;
            r.hp_q_th_kw = hp.q_th_kw;
            r.cop = hp.cop;
            r.tank_top_c = ts.state.top_c();
            r.tank_bottom_c = ts.state.bottom_c();
            r.t_critical_c = dh.critical_c;
            r.heat_ext_kw = dh.external_heat_kw;
            r.pv_kw = pv1 + pv2;
            r.slack_import_kw = es.slack_import_kva.real();
            r.export_kw = std::max(0.0, -r.slack_import_kw);
            r.mode = ctl.state.mode;
            r.power_limit_kw = p_limit;
            r.consumer_load_kw = load1 + load2;
            r.line_losses_kw = es.losses_kw;
            r.heat_delivered_kw = dh.delivered_total_kw();
            r.pipe_losses_kw = dh.pipe_losses_kw();
            r.tank_heat_kw = dh.tank_heat_kw;
            r.tank_energy = ts.energy;
            traj.steps.push_back(r);

            prev_v1 = r.v1_pu;
            prev_surplus = std::max(0.0, pv1 + pv2 - load1 - load2);
            flex = ctl.state;
            tank = ts.state;
        } catch (const SolverError& e) {
            throw SolverError("step " + std::to_string(t) + ": " + e.what());
        }
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << kTrajectoryHeader << '\n';
    for (const auto& r : traj.steps) {
        out << r.step << ',' << format_double(r.v1_pu) << ',' << format_double(r.v2_pu) << ','
            << format_double(r.line0_loading_pct) << ',' << format_double(r.hp_p_el_kw) << ','
            << format_double(r.hp_q_th_kw) << ',' << format_double(r.cop) << ',' << format_double(r.tank_top_c)
            << ',' << format_double(r.tank_bottom_c) << ',' << format_double(r.t_critical_c) << ','
            << format_double(r.heat_ext_kw) << ',' << format_double(r.pv_kw) << ',' << format_double(r.export_kw)
            << ',' << to_string(r.mode) << '\n';
    }
}

void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    write_trajectory_csv(trajectory, out);
}

Trajectory read_trajectory_csv(std::istream& in, double step_s) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kTrajectoryHeader) {
        throw ParseError("trajectory csv: unexpected header", 1);
    }
    Trajectory traj;
    traj.step_s = step_s;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto c = split(trim(line), ',');
        if (c.size() != 14) {
            throw ParseError("trajectory csv line " + std::to_string(line_no) + ": expected 14 columns", line_no);
        }
        StepRecord r;
        r.step = static_cast<std::size_t>(parse_double(c[0]));
        r.v1_pu = parse_double(c[1]);
        r.v2_pu = parse_double(c[2]);
        r.line0_loading_pct = parse_double(c[3]);
        r.hp_p_el_kw = parse_double(c[4]);
        r.hp_q_th_kw = parse_double(c[5]);
        r.cop = parse_double(c[6]);
        r.tank_top_c = parse_double(c[7]);
        r.tank_bottom_c = parse_double(c[8]);
        r.t_critical_c = parse_double(c[9]);
        r.heat_ext_kw = parse_double(c[10]);
        r.pv_kw = parse_double(c[11]);
        r.export_kw = parse_double(c[12]);
        r.mode = flex_mode_from_string(c[13]);
        traj.steps.push_back(r);
    }
    return traj;
}

}  // namespace mescale
