#include <doctest.h>

#include <cmath>

#include "mescale/district_heating.hpp"
#include "mescale/error.hpp"
#include "mescale/heat_pump.hpp"
#include "oracles.hpp"

using namespace mescale;
using doctest::Approx;

TEST_CASE("lossless pipe keeps the inlet temperature") {
    CHECK(pipe_outlet_temperature(75, 1.0, 500, 0.0, 10) == 75.0);
}

TEST_CASE("pipe outlet for the reference case") {
    const double t = pipe_outlet_temperature(75, 1.0, 500, 0.4, 10, 4186);
    CHECK(t == Approx(71.97).epsilon(1e-4));
    CHECK(t == Approx(oracle::pipe_outlet_marching(75, 1.0, 500, 0.4, 10, 4186, 20000)).epsilon(1e-9));
}

TEST_CASE("stagnant pipe settles to ground temperature") {
    CHECK(pipe_outlet_temperature(75, 0.0, 500, 0.4, 10) == 10.0);
}

TEST_CASE("pipe outlet agrees with the marching oracle over random inputs") {
    oracle::SplitMix rng(3);
    for (int i = 0; i < 50; ++i) {
        const double tin = rng.uniform(40, 90);
        const double m = rng.uniform(0.05, 5);
        const double l = rng.uniform(10, 2000);
        const double u = rng.uniform(0, 2);
        const double tg = rng.uniform(0, 15);
        CHECK(pipe_outlet_temperature(tin, m, l, u, tg) ==
              Approx(oracle::pipe_outlet_marching(tin, m, l, u, tg, 4186, 20000)).epsilon(1e-8));
    }
}

TEST_CASE("heat pump reference operating point") {
    HeatPumpConfig hp;
    hp.carnot_efficiency = 0.45;
    hp.pinch_evaporator_k = 0.0;
    hp.pinch_condenser_k = 0.0;
    const auto out = heat_pump_step(100, 5, 65, hp);
    CHECK(out.cop == Approx(2.536).epsilon(1e-3));
    CHECK(out.cop == Approx(oracle::heat_pump_cop(0.45, 5, 65)).epsilon(1e-12));
    CHECK(out.q_th_kw == Approx(253.6).epsilon(1e-3));
}

TEST_CASE("pinch offsets widen the lift") {
    HeatPumpConfig hp;  // 5 K on both sides
    const auto out = heat_pump_step(50, 10, 60, hp);
    CHECK(out.cop == Approx(oracle::heat_pump_cop(hp.carnot_efficiency, 5, 65)).epsilon(1e-12));
}

TEST_CASE("heat pump off and infeasible points") {
    HeatPumpConfig hp;
    const auto off = heat_pump_step(0, 10, 60, hp);
    CHECK(off.q_th_kw == 0.0);
    CHECK(off.cop == 0.0);
    hp.pinch_evaporator_k = 0;
    hp.pinch_condenser_k = 0;
    CHECK_THROWS_AS(heat_pump_step(50, 40, 40, hp), SolverError);
    CHECK_THROWS_AS(heat_pump_step(hp.min_operating_kw / 2, 10, 60, hp), SolverError);
    CHECK_THROWS_AS(heat_pump_step(hp.rated_power_kw + 1, 10, 60, hp), SolverError);
}

TEST_CASE("COP is clamped to [1, 8]") {
    HeatPumpConfig hp;
    hp.pinch_evaporator_k = 0;
    hp.pinch_condenser_k = 0;
    hp.carnot_efficiency = 1.0;
    CHECK(heat_pump_step(50, 59, 60, hp).cop == 8.0);
    hp.carnot_efficiency = 0.01;
    CHECK(heat_pump_step(50, 0, 60, hp).cop == 1.0);
}

TEST_CASE("district heating: external grid alone covers demand plus losses") {
    const ThermalConfig cfg;
    DistrictHeatingInputs in;
    in.demand_kw = {150, 80};
    const auto s = solve_district_heating(cfg, in);
    CHECK(s.tank_heat_kw == 0.0);
    const double balance = s.external_heat_kw - s.delivered_total_kw() - s.pipe_losses_kw();
    CHECK(std::abs(balance) < 1e-6 * 230);
    CHECK(s.critical_c == std::min(s.node_a_c, s.node_b_c));
    CHECK(s.node_b_c < s.node_a_c);
    CHECK(s.node_a_c < cfg.supply_temperature_c);
    for (double m : s.pipe_mdot_kg_s) {
        CHECK(m >= 0.0);
    }
}

TEST_CASE("district heating: tank injection reduces the external draw and keeps the balance") {
    const ThermalConfig cfg;
    DistrictHeatingInputs in;
    in.demand_kw = {150, 80};
    const auto grid_only = solve_district_heating(cfg, in);
    in.tank_mdot_kg_s = 0.8;
    in.tank_supply_c = 72;
    const auto with_tank = solve_district_heating(cfg, in);
    CHECK(with_tank.external_heat_kw < grid_only.external_heat_kw);
    CHECK(with_tank.tank_heat_kw > 0.0);
    const double balance = with_tank.external_heat_kw + with_tank.tank_heat_kw - with_tank.delivered_total_kw() -
                           with_tank.pipe_losses_kw();
    CHECK(std::abs(balance) < 1e-6 * 230);
}

TEST_CASE("district heating: tank flow capped at consumer flow") {
    const ThermalConfig cfg;
    DistrictHeatingInputs in;
    in.demand_kw = {30, 20};
    in.tank_mdot_kg_s = 100;
    in.tank_supply_c = 75;
    const auto s = solve_district_heating(cfg, in);
    CHECK(s.pipe_mdot_kg_s[0] == Approx(0.0));
    CHECK(s.external_heat_kw == Approx(0.0).epsilon(1e-9));
}

TEST_CASE("consumer flows follow the nominal split with a floor") {
    const ThermalConfig cfg;
    const auto m = consumer_mass_flows(cfg, {125.58, 0.0});
    CHECK(m[0] == Approx(125.58e3 / (4186 * 30)));
    CHECK(m[1] == cfg.min_circulation_kg_s);
}

TEST_CASE("random thermal balances close") {
    const ThermalConfig cfg;
    oracle::SplitMix rng(11);
    for (int i = 0; i < 200; ++i) {
        DistrictHeatingInputs in;
        in.demand_kw = {rng.uniform(0, 300), rng.uniform(0, 200)};
        in.tank_mdot_kg_s = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0, 3);
        in.tank_supply_c = rng.uniform(50, 80);
        const auto s = solve_district_heating(cfg, in);
        const double demand = in.demand_kw[0] + in.demand_kw[1];
        const double residual =
            s.external_heat_kw + s.tank_heat_kw - s.delivered_total_kw() - s.pipe_losses_kw();
        CHECK(std::abs(residual) <= 1e-6 * std::max(demand, 1.0));
    }
}
