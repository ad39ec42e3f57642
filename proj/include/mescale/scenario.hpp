#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mescale {

enum class FactorKind { Design, Scenario };

std::string_view to_string(FactorKind kind);
FactorKind factor_kind_from_string(std::string_view text);

/// A named scalar knob varied by an experiment design.
struct Factor {
    std::string name;
    FactorKind kind = FactorKind::Scenario;
    double min = 0.0;
    double max = 0.0;
    double base = 0.0;
    std::string unit;

    bool operator==(const Factor&) const = default;
};

/// One run-ready assignment of values to factors.
struct Recipe {
    std::uint64_t run_id = 0;
    std::map<std::string, double> assignments;
    std::string design_tag;

    bool operator==(const Recipe&) const = default;
};

// ---------------------------------------------------------------------------
// Benchmark configuration
// ---------------------------------------------------------------------------

struct ElectricalConfig {
    double nominal_voltage_v = 400.0;
    double slack_voltage_pu = 1.0;
    std::array<double, 2> line_length_km{0.3, 0.3};
    double r_ohm_per_km = 0.208;
    double x_ohm_per_km = 0.080;
    double line_rating_kva = 250.0;
    /// Peak PV output at bus 1 and bus 2 before scaling.
    std::array<double, 2> pv_peak_kw{150.0, 50.0};
    double load_power_factor = 0.97;

    bool operator==(const ElectricalConfig&) const = default;
};

struct ThermalConfig {
    std::array<double, 3> pipe_length_km{0.5, 0.5, 0.5};
    double pipe_loss_w_per_mk = 0.4;
    double ground_temperature_c = 10.0;
    double supply_temperature_c = 75.0;
    double return_temperature_c = 45.0;
    /// Floor on each consumer's mass flow (bypass circulation).
    double min_circulation_kg_s = 0.2;

    bool operator==(const ThermalConfig&) const = default;
};

struct HeatPumpConfig {
    double rated_power_kw = 100.0;
    double min_operating_kw = 20.0;
    double carnot_efficiency = 0.45;
    double pinch_evaporator_k = 5.0;
    double pinch_condenser_k = 5.0;
    double source_temperature_c = 10.0;

    bool operator==(const HeatPumpConfig&) const = default;
};

struct TankConfig {
    double inner_diameter_m = 4.0;
    double height_m = 7.9;
    int layers = 10;
    double loss_coefficient_w_per_m2k = 0.5;
    double conductivity_w_per_mk = 0.6;
    double initial_temperature_c = 55.0;
    /// Temperature at which the heat pump feeds the top of the tank.
    double charge_temperature_c = 75.0;
    /// Upper bound on the heat the tank may hand to the network.
    double max_discharge_kw = 200.0;

    double volume_m3() const;

    bool operator==(const TankConfig&) const = default;
};

struct ControlConfig {
    bool voltage_control_enabled = true;
    bool flex_heat_enabled = true;
    double kp = 20.0;
    double v_ref_pu = 0.96;
    double charge_start_c = 55.0;
    double charge_stop_c = 70.0;
    double discharge_start_c = 70.0;
    double discharge_stop_c = 60.0;
    double surplus_threshold_kw = 5.0;

    bool operator==(const ControlConfig&) const = default;
};

enum class ProfileSource { Synthetic, Csv };

struct ProfileConfig {
    ProfileSource source = ProfileSource::Synthetic;
    /// CSV path, resolved relative to the config file when loaded from disk.
    std::string path;
    double pv_scaling = 1.0;
    double load_scaling = 1.0;
    double heat_scaling = 1.0;

    bool operator==(const ProfileConfig&) const = default;
};

struct BenchmarkConfig {
    ElectricalConfig electrical;
    ThermalConfig thermal;
    HeatPumpConfig heat_pump;
    TankConfig tank;
    ControlConfig control;
    ProfileConfig profiles;
    double horizon_s = 7.0 * 86400.0;
    double step_s = 900.0;
    std::uint64_t seed = 42;

    std::size_t step_count() const;

    bool operator==(const BenchmarkConfig&) const = default;
};

/// Throws ValidationError describing the first violated invariant.
void validate(const BenchmarkConfig& config);
void validate(const Factor& factor);
void validate_factor_set(const std::vector<Factor>& factors);

BenchmarkConfig default_config();

/// Factor catalog with engineering default ranges (diameter range from the
/// tank-scaling study, the rest are engineering defaults).
std::vector<Factor> default_factors();

/// Names understood by apply_recipe.
const std::vector<std::string>& factor_catalog();

/// Returns a copy of `config` with every assignment of `recipe` bound
/// through the factor catalog. Throws ValidationError on unknown names.
BenchmarkConfig apply_recipe(const BenchmarkConfig& config, const Recipe& recipe);

// JSON exchange formats --------------------------------------------------

nlohmann::json to_json(const Factor& factor);
Factor factor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Recipe& recipe);
Recipe recipe_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchmarkConfig& config);
BenchmarkConfig config_from_json(const nlohmann::json& j);

std::vector<Factor> load_factors(const std::filesystem::path& path);
void save_factors(const std::vector<Factor>& factors, const std::filesystem::path& path);

void write_recipes(const std::vector<Recipe>& recipes, const std::filesystem::path& path);
std::vector<Recipe> read_recipes(const std::filesystem::path& path);

/// Relative CSV profile paths are rebased onto the config file directory.
BenchmarkConfig load_config(const std::filesystem::path& path);
void save_config(const BenchmarkConfig& config, const std::filesystem::path& path);

/// Parses a whole file as JSON; ParseError carries the failing line.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

/// Stable 64-bit FNV-1a hash of the canonical JSON form, as 16 hex digits.
std::string config_hash(const BenchmarkConfig& config);

}  // namespace mescale
