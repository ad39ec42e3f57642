#include "mescale/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mescale/error.hpp"

namespace mescale {

using nlohmann::json;

std::string_view to_string(FactorKind kind) {
    return kind == FactorKind::Design ? "design" : "scenario";
}

FactorKind factor_kind_from_string(std::string_view text) {
    if (text == "design") {
        return FactorKind::Design;
    }
    if (text == "scenario") {
        return FactorKind::Scenario;
    }
    throw ValidationError("unknown factor kind '" + std::string(text) + "'");
}

double TankConfig::volume_m3() const {
    const double r = 0.5 * inner_diameter_m;
    return std::numbers::pi * r * r * height_m;
}

std::size_t BenchmarkConfig::step_count() const {
    return static_cast<std::size_t>(std::llround(horizon_s / step_s));
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ValidationError(message);
    }
}

bool finite(double v) { return std::isfinite(v); }

// Field visitors shared by the JSON reader and writer. The const overloads
// only ever hand out values for serialization.
template <class F>
void visit(ElectricalConfig& c, F&& f) {
    f("nominal_voltage_v", c.nominal_voltage_v);
    f("slack_voltage_pu", c.slack_voltage_pu);
    f("line_length_km", c.line_length_km);
    f("r_ohm_per_km", c.r_ohm_per_km);
    f("x_ohm_per_km", c.x_ohm_per_km);
    f("line_rating_kva", c.line_rating_kva);
    f("pv_peak_kw", c.pv_peak_kw);
    f("load_power_factor", c.load_power_factor);
}

template <class F>
void visit(ThermalConfig& c, F&& f) {
    f("pipe_length_km", c.pipe_length_km);
    f("pipe_loss_w_per_mk", c.pipe_loss_w_per_mk);
    f("ground_temperature_c", c.ground_temperature_c);
    f("supply_temperature_c", c.supply_temperature_c);
    f("return_temperature_c", c.return_temperature_c);
    f("min_circulation_kg_s", c.min_circulation_kg_s);
}

template <class F>
void visit(HeatPumpConfig& c, F&& f) {
    f("rated_power_kw", c.rated_power_kw);
    f("min_operating_kw", c.min_operating_kw);
    f("carnot_efficiency", c.carnot_efficiency);
    f("pinch_evaporator_k", c.pinch_evaporator_k);
    f("pinch_condenser_k", c.pinch_condenser_k);
    f("source_temperature_c", c.source_temperature_c);
}

template <class F>
void visit(TankConfig& c, F&& f) {
    f("inner_diameter_m", c.inner_diameter_m);
    f("height_m", c.height_m);
    f("layers", c.layers);
    f("loss_coefficient_w_per_m2k", c.loss_coefficient_w_per_m2k);
    f("conductivity_w_per_mk", c.conductivity_w_per_mk);
    f("initial_temperature_c", c.initial_temperature_c);
    f("charge_temperature_c", c.charge_temperature_c);
    f("max_discharge_kw", c.max_discharge_kw);
}

template <class F>
void visit(ControlConfig& c, F&& f) {
    f("voltage_control_enabled", c.voltage_control_enabled);
    f("flex_heat_enabled", c.flex_heat_enabled);
    f("kp", c.kp);
    f("v_ref_pu", c.v_ref_pu);
    f("charge_start_c", c.charge_start_c);
    f("charge_stop_c", c.charge_stop_c);
    f("discharge_start_c", c.discharge_start_c);
    f("discharge_stop_c", c.discharge_stop_c);
    f("surplus_threshold_kw", c.surplus_threshold_kw);
}

template <class F>
void visit(ProfileConfig& c, F&& f) {
    f("source", c.source);
    f("path", c.path);
    f("pv_scaling", c.pv_scaling);
    f("load_scaling", c.load_scaling);
    f("heat_scaling", c.heat_scaling);
}

void read_value(const json& j, double& out) { out = j.get<double>(); }
void read_value(const json& j, int& out) { out = j.get<int>(); }
void read_value(const json& j, bool& out) { out = j.get<bool>(); }
void read_value(const json& j, std::string& out) { out = j.get<std::string>(); }
void read_value(const json& j, ProfileSource& out) {
    const auto s = j.get<std::string>();
    if (s == "synthetic") {
        out = ProfileSource::Synthetic;
    } else if (s == "csv") {
        out = ProfileSource::Csv;
    } else {
        throw ValidationError("profiles.source must be 'synthetic' or 'csv', got '" + s + "'");
    }
}
template <std::size_t N>
void read_value(const json& j, std::array<double, N>& out) {
    const auto values = j.get<std::vector<double>>();
    if (values.size() != N) {
        throw ValidationError("expected an array of " + std::to_string(N) + " numbers");
    }
    std::copy(values.begin(), values.end(), out.begin());
}

json write_value(double v) { return v; }
json write_value(int v) { return v; }
json write_value(bool v) { return v; }
json write_value(const std::string& v) { return v; }
json write_value(ProfileSource v) { return v == ProfileSource::Csv ? "csv" : "synthetic"; }
template <std::size_t N>
json write_value(const std::array<double, N>& v) {
    return json(std::vector<double>(v.begin(), v.end()));
}

template <class Section>
json section_to_json(const Section& section) {
    json out = json::object();
    visit(const_cast<Section&>(section),
          [&](const char* key, const auto& value) { out[key] = write_value(value); });
    return out;
}

template <class Section>
void section_from_json(const json& j, const std::string& name, Section& section) {
    if (!j.is_object()) {
        throw ValidationError("config section '" + name + "' must be an object");
    }
    std::set<std::string> known;
    visit(section, [&](const char* key, auto& value) {
        known.insert(key);
        if (auto it = j.find(key); it != j.end()) {
            try {
                read_value(*it, value);
            } catch (const json::exception& e) {
                throw ValidationError("config field '" + name + "." + key + "': " + e.what());
            }
        }
    });
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            throw ValidationError("unknown config field '" + name + "." + key + "'");
        }
    }
}

using Binding = std::function<void(BenchmarkConfig&, double)>;

const std::map<std::string, Binding>& bindings() {
    static const std::map<std::string, Binding> table = {
        {"pv_scaling", [](BenchmarkConfig& c, double v) { c.profiles.pv_scaling = v; }},
        {"heat_profile_scaling", [](BenchmarkConfig& c, double v) { c.profiles.heat_scaling = v; }},
        {"load_scaling", [](BenchmarkConfig& c, double v) { c.profiles.load_scaling = v; }},
        {"hp_power", [](BenchmarkConfig& c, double v) { c.heat_pump.rated_power_kw = v; }},
        {"hp_min_op", [](BenchmarkConfig& c, double v) { c.heat_pump.min_operating_kw = v; }},
        {"hwt_inner_diameter", [](BenchmarkConfig& c, double v) { c.tank.inner_diameter_m = v; }},
        {"kp", [](BenchmarkConfig& c, double v) { c.control.kp = v; }},
        {"v_ref", [](BenchmarkConfig& c, double v) { c.control.v_ref_pu = v; }},
        {"t_charge_start", [](BenchmarkConfig& c, double v) { c.control.charge_start_c = v; }},
        {"t_charge_stop", [](BenchmarkConfig& c, double v) { c.control.charge_stop_c = v; }},
        {"t_discharge_start", [](BenchmarkConfig& c, double v) { c.control.discharge_start_c = v; }},
        {"t_discharge_stop", [](BenchmarkConfig& c, double v) { c.control.discharge_stop_c = v; }},
    };
    return table;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

void validate(const Factor& factor) {
    require(!factor.name.empty(), "factor name must not be empty");
    const std::string who = "factor '" + factor.name + "'";
    require(finite(factor.min) && finite(factor.max) && finite(factor.base),
            who + ": min, base and max must be finite");
    require(factor.min <= factor.max,
            who + ": inverted range (min " + std::to_string(factor.min) + " > max " +
                std::to_string(factor.max) + ")");
    require(factor.min <= factor.base && factor.base <= factor.max,
            who + ": base " + std::to_string(factor.base) + " outside [min, max]");
}

void validate_factor_set(const std::vector<Factor>& factors) {
    std::set<std::string> seen;
    for (const auto& f : factors) {
        validate(f);
        if (!seen.insert(f.name).second) {
            throw ValidationError("duplicate factor '" + f.name + "'");
        }
    }
}

void validate(const BenchmarkConfig& c) {
    const auto& e = c.electrical;
    require(e.nominal_voltage_v > 0, "electrical.nominal_voltage_v must be positive");
    require(e.slack_voltage_pu > 0, "electrical.slack_voltage_pu must be positive");
    for (double len : e.line_length_km) {
        require(len > 0, "electrical.line_length_km entries must be positive");
    }
    require(e.r_ohm_per_km >= 0 && e.x_ohm_per_km >= 0, "line impedance must be non-negative");
    require(e.r_ohm_per_km > 0 || e.x_ohm_per_km > 0, "line impedance must not be zero");
    require(e.line_rating_kva > 0, "electrical.line_rating_kva must be positive");
    for (double p : e.pv_peak_kw) {
        require(p > 0, "electrical.pv_peak_kw entries must be positive");
    }
    require(e.load_power_factor > 0 && e.load_power_factor <= 1,
            "electrical.load_power_factor must lie in (0, 1]");

    const auto& t = c.thermal;
    for (double len : t.pipe_length_km) {
        require(len > 0, "thermal.pipe_length_km entries must be positive");
    }
    require(t.pipe_loss_w_per_mk >= 0, "thermal.pipe_loss_w_per_mk must be non-negative");
    require(t.supply_temperature_c > t.return_temperature_c,
            "thermal.supply_temperature_c must exceed return_temperature_c");
    require(t.return_temperature_c >= t.ground_temperature_c,
            "thermal.return_temperature_c must not be below ground temperature");
    require(t.supply_temperature_c <= 100.0, "thermal.supply_temperature_c must be <= 100");
    require(t.min_circulation_kg_s >= 0, "thermal.min_circulation_kg_s must be non-negative");

    const auto& hp = c.heat_pump;
    require(hp.rated_power_kw > 0, "heat_pump.rated_power_kw must be positive");
    require(hp.min_operating_kw >= 0, "heat_pump.min_operating_kw must be non-negative");
    require(hp.min_operating_kw <= hp.rated_power_kw,
            "heat pump minimum operating point exceeds rated power");
    require(hp.carnot_efficiency > 0 && hp.carnot_efficiency <= 1,
            "heat_pump.carnot_efficiency must lie in (0, 1]");
    require(hp.pinch_evaporator_k >= 0 && hp.pinch_condenser_k >= 0,
            "heat pump pinch offsets must be non-negative");

    const auto& tk = c.tank;
    require(tk.inner_diameter_m > 0, "tank.inner_diameter_m must be positive");
    require(tk.height_m > 0, "tank.height_m must be positive");
    require(tk.layers >= 1, "tank.layers must be at least 1");
    require(tk.loss_coefficient_w_per_m2k >= 0, "tank.loss_coefficient_w_per_m2k must be non-negative");
    require(tk.conductivity_w_per_mk >= 0, "tank.conductivity_w_per_mk must be non-negative");
    require(tk.initial_temperature_c >= t.ground_temperature_c && tk.initial_temperature_c <= 100,
            "tank.initial_temperature_c must lie in [ground temperature, 100]");
    require(tk.charge_temperature_c > t.return_temperature_c && tk.charge_temperature_c <= 100,
            "tank.charge_temperature_c must lie in (return temperature, 100]");
    require(tk.max_discharge_kw >= 0, "tank.max_discharge_kw must be non-negative");

    const auto& ct = c.control;
    require(ct.kp >= 0, "control.kp must be non-negative");
    require(ct.v_ref_pu >= 0.9 && ct.v_ref_pu <= 1.1, "control.v_ref_pu must lie in [0.9, 1.1]");
    require(ct.charge_start_c < ct.charge_stop_c, "control.charge_start_c must be below charge_stop_c");
    require(ct.discharge_stop_c < ct.discharge_start_c,
            "control.discharge_stop_c must be below discharge_start_c");
    require(ct.surplus_threshold_kw >= 0, "control.surplus_threshold_kw must be non-negative");

    const auto& p = c.profiles;
    require(p.pv_scaling >= 0 && p.load_scaling >= 0 && p.heat_scaling >= 0,
            "profile scalings must be non-negative");
    require(p.source != ProfileSource::Csv || !p.path.empty(), "profiles.path required for csv source");

    require(c.step_s > 0 && c.horizon_s > 0, "horizon_s and step_s must be positive");
    const double ratio = c.horizon_s / c.step_s;
    require(std::abs(ratio - std::round(ratio)) < 1e-9 * std::max(1.0, ratio),
            "step_s must divide horizon_s");
}

BenchmarkConfig default_config() { return BenchmarkConfig{}; }

std::vector<Factor> default_factors() {
    return {
        {"hwt_inner_diameter", FactorKind::Design, 1.0, 8.0, 4.0, "m"},
        {"hp_min_op", FactorKind::Design, 0.0, 50.0, 20.0, "kW"},
        {"kp", FactorKind::Design, 0.0, 40.0, 20.0, "1/pu"},
        {"pv_scaling", FactorKind::Scenario, 0.5, 2.0, 1.0, "-"},
        {"heat_profile_scaling", FactorKind::Scenario, 0.5, 2.0, 1.0, "-"},
        {"load_scaling", FactorKind::Scenario, 0.5, 2.0, 1.0, "-"},
        {"hp_power", FactorKind::Scenario, 50.0, 200.0, 100.0, "kW"},
    };
}

const std::vector<std::string>& factor_catalog() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, _] : bindings()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

BenchmarkConfig apply_recipe(const BenchmarkConfig& config, const Recipe& recipe) {
    BenchmarkConfig out = config;
    const auto& table = bindings();
    for (const auto& [name, value] : recipe.assignments) {
        const auto it = table.find(name);
        if (it == table.end()) {
            throw ValidationError("unknown factor '" + name + "' in recipe " +
                                  std::to_string(recipe.run_id));
        }
        it->second(out, value);
    }
    return out;
}

json to_json(const Factor& f) {
    return json{{"name", f.name},
                {"kind", std::string(to_string(f.kind))},
                {"min", f.min},
                {"max", f.max},
                {"base", f.base},
                {"unit", f.unit}};
}

Factor factor_from_json(const json& j) {
    try {
        Factor f;
        f.name = j.at("name").get<std::string>();
        f.kind = factor_kind_from_string(j.value("kind", std::string("scenario")));
        f.min = j.at("min").get<double>();
        f.max = j.at("max").get<double>();
        f.base = j.at("base").get<double>();
        f.unit = j.value("unit", std::string());
        return f;
    } catch (const json::exception& e) {
        const std::string name = j.is_object() ? j.value("name", std::string("?")) : "?";
        throw ValidationError("factor '" + name + "': " + e.what());
    }
}

json to_json(const Recipe& r) {
    json assignments = json::object();
    for (const auto& [name, value] : r.assignments) {
        assignments[name] = value;
    }
    return json{{"run_id", r.run_id}, {"design_tag", r.design_tag}, {"assignments", assignments}};
}

Recipe recipe_from_json(const json& j) {
    try {
        Recipe r;
        r.run_id = j.at("run_id").get<std::uint64_t>();
        r.design_tag = j.value("design_tag", std::string());
        for (const auto& [name, value] : j.at("assignments").items()) {
            r.assignments[name] = value.get<double>();
        }
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("recipe: ") + e.what());
    }
}

json to_json(const BenchmarkConfig& c) {
    return json{{"electrical", section_to_json(c.electrical)},
                {"thermal", section_to_json(c.thermal)},
                {"heat_pump", section_to_json(c.heat_pump)},
                {"tank", section_to_json(c.tank)},
                {"control", section_to_json(c.control)},
                {"profiles", section_to_json(c.profiles)},
                {"horizon_s", c.horizon_s},
                {"step_s", c.step_s},
                {"seed", c.seed}};
}

BenchmarkConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    BenchmarkConfig c = default_config();
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "electrical") {
                section_from_json(value, key, c.electrical);
            } else if (key == "thermal") {
                section_from_json(value, key, c.thermal);
            } else if (key == "heat_pump") {
                section_from_json(value, key, c.heat_pump);
            } else if (key == "tank") {
                section_from_json(value, key, c.tank);
            } else if (key == "control") {
                section_from_json(value, key, c.control);
            } else if (key == "profiles") {
                section_from_json(value, key, c.profiles);
            } else if (key == "horizon_s") {
                c.horizon_s = value.get<double>();
            } else if (key == "step_s") {
                c.step_s = value.get<double>();
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else {
                throw ValidationError("unknown config field '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw ValidationError("config field '" + key + "': " + e.what());
        }
    }
    validate(c);
    return c;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
            }
        }
        throw ParseError(path.string() + ":" + std::to_string(line) + ": " + e.what(), line);
    }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

std::vector<Factor> load_factors(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    if (!j.is_array()) {
        throw ValidationError(path.string() + ": factors file must hold a JSON array");
    }
    std::vector<Factor> factors;
    factors.reserve(j.size());
    for (const auto& item : j) {
        factors.push_back(factor_from_json(item));
    }
    validate_factor_set(factors);
    return factors;
}

void save_factors(const std::vector<Factor>& factors, const std::filesystem::path& path) {
    json j = json::array();
    for (const auto& f : factors) {
        j.push_back(to_json(f));
    }
    write_json_file(j, path);
}

void write_recipes(const std::vector<Recipe>& recipes, const std::filesystem::path& path) {
    json j = json::array();
    for (const auto& r : recipes) {
        j.push_back(to_json(r));
    }
    write_json_file(j, path);
}

std::vector<Recipe> read_recipes(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    if (!j.is_array()) {
        throw ValidationError(path.string() + ": recipes file must hold a JSON array");
    }
    std::vector<Recipe> recipes;
    recipes.reserve(j.size());
    for (const auto& item : j) {
        recipes.push_back(recipe_from_json(item));
    }
    return recipes;
}

BenchmarkConfig load_config(const std::filesystem::path& path) {
    BenchmarkConfig c = config_from_json(read_json_file(path));
    if (c.profiles.source == ProfileSource::Csv) {
        std::filesystem::path csv(c.profiles.path);
        if (csv.is_relative()) {
            c.profiles.path = (path.parent_path() / csv).lexically_normal().string();
        }
    }
    return c;
}

void save_config(const BenchmarkConfig& config, const std::filesystem::path& path) {
    write_json_file(to_json(config), path);
}

std::string config_hash(const BenchmarkConfig& config) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::uint64_t h = fnv1a(to_json(config).dump());
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace mescale
