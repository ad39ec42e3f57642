#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mescale/error.hpp"
#include "mescale/sampling.hpp"
#include "mescale/scenario.hpp"
#include "mescale/text.hpp"
#include "oracles.hpp"

using namespace mescale;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mescale_test_scenario";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("factor file with a 1 to 8 m diameter range is accepted") {
    const auto p = scratch("diameter.json");
    write_text(p, R"([{"name":"hwt_inner_diameter","kind":"design","min":1,"max":8,"base":2,"unit":"m"}])");
    const auto factors = load_factors(p);
    REQUIRE(factors.size() == 1);
    CHECK(factors[0].min == 1.0);
    CHECK(factors[0].max == 8.0);
    CHECK(factors[0].kind == FactorKind::Design);
}

TEST_CASE("empty factor list loads without error") {
    const auto p = scratch("empty.json");
    write_text(p, "[]");
    CHECK(load_factors(p).empty());
}

TEST_CASE("inverted factor range is a validation error naming the factor") {
    const auto p = scratch("inverted.json");
    write_text(p, R"([{"name":"kp","kind":"design","min":5,"max":2,"base":3}])");
    try {
        load_factors(p);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("kp") != std::string::npos);
    }
}

TEST_CASE("duplicate factor names are rejected") {
    const auto p = scratch("dup.json");
    write_text(p, R"([{"name":"kp","min":0,"max":2,"base":1},{"name":"kp","min":0,"max":2,"base":1}])");
    CHECK_THROWS_AS(load_factors(p), ValidationError);
}

TEST_CASE("factor validation rejects exactly the min <= base <= max violations") {
    oracle::SplitMix rng(7);
    for (int i = 0; i < 500; ++i) {
        Factor f{"f", FactorKind::Scenario, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), ""};
        const bool ok = f.min <= f.base && f.base <= f.max;
        if (ok) {
            CHECK_NOTHROW(validate(f));
        } else {
            CHECK_THROWS_AS(validate(f), ValidationError);
        }
    }
}

TEST_CASE("unit pv scaling keeps the PV peaks") {
    const auto c = apply_recipe(default_config(), Recipe{0, {{"pv_scaling", 1.0}}, ""});
    CHECK(c.electrical.pv_peak_kw[0] * c.profiles.pv_scaling == 150.0);
    CHECK(c.electrical.pv_peak_kw[1] * c.profiles.pv_scaling == 50.0);
}

TEST_CASE("diameter 4 m gives the cylinder volume") {
    const auto c = apply_recipe(default_config(), Recipe{0, {{"hwt_inner_diameter", 4.0}}, ""});
    CHECK(c.tank.volume_m3() == doctest::Approx(oracle::cylinder_volume_m3(4.0, 7.9)).epsilon(1e-12));
    CHECK(c.tank.volume_m3() == doctest::Approx(99.27).epsilon(1e-3));
}

TEST_CASE("unknown factor in a recipe names the factor") {
    try {
        apply_recipe(default_config(), Recipe{3, {{"unknown_factor", 1.0}}, ""});
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("unknown_factor") != std::string::npos);
    }
}

TEST_CASE("every catalog factor binds and recipe application is idempotent") {
    const auto base = default_config();
    Recipe r;
    double v = 0.5;
    for (const auto& name : factor_catalog()) {
        r.assignments[name] = v;
        v += 0.25;
    }
    const auto once = apply_recipe(base, r);
    CHECK(apply_recipe(once, r) == once);
    CHECK_FALSE(once == base);
}

TEST_CASE("recipe application leaves untouched fields identical") {
    const auto base = default_config();
    const auto c = apply_recipe(base, Recipe{0, {{"kp", 7.0}}, ""});
    CHECK(c.control.kp == 7.0);
    auto expected = base;
    expected.control.kp = 7.0;
    CHECK(c == expected);
}

TEST_CASE("single recipe round-trips exactly") {
    const auto p = scratch("one.json");
    const std::vector<Recipe> recipes{{0, {{"kp", 2.0}}, "manual"}};
    write_recipes(recipes, p);
    CHECK(read_recipes(p) == recipes);
}

TEST_CASE("5120 Saltelli recipes round-trip in order with full precision") {
    auto factors = default_factors();
    factors.resize(3);
    const auto design = saltelli_design(factors, 1024, false);
    REQUIRE(design.recipes.size() == 5120);
    const auto p = scratch("saltelli.json");
    write_recipes(design.recipes, p);
    const auto back = read_recipes(p);
    REQUIRE(back.size() == 5120);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].run_id == i);
    }
    CHECK(back == design.recipes);
}

TEST_CASE("awkward doubles survive a JSON round trip bit for bit") {
    const auto p = scratch("precision.json");
    const std::vector<Recipe> recipes{
        {0, {{"kp", 0.1 + 0.2}, {"pv_scaling", 1.0 / 3.0}, {"hp_power", 5e-324}, {"v_ref", 1.7976931348623157e308}}, ""}};
    write_recipes(recipes, p);
    CHECK(read_recipes(p) == recipes);
}

TEST_CASE("malformed JSON reports the line") {
    const auto p = scratch("broken.json");
    write_text(p, "[\n  {\"run_id\": 0,\n   \"assignments\": {\"kp\": }\n  }\n]\n");
    try {
        read_recipes(p);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("config round trip and unknown fields") {
    auto c = default_config();
    c.tank.inner_diameter_m = 2.5;
    c.control.flex_heat_enabled = false;
    CHECK(config_from_json(to_json(c)) == c);

    auto j = to_json(c);
    j["tank"]["colour"] = "blue";
    CHECK_THROWS_AS(config_from_json(j), ValidationError);
}

TEST_CASE("partial config overlays the defaults") {
    const auto c = config_from_json(nlohmann::json::parse(R"({"tank":{"inner_diameter_m":3}})"));
    CHECK(c.tank.inner_diameter_m == 3.0);
    CHECK(c.tank.height_m == 7.9);
    CHECK(c.electrical == default_config().electrical);
}

TEST_CASE("config validation rejects non-positive quantities and a step that does not divide the horizon") {
    auto c = default_config();
    c.tank.inner_diameter_m = 0.0;
    CHECK_THROWS_AS(validate(c), ValidationError);
    c = default_config();
    c.step_s = 1000.0;  // 604800 / 1000 is not whole
    CHECK_THROWS_AS(validate(c), ValidationError);
    c = default_config();
    c.tank.layers = 0;
    CHECK_THROWS_AS(validate(c), ValidationError);
    CHECK_NOTHROW(validate(default_config()));
}

TEST_CASE("config hash changes with the config") {
    auto c = default_config();
    const auto h = config_hash(c);
    CHECK(h.size() == 16);
    CHECK(config_hash(c) == h);
    c.control.kp = 21.0;
    CHECK(config_hash(c) != h);
}

TEST_CASE("text helpers") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK_THROWS_AS(parse_double("1.5x"), ParseError);
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(trim("  x ") == "x");
}
