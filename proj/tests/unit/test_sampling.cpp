#include <doctest.h>

#include "mescale/error.hpp"
#include "mescale/sampling.hpp"
#include "oracles.hpp"

using namespace mescale;

namespace {

std::vector<Factor> three_factors() {
    return {{"hwt_inner_diameter", FactorKind::Design, 1, 8, 4, "m"},
            {"hp_min_op", FactorKind::Design, 0, 50, 20, "kW"},
            {"kp", FactorKind::Design, 0, 40, 20, "1/pu"}};
}

}  // namespace

TEST_CASE("OAT over seven factors gives 15 recipes matching the enumeration") {
    const auto factors = default_factors();
    REQUIRE(factors.size() == 7);
    const auto d = oat_design(factors);
    CHECK(d.recipes.size() == 15);
    std::vector<oracle::OatFactor> of;
    for (const auto& f : factors) {
        of.push_back({f.name, f.min, f.base, f.max});
    }
    const auto expected = oracle::oat_enumeration(of);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(d.recipes[i].assignments == expected[i]);
        CHECK(d.recipes[i].run_id == i);
    }
    const auto& meta = std::get<OatMeta>(d.meta);
    CHECK(meta.triples.size() == 7);
    CHECK(meta.triples[2].factor == factors[2].name);
    CHECK(meta.triples[2].base_run == 0);
    CHECK(meta.triples[2].min_run == 5);
    CHECK(meta.triples[2].max_run == 6);
}

TEST_CASE("OAT with one factor") {
    const auto d = oat_design({{"f", FactorKind::Scenario, 0, 2, 1, ""}});
    REQUIRE(d.recipes.size() == 3);
    CHECK(d.recipes[0].assignments.at("f") == 1.0);
    CHECK(d.recipes[1].assignments.at("f") == 0.0);
    CHECK(d.recipes[2].assignments.at("f") == 2.0);
}

TEST_CASE("OAT with no factors is an error") { CHECK_THROWS_AS(oat_design({}), ValidationError); }

TEST_CASE("Saltelli sizes") {
    CHECK(saltelli_design(three_factors(), 1024, false).recipes.size() == 5120);
    CHECK(saltelli_design(three_factors(), 1024, true).recipes.size() == 8192);
    CHECK_THROWS_AS(saltelli_design({}, 8, false), ValidationError);
}

TEST_CASE("Saltelli k=1, N=2: AB rows equal B rows") {
    const std::vector<Factor> one{{"kp", FactorKind::Design, 0, 40, 20, ""}};
    const auto d = saltelli_design(one, 2, false);
    REQUIRE(d.recipes.size() == 6);
    const auto& m = std::get<SaltelliMeta>(d.meta);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(d.recipes[m.ab_row(0, j)].assignments == d.recipes[m.b_row(j)].assignments);
    }
}

TEST_CASE("Saltelli AB_i differs from A in exactly column i and takes B's value there") {
    const auto factors = three_factors();
    const auto d = saltelli_design(factors, 64, true);
    const auto& m = std::get<SaltelliMeta>(d.meta);
    for (std::size_t i = 0; i < m.k; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            const auto& a = d.recipes[m.a_row(j)].assignments;
            const auto& b = d.recipes[m.b_row(j)].assignments;
            const auto& ab = d.recipes[m.ab_row(i, j)].assignments;
            const auto& ba = d.recipes[m.ba_row(i, j)].assignments;
            for (std::size_t c = 0; c < m.k; ++c) {
                const auto& name = factors[c].name;
                if (c == i) {
                    CHECK(ab.at(name) == b.at(name));
                    CHECK(ba.at(name) == a.at(name));
                } else {
                    CHECK(ab.at(name) == a.at(name));
                    CHECK(ba.at(name) == b.at(name));
                }
            }
        }
    }
}

TEST_CASE("Saltelli values respect factor bounds and A, B are independent") {
    const auto factors = three_factors();
    const auto d = saltelli_design(factors, 256, false);
    for (const auto& r : d.recipes) {
        for (const auto& f : factors) {
            const double v = r.assignments.at(f.name);
            REQUIRE(v >= f.min);
            REQUIRE(v <= f.max);
        }
    }
    const auto& m = std::get<SaltelliMeta>(d.meta);
    std::size_t same = 0;
    for (std::size_t j = 0; j < m.n; ++j) {
        same += d.recipes[m.a_row(j)].assignments == d.recipes[m.b_row(j)].assignments;
    }
    // The first non-origin Sobol point is 0.5 in every dimension, so row 0 of
    // A and B coincide; every later row must differ.
    CHECK(same <= 1);
}

TEST_CASE("Saltelli warns for a non power of two") {
    std::string warning;
    saltelli_design(three_factors(), 100, false, &warning);
    CHECK_FALSE(warning.empty());
    warning.clear();
    saltelli_design(three_factors(), 128, false, &warning);
    CHECK(warning.empty());
}

TEST_CASE("designs are deterministic") {
    CHECK(saltelli_design(three_factors(), 32, false) == saltelli_design(three_factors(), 32, false));
    CHECK(to_json(saltelli_design(three_factors(), 32, false)).dump() ==
          to_json(saltelli_design(three_factors(), 32, false)).dump());
}

TEST_CASE("diameter grid over 1..8 with 8 points") {
    const auto d = grid_design(three_factors(), {"hwt_inner_diameter"}, 8);
    REQUIRE(d.recipes.size() == 8);
    const auto expected = oracle::linspace(1, 8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(d.recipes[i].assignments.at("hwt_inner_diameter") == doctest::Approx(expected[i]).epsilon(1e-15));
        CHECK(d.recipes[i].assignments.at("kp") == 20.0);
    }
}

TEST_CASE("two-axis 5x5 grid is row-major") {
    const auto d = grid_design(three_factors(), {"hwt_inner_diameter", "kp"}, 5);
    REQUIRE(d.recipes.size() == 25);
    const auto dia = oracle::linspace(1, 8, 5);
    const auto kp = oracle::linspace(0, 40, 5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            const auto& a = d.recipes[i * 5 + j].assignments;
            CHECK(a.at("hwt_inner_diameter") == doctest::Approx(dia[i]));
            CHECK(a.at("kp") == doctest::Approx(kp[j]));
        }
    }
}

TEST_CASE("grid errors") {
    CHECK_THROWS_AS(grid_design(three_factors(), {"kp"}, 1), ValidationError);
    CHECK_THROWS_AS(grid_design(three_factors(), {}, 4), ValidationError);
    CHECK_THROWS_AS(grid_design(three_factors(), {"kp", "hp_min_op", "hwt_inner_diameter"}, 4), ValidationError);
    CHECK_THROWS_AS(grid_design(three_factors(), {"nope"}, 4), ValidationError);
}

TEST_CASE("design JSON round trip and validation") {
    for (const auto& d : {oat_design(three_factors()), saltelli_design(three_factors(), 16, true),
                          grid_design(three_factors(), {"kp", "hp_min_op"}, 3)}) {
        CHECK(design_from_json(to_json(d)) == d);
        CHECK_NOTHROW(validate(d));
    }
    auto d = oat_design(three_factors());
    d.recipes.pop_back();
    CHECK_THROWS_AS(validate(d), ValidationError);
}

TEST_CASE("design kind names") {
    CHECK(design_kind_from_string("sobol") == DesignKind::Saltelli);
    CHECK(design_kind_from_string("oat") == DesignKind::Oat);
    CHECK_THROWS_AS(design_kind_from_string("lhs"), ValidationError);
}
