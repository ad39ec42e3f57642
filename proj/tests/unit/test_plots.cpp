#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mescale/plots.hpp"
#include "oracles.hpp"

using namespace mescale;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mescale_test_plots_" + name);
    fs::remove_all(dir);
    return dir;
}

std::vector<std::string> lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SobolIndices indices(std::size_t k) {
    SobolIndices s;
    for (std::size_t i = 0; i < k; ++i) {
        s.factors.push_back("f" + std::to_string(i));
        s.s1.push_back(0.1 * (i + 1));
        s.st.push_back(0.15 * (i + 1));
        s.s1_conf.push_back(0.01);
        s.st_conf.push_back(0.02);
    }
    return s;
}

}  // namespace

TEST_CASE("Sobol plot: one SVG per metric with paired bars") {
    SobolResult r;
    r.factors = {"f0", "f1", "f2"};
    r.n = 64;
    r.k = 3;
    r.metrics["avg_cop"] = indices(3);
    r.metrics["max_v2_pu"] = indices(3);
    const auto dir = fresh_dir("sobol");
    const auto files = plot_sobol(r, dir);
    CHECK(files.size() == 4);
    REQUIRE(fs::exists(dir / "sobol_avg_cop.svg"));
    const auto svg = slurp(dir / "sobol_avg_cop.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "class=\"bar s1\"") == 3);
    CHECK(count(svg, "class=\"bar st\"") == 3);
    const auto csv = lines(dir / "sobol_avg_cop.csv");
    CHECK(csv[0] == "factor,s1,s1_conf,st,st_conf");
    CHECK(csv.size() == 4);
}

TEST_CASE("1-D surface: curve over the sampled grid points") {
    MetaModelFit fit;
    fit.metric = "self_cons_pct";
    const auto xs = oracle::linspace(1, 8, 8);
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (double v : xs) {
        x.push_back({v});
        y.push_back(100 - 30 / v);
    }
    fit.model = fit_metamodel(x, y, {{"hwt_inner_diameter", 1, 8}}, 4);
    fit.grid_points = {xs};
    const auto dir = fresh_dir("curve");
    plot_surface(fit, dir);
    const auto csv = lines(dir / "surface_self_cons_pct.csv");
    REQUIRE(csv.size() == 9);
    CHECK(csv[0].rfind("hwt_inner_diameter,", 0) == 0);
    double prev = -1;
    for (std::size_t i = 1; i < csv.size(); ++i) {
        const double v = std::stod(csv[i].substr(0, csv[i].find(',')));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(fs::exists(dir / "surface_self_cons_pct.svg"));
}

TEST_CASE("2-D surface: 8x8 heatmap") {
    MetaModelFit fit;
    fit.metric = "m";
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (double a : oracle::linspace(0, 1, 5)) {
        for (double b : oracle::linspace(0, 1, 5)) {
            x.push_back({a, b});
            y.push_back(a * b);
        }
    }
    fit.model = fit_metamodel(x, y, {{"a", 0, 1}, {"b", 0, 1}}, 2);
    const auto dir = fresh_dir("heat");
    plot_surface(fit, dir, 8);
    CHECK(lines(dir / "surface_m.csv").size() == 65);
    CHECK(count(slurp(dir / "surface_m.svg"), "class=\"cell\"") == 64);
}

TEST_CASE("OAT and ranking plots") {
    OatRanking r;
    r.factors = {"a", "b"};
    OatMetricRanking m{"avg_cop", {{"a", 2.0, 1, {1.0, 2.0, 4.0}}, {"b", 0.0, 2, {2.0, 2.0, 2.0}}}};
    r.per_metric = {m};
    r.mean_rank = {{"a", 1.0}, {"b", 2.0}};
    r.aggregate_order = {"a", "b"};
    const auto dir = fresh_dir("oat");
    plot_oat(r, dir);
    plot_ranking(r, dir);
    CHECK(lines(dir / "oat_avg_cop.csv").size() == 7);
    CHECK(fs::exists(dir / "ranking.svg"));
    CHECK(lines(dir / "ranking.csv").size() == 5);
}

TEST_CASE("missing input is an error") {
    CHECK_THROWS(emit_plots(PlotKind::Sobol, "/nonexistent/analysis.json", fresh_dir("missing")));
    CHECK_THROWS(plot_kind_from_string("pie"));
}
