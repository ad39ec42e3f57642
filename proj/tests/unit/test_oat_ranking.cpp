#include <doctest.h>

#include <cmath>

#include "mescale/error.hpp"
#include "mescale/oat_ranking.hpp"
#include "oracles.hpp"

using namespace mescale;
using doctest::Approx;

namespace {

std::vector<Factor> factors(const std::vector<std::string>& names) {
    std::vector<Factor> f;
    for (const auto& n : names) f.push_back({n, FactorKind::Scenario, 0.0, 2.0, 1.0, ""});
    return f;
}

// Builds run values for an OAT design from per-factor (min, max) responses
// around a shared base value.
std::vector<std::optional<std::vector<double>>> runs(const OatMeta& meta, const std::vector<double>& base,
                                                     const std::vector<std::vector<std::array<double, 2>>>& resp) {
    std::vector<std::optional<std::vector<double>>> out(1 + 2 * meta.triples.size());
    out[0] = base;
    for (std::size_t f = 0; f < meta.triples.size(); ++f) {
        std::vector<double> lo;
        std::vector<double> hi;
        for (std::size_t m = 0; m < base.size(); ++m) {
            lo.push_back(resp[m][f][0]);
            hi.push_back(resp[m][f][1]);
        }
        out[meta.triples[f].min_run] = lo;
        out[meta.triples[f].max_run] = hi;
    }
    return out;
}

}  // namespace

TEST_CASE("larger spread ranks first") {
    const auto d = oat_design(factors({"a", "b"}));
    const auto& meta = std::get<OatMeta>(d.meta);
    // a: (min, base, max) = (-sqrt6 + 0 ...) chosen so the variances are 4 and 1.
    const double s = std::sqrt(6.0);
    const auto r = oat_ranking(meta, {"m"}, runs(meta, {0.0}, {{{-s, s}, {-s / 2, s / 2}}}));
    CHECK(r.metric("m").scores[0].factor == "a");
    CHECK(r.metric("m").scores[0].score == Approx(4.0));
    CHECK(r.metric("m").scores[1].score == Approx(1.0));
    CHECK(r.rank_of("m", "a") == 1);
    CHECK(r.rank_of("m", "b") == 2);
}

TEST_CASE("one responsive factor among constants ranks first; ties break by name") {
    const auto d = oat_design(factors({"zeta", "alpha", "beta"}));
    const auto& meta = std::get<OatMeta>(d.meta);
    const auto r = oat_ranking(meta, {"m"}, runs(meta, {5.0}, {{{5, 5}, {5, 5}, {1, 9}}}));
    CHECK(r.rank_of("m", "beta") == 1);
    CHECK(r.rank_of("m", "alpha") == 2);
    CHECK(r.rank_of("m", "zeta") == 3);
}

TEST_CASE("three factors by two metrics against a brute-force ranking") {
    const std::vector<std::string> names{"f1", "f2", "f3"};
    const auto d = oat_design(factors(names));
    const auto& meta = std::get<OatMeta>(d.meta);
    const std::vector<double> base{10.0, 1.0};
    const std::vector<std::vector<std::array<double, 2>>> resp{
        {{8, 12}, {9, 11.5}, {10, 10}},
        {{1, 1}, {0.2, 3.0}, {0.9, 1.4}},
    };
    const auto r = oat_ranking(meta, {"m1", "m2"}, runs(meta, base, resp));
    std::map<std::string, double> mean;
    for (std::size_t m = 0; m < 2; ++m) {
        std::map<std::string, double> scores;
        for (std::size_t f = 0; f < 3; ++f) {
            scores[names[f]] = oracle::population_variance({resp[m][f][0], base[m], resp[m][f][1]});
        }
        const auto ranks = oracle::brute_force_ranks(scores);
        const std::string metric = m == 0 ? "m1" : "m2";
        for (const auto& [name, rank] : ranks) {
            CHECK(r.rank_of(metric, name) == rank);
            mean[name] += rank / 2.0;
        }
    }
    for (const auto& [name, v] : mean) CHECK(r.mean_rank.at(name) == Approx(v));
    // f2 is 2nd and 1st, f1 is 1st and 3rd: mean ranks 1.5 and 2.0.
    CHECK(r.aggregate_order.front() == "f2");
}

TEST_CASE("missing runs are fatal unless tolerated") {
    const auto d = oat_design(factors({"a", "b"}));
    const auto& meta = std::get<OatMeta>(d.meta);
    auto v = runs(meta, {0.0}, {{{-1, 1}, {-2, 2}}});
    v[meta.triples[1].max_run].reset();
    CHECK_THROWS_AS(oat_ranking(meta, {"m"}, v), ValidationError);
    const auto r = oat_ranking(meta, {"m"}, v, {true});
    CHECK_FALSE(r.warnings.empty());
    const bool gap = std::isnan(r.metric("m").scores[0].values[2]) || std::isnan(r.metric("m").scores[1].values[2]);
    CHECK(gap);
    // Two of three points left for b: variance of (-2, 0) is 1.
    const auto& b = r.metric("m").scores[0].factor == "b" ? r.metric("m").scores[0] : r.metric("m").scores[1];
    CHECK(b.score == Approx(1.0));
}

TEST_CASE("ranking is deterministic and survives JSON") {
    const auto fs = factors({"a", "b", "c"});
    const auto d = oat_design(fs);
    const auto& meta = std::get<OatMeta>(d.meta);
    const auto v = runs(meta, {1.0, 2.0}, {{{0, 2}, {1, 1}, {0.5, 1.5}}, {{2, 2}, {0, 4}, {1, 3}}});
    const auto a = oat_ranking(meta, {"x", "y"}, v);
    const auto b = oat_ranking(meta, {"x", "y"}, v);
    CHECK(to_json(a, fs).dump() == to_json(b, fs).dump());
    const auto back = oat_ranking_from_json(to_json(a, fs));
    CHECK(back.aggregate_order == a.aggregate_order);
    CHECK(back.rank_of("y", "b") == a.rank_of("y", "b"));
    CHECK(back.mean_rank == a.mean_rank);
}

TEST_CASE("MetricSet overload covers the headline metrics") {
    const auto d = oat_design(factors({"a"}));
    const auto& meta = std::get<OatMeta>(d.meta);
    std::vector<std::optional<MetricSet>> v(3, MetricSet{});
    v[2]->max_voltage_bus2_pu = 1.1;
    const auto r = oat_ranking(meta, v);
    CHECK(r.per_metric.size() == primary_metric_names().size());
    CHECK(r.metric("max_v2_pu").scores[0].score > 0.0);
}
