// Thin pybind11 layer. Structured values cross the boundary as JSON text;
// the Python package decodes them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "mescale/campaign.hpp"
#include "mescale/campaign_analysis.hpp"
#include "mescale/control.hpp"
#include "mescale/error.hpp"
#include "mescale/metrics.hpp"
#include "mescale/sampling.hpp"
#include "mescale/scenario.hpp"
#include "mescale/simulator.hpp"
#include "mescale/sobol_analysis.hpp"
#include "mescale/tank.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

mescale::BenchmarkConfig config_or_default(const std::string& text) {
    return text.empty() ? mescale::default_config() : mescale::config_from_json(json::parse(text));
}

std::vector<mescale::Factor> factors_from_text(const std::string& text) {
    if (text.empty()) return mescale::default_factors();
    std::vector<mescale::Factor> out;
    for (const auto& f : json::parse(text)) out.push_back(mescale::factor_from_json(f));
    return out;
}

json trajectory_columns(const mescale::Trajectory& t) {
    json cols = json::object();
    auto column = [&](const char* name, auto get) {
        json c = json::array();
        for (const auto& s : t.steps) c.push_back(get(s));
        cols[name] = std::move(c);
    };
    column("V1_pu", [](const auto& s) { return s.v1_pu; });
    column("V2_pu", [](const auto& s) { return s.v2_pu; });
    column("line0_loading_pct", [](const auto& s) { return s.line0_loading_pct; });
    column("hp_p_el_kw", [](const auto& s) { return s.hp_p_el_kw; });
    column("hp_q_th_kw", [](const auto& s) { return s.hp_q_th_kw; });
    column("cop", [](const auto& s) { return s.cop; });
    column("tank_top_c", [](const auto& s) { return s.tank_top_c; });
    column("tank_bottom_c", [](const auto& s) { return s.tank_bottom_c; });
    column("t_critical_c", [](const auto& s) { return s.t_critical_c; });
    column("heat_ext_kw", [](const auto& s) { return s.heat_ext_kw; });
    column("pv_kw", [](const auto& s) { return s.pv_kw; });
    column("export_kw", [](const auto& s) { return s.export_kw; });
    column("mode", [](const auto& s) { return std::string(mescale::to_string(s.mode)); });
    return cols;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-energy system scaling simulator and sensitivity toolkit";
    m.attr("__version__") = MESCALE_VERSION;

    // ValidationError and ParseError both mean bad input.
    static py::exception<mescale::ValidationError> validation(m, "ValidationError", PyExc_ValueError);
    static py::exception<mescale::SolverError> solver(m, "SolverError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const mescale::ValidationError& e) {
            PyErr_SetString(validation.ptr(), e.what());
        } catch (const mescale::ParseError& e) {
            PyErr_SetString(validation.ptr(), e.what());
        } catch (const json::exception& e) {
            PyErr_SetString(validation.ptr(), e.what());
        } catch (const mescale::SolverError& e) {
            PyErr_SetString(solver.ptr(), e.what());
        }
    });

    m.def("default_config", [] { return mescale::to_json(mescale::default_config()).dump(); });
    m.def("default_factors", [] {
        json j = json::array();
        for (const auto& f : mescale::default_factors()) j.push_back(mescale::to_json(f));
        return j.dump();
    });
    m.def("config_hash", [](const std::string& config) { return mescale::config_hash(config_or_default(config)); },
          py::arg("config") = "");
    m.def("metric_names", [] { return mescale::metric_names(); });

    m.def(
        "simulate",
        [](const std::string& config) {
            const auto cfg = config_or_default(config);
            mescale::validate(cfg);
            mescale::Trajectory t;
            {
                py::gil_scoped_release release;
                t = mescale::simulate(cfg);
            }
            json out{{"step_s", t.step_s}, {"columns", trajectory_columns(t)},
                     {"metrics", mescale::to_json(mescale::compute_metrics(t))}};
            return out.dump();
        },
        py::arg("config") = "");

    m.def(
        "design",
        [](const std::string& kind, const std::string& factors, std::size_t samples, bool second_order,
           const std::vector<std::string>& axes, std::size_t points) {
            const auto fs = factors_from_text(factors);
            switch (mescale::design_kind_from_string(kind)) {
                case mescale::DesignKind::Oat:
                    return mescale::to_json(mescale::oat_design(fs)).dump();
                case mescale::DesignKind::Saltelli:
                    return mescale::to_json(mescale::saltelli_design(fs, samples, second_order)).dump();
                case mescale::DesignKind::Grid:
                    return mescale::to_json(mescale::grid_design(fs, axes, points)).dump();
            }
            throw mescale::ValidationError("unknown design kind");
        },
        py::arg("kind"), py::arg("factors") = "", py::arg("samples") = 64, py::arg("second_order") = false,
        py::arg("axes") = std::vector<std::string>{}, py::arg("points") = 8);

    m.def(
        "run_campaign",
        [](const std::string& design, const std::string& config, const std::string& out_dir, std::size_t jobs,
           std::uint64_t seed, bool trajectories) {
            const auto d = mescale::design_from_json(json::parse(design));
            const auto cfg = config_or_default(config);
            mescale::CampaignOptions o;
            o.out_dir = out_dir;
            o.parallelism = jobs;
            o.seed = seed;
            o.write_trajectories = trajectories;
            mescale::CampaignResult r;
            {
                py::gil_scoped_release release;
                r = mescale::run_campaign(d, cfg, o);
            }
            return json{{"runs", r.runs.size()}, {"failed", r.failed_count()}, {"executed", r.executed},
                        {"resumed", r.resumed}, {"config_hash", r.provenance.config_hash}}
                .dump();
        },
        py::arg("design"), py::arg("config") = "", py::arg("out_dir"), py::arg("jobs") = 1, py::arg("seed") = 42,
        py::arg("trajectories") = false);

    m.def(
        "analyze",
        [](const std::string& kind, const std::string& runs, const std::string& metric, int degree,
           std::uint64_t seed, std::size_t resamples, bool strict) {
            const auto campaign = mescale::read_campaign(runs);
            if (kind == "sobol") {
                std::vector<std::string> metrics;
                if (!metric.empty()) metrics.push_back(metric);
                return mescale::to_json(mescale::analyze_sobol(campaign, seed, metrics, {resamples, 0.95})).dump();
            }
            if (kind == "oat") {
                return mescale::to_json(mescale::analyze_oat(campaign, !strict), campaign.design.factors).dump();
            }
            if (kind == "metamodel") {
                return mescale::to_json(mescale::analyze_metamodel(campaign, metric, degree)).dump();
            }
            throw mescale::ValidationError("unknown analysis kind '" + kind + "'");
        },
        py::arg("kind"), py::arg("runs"), py::arg("metric") = "", py::arg("degree") = 4, py::arg("seed") = 42,
        py::arg("resamples") = 1000, py::arg("strict") = false);

    m.def(
        "sobol_indices",
        [](std::size_t n, std::size_t k, bool second_order, const std::vector<double>& outputs, std::uint64_t seed,
           std::size_t resamples) {
            mescale::SaltelliMeta meta;
            meta.n = n;
            meta.k = k;
            meta.second_order = second_order;
            std::mt19937_64 rng(seed);
            const auto idx = mescale::sobol_indices(meta, outputs, rng, {resamples, 0.95});
            return py::dict(py::arg("s1") = idx.s1, py::arg("s1_conf") = idx.s1_conf, py::arg("st") = idx.st,
                            py::arg("st_conf") = idx.st_conf, py::arg("variance") = idx.variance);
        },
        py::arg("n"), py::arg("k"), py::arg("second_order"), py::arg("outputs"), py::arg("seed") = 42,
        py::arg("resamples") = 1000);

    m.def(
        "voltage_power_limit",
        [](double v1_pu, double kp, double v_ref_pu, double rated_kw) {
            return mescale::voltage_power_limit(v1_pu, {kp, v_ref_pu, rated_kw});
        },
        py::arg("v1_pu"), py::arg("kp"), py::arg("v_ref_pu"), py::arg("rated_kw"));

    m.def(
        "tank_volume_m3",
        [](double diameter_m, double height_m) {
            mescale::TankConfig c;
            c.inner_diameter_m = diameter_m;
            c.height_m = height_m;
            return mescale::make_tank(c).geometry.volume_m3();
        },
        py::arg("diameter_m"), py::arg("height_m") = 7.9);
}
