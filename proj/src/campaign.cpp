#include "mescale/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mescale/error.hpp"
#include "mescale/simulator.hpp"
#include "mescale/text.hpp"

namespace mescale {

namespace fs = std::filesystem;
using nlohmann::json;

bool CampaignResult::complete() const {
    return std::none_of(runs.begin(), runs.end(), [](const RunResult& r) { return r.status == RunStatus::Pending; });
}

std::size_t CampaignResult::failed_count() const {
    return static_cast<std::size_t>(
        std::count_if(runs.begin(), runs.end(), [](const RunResult& r) { return r.status == RunStatus::Failed; }));
}

std::vector<std::optional<double>> CampaignResult::metric_column(const std::string& metric) const {
    std::vector<std::optional<double>> out;
    out.reserve(runs.size());
    for (const auto& r : runs) {
        if (r.status == RunStatus::Ok && r.metrics) {
            out.emplace_back(metric_value(*r.metrics, metric));
        } else {
            out.emplace_back();
        }
    }
    return out;
}

std::uint64_t run_seed(std::uint64_t campaign_seed, std::uint64_t run_id) {
    // splitmix64 finalizer over a combination of both inputs.
    std::uint64_t z = campaign_seed + 0x9e3779b97f4a7c15ULL * (run_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::string run_stem(std::uint64_t run_id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "run_%06llu", static_cast<unsigned long long>(run_id));
    return buf;
}

std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = ';';
        }
    }
    return text;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << text;
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

json manifest_json(const CampaignDesign& design, const Provenance& p) {
    return {{"config_hash", p.config_hash}, {"seed", p.seed}, {"tool", p.tool_version}, {"design", to_json(design)}};
}

json marker_json(const RunResult& r, const std::string& hash) {
    json j{{"run_id", r.run_id},
           {"config_hash", hash},
           {"seed", r.seed},
           {"status", r.status == RunStatus::Ok ? "ok" : "failed"},
           {"reason", r.reason}};
    j["metrics"] = r.metrics ? to_json(*r.metrics) : json(nullptr);
    return j;
}

// A marker from an interrupted write or an older campaign is treated as absent.
std::optional<RunResult> read_marker(const fs::path& path, std::uint64_t run_id, const std::string& hash) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    try {
        const json j = json::parse(in);
        if (j.at("run_id").get<std::uint64_t>() != run_id || j.at("config_hash").get<std::string>() != hash) {
            return std::nullopt;
        }
        RunResult r;
        r.run_id = run_id;
        r.seed = j.at("seed").get<std::uint64_t>();
        r.reason = j.at("reason").get<std::string>();
        const auto status = j.at("status").get<std::string>();
        if (status == "ok") {
            std::vector<double> values;
            for (const auto& name : metric_names()) {
                values.push_back(j.at("metrics").at(name).get<double>());
            }
            r.status = RunStatus::Ok;
            r.metrics = metrics_from_values(values);
        } else if (status == "failed") {
            r.status = RunStatus::Failed;
        } else {
            return std::nullopt;
        }
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string status_text(const RunResult& r) {
    switch (r.status) {
        case RunStatus::Ok:
            return "ok";
        case RunStatus::Failed:
            return "failed: " + sanitize(r.reason);
        case RunStatus::Pending:
            break;
    }
    return "pending";
}

}  // namespace

RunResult run_single(const BenchmarkConfig& base_config, const Profiles& profiles, const Recipe& recipe,
                     std::uint64_t seed, const fs::path* trajectory_path) {
    RunResult r;
    r.run_id = recipe.run_id;
    r.seed = seed;
    try {
        const BenchmarkConfig config = apply_recipe(base_config, recipe);
        validate(config);
        const Trajectory traj = simulate(config, profiles);
        const MetricSet m = compute_metrics(traj);
        for (double v : metric_values(m)) {
            if (!std::isfinite(v)) {
                throw SolverError("non-finite metric value");
            }
        }
        if (trajectory_path != nullptr) {
            write_trajectory_csv(traj, *trajectory_path);
        }
        r.status = RunStatus::Ok;
        r.metrics = m;
    } catch (const std::exception& e) {
        r.status = RunStatus::Failed;
        r.reason = e.what();
    }
    return r;
}

CampaignResult run_campaign(const CampaignDesign& design, const BenchmarkConfig& base_config,
                            const CampaignOptions& options) {
    validate(design);
    validate(base_config);
    if (options.out_dir.empty()) {
        throw ValidationError("campaign needs an output directory");
    }
    const auto& catalog = factor_catalog();
    for (const auto& f : design.factors) {
        if (std::find(catalog.begin(), catalog.end(), f.name) == catalog.end()) {
            throw ValidationError("design factor '" + f.name + "' does not bind to any configuration field");
        }
    }
    auto log = [&](const std::string& msg) {
        if (options.log) {
            options.log(msg);
        }
    };

    CampaignResult result;
    result.design = design;
    result.provenance.config_hash = config_hash(base_config);
    result.provenance.seed = options.seed;
    const std::string& hash = result.provenance.config_hash;

    const fs::path runs_dir = options.out_dir / "runs";
    std::error_code ec;
    fs::create_directories(runs_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + runs_dir.string() + ": " + ec.message());
    }

    const fs::path manifest_path = options.out_dir / "design.json";
    const json manifest = manifest_json(design, result.provenance);
    if (fs::exists(manifest_path)) {
        const json existing = read_json_file(manifest_path);
        if (existing.value("config_hash", std::string()) != hash || existing.value("seed", std::uint64_t{0}) != options.seed ||
            existing.value("design", json()) != manifest.at("design")) {
            throw ValidationError("output directory " + options.out_dir.string() +
                                  " holds a different campaign (design, config or seed mismatch)");
        }
    } else {
        write_text_atomic(manifest_path, manifest.dump(2) + "\n");
    }
    write_recipes(design.recipes, options.out_dir / "recipes.json");
    save_config(base_config, options.out_dir / "config.json");

    result.runs.resize(design.recipes.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < design.recipes.size(); ++i) {
        const auto id = design.recipes[i].run_id;
        if (auto done = read_marker(runs_dir / (run_stem(id) + ".json"), id, hash)) {
            result.runs[i] = std::move(*done);
            ++result.resumed;
        } else {
            result.runs[i].run_id = id;
            result.runs[i].seed = run_seed(options.seed, id);
            todo.push_back(i);
        }
    }
    if (options.max_new_runs && todo.size() > *options.max_new_runs) {
        todo.resize(*options.max_new_runs);
    }
    log("campaign: " + std::to_string(design.recipes.size()) + " runs, " + std::to_string(result.resumed) +
        " already done, " + std::to_string(todo.size()) + " to simulate");

    const Profiles profiles = resolve_profiles(base_config);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr io_error;
    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= todo.size()) {
                return;
            }
            const std::size_t i = todo[t];
            const Recipe& recipe = design.recipes[i];
            const std::string stem = run_stem(recipe.run_id);
            try {
                const fs::path traj = runs_dir / (stem + "_trajectory.csv");
                RunResult r = run_single(base_config, profiles, recipe, run_seed(options.seed, recipe.run_id),
                                         options.write_trajectories ? &traj : nullptr);
                write_text_atomic(runs_dir / (stem + ".json"), marker_json(r, hash).dump(2) + "\n");
                result.runs[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!io_error) {
                    io_error = std::current_exception();
                }
                next.store(todo.size());
                return;
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(options.parallelism, 1, std::max<std::size_t>(todo.size(), 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (io_error) {
        std::rethrow_exception(io_error);
    }
    result.executed = todo.size();

    for (const auto& r : result.runs) {
        if (r.status == RunStatus::Failed) {
            log("run " + std::to_string(r.run_id) + " failed: " + r.reason);
        }
    }
    if (result.complete()) {
        std::ostringstream csv;
        write_results_csv(result, csv);
        write_text_atomic(options.out_dir / "results.csv", csv.str());
        log("campaign: results written, " + std::to_string(result.failed_count()) + " failed");
    } else {
        log("campaign: stopped with runs pending; re-run to resume");
    }
    return result;
}

void write_results_csv(const CampaignResult& result, std::ostream& out) {
    out << "# config_hash=" << result.provenance.config_hash << ";seed=" << result.provenance.seed
        << ";tool=" << result.provenance.tool_version << ";design=" << to_string(result.design.kind) << "\n";
    out << "run_id";
    for (const auto& f : result.design.factors) {
        out << ',' << f.name;
    }
    for (const auto& m : metric_names()) {
        out << ',' << m;
    }
    out << ",status\n";
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        const auto& r = result.runs[i];
        const auto& recipe = result.design.recipes.at(i);
        out << r.run_id;
        for (const auto& f : result.design.factors) {
            const auto it = recipe.assignments.find(f.name);
            out << ',' << (it == recipe.assignments.end() ? format_double(f.base) : format_double(it->second));
        }
        for (const auto& m : metric_names()) {
            out << ',';
            if (r.status == RunStatus::Ok && r.metrics) {
                out << format_double(metric_value(*r.metrics, m));
            }
        }
        out << ',' << status_text(r) << '\n';
    }
}

CampaignResult read_campaign(const fs::path& dir, const std::optional<std::string>& expected_hash) {
    const json manifest = read_json_file(dir / "design.json");
    CampaignResult result;
    try {
        result.design = design_from_json(manifest.at("design"));
        result.provenance.config_hash = manifest.at("config_hash").get<std::string>();
        result.provenance.seed = manifest.at("seed").get<std::uint64_t>();
        result.provenance.tool_version = manifest.value("tool", std::string(kToolVersion));
    } catch (const json::exception& e) {
        throw ValidationError("design.json: " + std::string(e.what()));
    }
    if (expected_hash && *expected_hash != result.provenance.config_hash) {
        throw ValidationError("campaign in " + dir.string() + " was run with config hash " +
                              result.provenance.config_hash + ", expected " + *expected_hash);
    }

    const fs::path csv_path = dir / "results.csv";
    std::ifstream in(csv_path);
    if (!in) {
        throw ValidationError("cannot read " + csv_path.string() + " (campaign incomplete?)");
    }
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) {
            return false;
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return true;
    };
    if (!next_line() || !line.starts_with("# ")) {
        throw ParseError("results.csv: missing provenance comment", line_no);
    }
    std::string file_hash;
    for (const auto& part : split(std::string_view(line).substr(2), ';')) {
        if (part.starts_with("config_hash=")) {
            file_hash = part.substr(12);
        }
    }
    if (file_hash != result.provenance.config_hash) {
        throw ValidationError("results.csv config hash " + file_hash + " does not match design.json hash " +
                              result.provenance.config_hash);
    }

    std::vector<std::string> expected{"run_id"};
    for (const auto& f : result.design.factors) {
        expected.push_back(f.name);
    }
    for (const auto& m : metric_names()) {
        expected.push_back(m);
    }
    expected.push_back("status");
    if (!next_line() || split(line, ',') != expected) {
        throw ParseError("results.csv: unexpected header", line_no);
    }

    const std::size_t factor_cols = result.design.factors.size();
    const std::size_t metric_cols = metric_names().size();
    while (next_line()) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != expected.size()) {
            throw ParseError("results.csv: expected " + std::to_string(expected.size()) + " columns", line_no);
        }
        RunResult r;
        const double id = parse_double(cells[0]);
        if (id < 0 || id != std::floor(id)) {
            throw ParseError("results.csv: bad run_id", line_no);
        }
        r.run_id = static_cast<std::uint64_t>(id);
        r.seed = run_seed(result.provenance.seed, r.run_id);
        const std::string& status = cells.back();
        if (status == "ok") {
            std::vector<double> values;
            for (std::size_t c = 0; c < metric_cols; ++c) {
                values.push_back(parse_double(cells[1 + factor_cols + c]));
            }
            r.status = RunStatus::Ok;
            r.metrics = metrics_from_values(values);
        } else if (status.starts_with("failed")) {
            r.status = RunStatus::Failed;
            r.reason = status.size() > 8 ? status.substr(8) : "";
        } else {
            throw ParseError("results.csv: unknown status '" + status + "'", line_no);
        }
        result.runs.push_back(std::move(r));
    }
    if (result.runs.size() != result.design.recipes.size()) {
        throw ValidationError("results.csv has " + std::to_string(result.runs.size()) + " rows, design has " +
                              std::to_string(result.design.recipes.size()) + " runs");
    }
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        if (result.runs[i].run_id != result.design.recipes[i].run_id) {
            throw ValidationError("results.csv rows are not aligned with the design run ids");
        }
    }
    return result;
}

}  // namespace mescale
