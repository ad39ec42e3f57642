#include "mescale/sobol_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mescale/error.hpp"

namespace mescale {

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    // High word of the 128-bit product (multiply-shift reduction).
    const std::uint64_t x = rng();
    const std::uint64_t x_lo = x & 0xffffffffULL, x_hi = x >> 32;
    const std::uint64_t b_lo = bound & 0xffffffffULL, b_hi = bound >> 32;
    const std::uint64_t lo_lo = x_lo * b_lo;
    const std::uint64_t hi_lo = x_hi * b_lo;
    const std::uint64_t lo_hi = x_lo * b_hi;
    const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xffffffffULL) + lo_hi;
    return x_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
}

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        return std::nan("");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

namespace {

struct Estimate {
    double variance = 0.0;
    std::vector<double> s1;
    std::vector<double> st;
};

// `rows` lists base-sample indices (with repetition under the bootstrap).
Estimate estimate(const SaltelliMeta& meta, std::span<const double> y, std::span<const std::size_t> rows) {
    const std::size_t k = meta.k;
    const double count = static_cast<double>(rows.size());

    double mean = 0.0;
    for (std::size_t j : rows) {
        mean += y[meta.a_row(j)] + y[meta.b_row(j)];
    }
    mean /= 2.0 * count;
    double var = 0.0;
    for (std::size_t j : rows) {
        const double da = y[meta.a_row(j)] - mean;
        const double db = y[meta.b_row(j)] - mean;
        var += da * da + db * db;
    }
    var /= 2.0 * count;

    Estimate e;
    e.variance = var;
    e.s1.assign(k, 0.0);
    e.st.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double first = 0.0;
        double total = 0.0;
        for (std::size_t j : rows) {
            const double fa = y[meta.a_row(j)];
            const double fb = y[meta.b_row(j)];
            const double fab = y[meta.ab_row(i, j)];
            first += fb * (fab - fa);
            total += (fa - fab) * (fa - fab);
        }
        e.s1[i] = first / count / var;
        e.st[i] = total / count / (2.0 * var);
    }
    return e;
}

double half_width(std::vector<double>& samples, double confidence) {
    std::erase_if(samples, [](double v) { return !std::isfinite(v); });
    if (samples.empty()) {
        return 0.0;
    }
    std::sort(samples.begin(), samples.end());
    const double alpha = 0.5 * (1.0 - confidence);
    return 0.5 * (sorted_quantile(samples, 1.0 - alpha) - sorted_quantile(samples, alpha));
}

}  // namespace

SobolIndices sobol_indices(const SaltelliMeta& meta, std::span<const double> outputs, std::mt19937_64& rng,
                           const SobolOptions& options) {
    if (meta.n == 0 || meta.k == 0) {
        throw ValidationError("Saltelli layout needs n >= 1 and k >= 1");
    }
    if (outputs.size() != meta.run_count()) {
        throw ValidationError("output count " + std::to_string(outputs.size()) +
                              " does not match Saltelli layout of " + std::to_string(meta.run_count()) + " runs");
    }
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (!std::isfinite(outputs[i])) {
            throw ValidationError("non-finite output at run " + std::to_string(i));
        }
    }
    if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
        throw ValidationError("confidence level must lie in (0, 1)");
    }

    std::vector<std::size_t> rows(meta.n);
    for (std::size_t j = 0; j < meta.n; ++j) {
        rows[j] = j;
    }
    const Estimate point = estimate(meta, outputs, rows);
    if (!(point.variance > 0.0)) {
        throw SolverError("zero output variance");
    }

    SobolIndices out;
    out.factors = meta.factors;
    out.n = meta.n;
    out.k = meta.k;
    out.variance = point.variance;
    out.s1 = point.s1;
    out.st = point.st;

    std::vector<std::vector<double>> s1_boot(meta.k);
    std::vector<std::vector<double>> st_boot(meta.k);
    for (auto& v : s1_boot) v.reserve(options.resamples);
    for (auto& v : st_boot) v.reserve(options.resamples);
    std::vector<std::size_t> draw(meta.n);
    for (std::size_t b = 0; b < options.resamples; ++b) {
        for (auto& idx : draw) {
            idx = static_cast<std::size_t>(uniform_index(rng, meta.n));
        }
        const Estimate e = estimate(meta, outputs, draw);
        for (std::size_t i = 0; i < meta.k; ++i) {
            s1_boot[i].push_back(e.s1[i]);
            st_boot[i].push_back(e.st[i]);
        }
    }
    out.s1_conf.resize(meta.k);
    out.st_conf.resize(meta.k);
    for (std::size_t i = 0; i < meta.k; ++i) {
        out.s1_conf[i] = half_width(s1_boot[i], options.confidence);
        out.st_conf[i] = half_width(st_boot[i], options.confidence);
        if (out.st[i] < out.s1[i] - out.s1_conf[i] - out.st_conf[i]) {
            const std::string name = i < out.factors.size() ? out.factors[i] : std::to_string(i);
            out.warnings.push_back("ST below S1 beyond confidence for factor '" + name + "'");
        }
    }
    return out;
}

nlohmann::json to_json(const SobolResult& r) {
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& [name, idx] : r.metrics) {
        nlohmann::json per_factor = nlohmann::json::object();
        for (std::size_t i = 0; i < idx.k; ++i) {
            per_factor[idx.factors[i]] = {
                {"s1", idx.s1[i]}, {"s1_conf", idx.s1_conf[i]}, {"st", idx.st[i]}, {"st_conf", idx.st_conf[i]}};
        }
        metrics[name] = {{"variance", idx.variance}, {"indices", per_factor}, {"warnings", idx.warnings}};
    }
    return {{"kind", "sobol"}, {"n", r.n}, {"k", r.k}, {"factors", r.factors}, {"metrics", metrics}};
}

SobolResult sobol_result_from_json(const nlohmann::json& j) {
    try {
        SobolResult r;
        r.n = j.at("n").get<std::size_t>();
        r.k = j.at("k").get<std::size_t>();
        r.factors = j.at("factors").get<std::vector<std::string>>();
        for (const auto& [name, m] : j.at("metrics").items()) {
            SobolIndices idx;
            idx.factors = r.factors;
            idx.n = r.n;
            idx.k = r.k;
            idx.variance = m.at("variance").get<double>();
            for (const auto& f : r.factors) {
                const auto& e = m.at("indices").at(f);
                idx.s1.push_back(e.at("s1").get<double>());
                idx.s1_conf.push_back(e.at("s1_conf").get<double>());
                idx.st.push_back(e.at("st").get<double>());
                idx.st_conf.push_back(e.at("st_conf").get<double>());
            }
            if (m.contains("warnings")) {
                idx.warnings = m.at("warnings").get<std::vector<std::string>>();
            }
            r.metrics[name] = std::move(idx);
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("sobol analysis json: ") + e.what());
    }
}

}  // namespace mescale
