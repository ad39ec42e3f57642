#include "mescale/metamodel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mescale/error.hpp"

namespace mescale {

namespace {

// All exponent tuples of `dims` entries summing to `total`, earlier axes
// taking the larger powers first.
void compositions(std::size_t dims, int total, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (current.size() + 1 == dims) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int p = total; p >= 0; --p) {
        current.push_back(p);
        compositions(dims, total - p, current, out);
        current.pop_back();
    }
}

double monomial(std::span<const double> z, const std::vector<int>& exps) {
    double v = 1.0;
    for (std::size_t a = 0; a < exps.size(); ++a) {
        for (int p = 0; p < exps[a]; ++p) {
            v *= z[a];
        }
    }
    return v;
}

void check_axes(const std::vector<MetaModelAxis>& axes) {
    if (axes.empty() || axes.size() > 2) {
        throw ValidationError("meta-model needs one or two axes");
    }
    for (const auto& a : axes) {
        if (!(a.hi > a.lo)) {
            throw ValidationError("meta-model axis '" + a.name + "' needs hi > lo");
        }
    }
}

}  // namespace

std::vector<std::vector<int>> monomial_exponents(std::size_t dims, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    for (int total = 0; total <= degree; ++total) {
        compositions(dims, total, current, out);
    }
    return out;
}

std::size_t coefficient_count(std::size_t dims, int degree) {
    // C(degree + dims, dims) computed incrementally to stay exact.
    std::size_t c = 1;
    for (std::size_t i = 1; i <= dims; ++i) {
        c = c * (static_cast<std::size_t>(degree) + i) / i;
    }
    return c;
}

MetaModel fit_metamodel(const std::vector<std::vector<double>>& x, std::span<const double> y,
                        const std::vector<MetaModelAxis>& axes, int degree) {
    check_axes(axes);
    if (degree < 0) {
        throw ValidationError("meta-model degree must be non-negative");
    }
    if (x.size() != y.size()) {
        throw ValidationError("meta-model inputs and outputs differ in length");
    }
    const auto exps = monomial_exponents(axes.size(), degree);
    const std::size_t p = exps.size();
    if (x.size() < p) {
        throw ValidationError("meta-model of degree " + std::to_string(degree) + " needs at least " +
                              std::to_string(p) + " samples, got " + std::to_string(x.size()));
    }

    Eigen::MatrixXd design(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(p));
    Eigen::VectorXd target(static_cast<Eigen::Index>(y.size()));
    std::vector<double> z(axes.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (x[r].size() != axes.size()) {
            throw ValidationError("sample " + std::to_string(r) + " has the wrong number of inputs");
        }
        if (!std::isfinite(y[r])) {
            throw ValidationError("sample " + std::to_string(r) + " has a non-finite output");
        }
        for (std::size_t a = 0; a < axes.size(); ++a) {
            z[a] = axes[a].normalize(x[r][a]);
        }
        for (std::size_t c = 0; c < p; ++c) {
            design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = monomial(z, exps[c]);
        }
        target(static_cast<Eigen::Index>(r)) = y[r];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (static_cast<std::size_t>(qr.rank()) < p) {
        throw SolverError("rank-deficient design matrix: rank " + std::to_string(qr.rank()) + " < " +
                          std::to_string(p) + " coefficients (too few distinct sample points for degree " +
                          std::to_string(degree) + ")");
    }
    const Eigen::VectorXd coef = qr.solve(target);
    const Eigen::VectorXd residual = target - design * coef;

    MetaModel m;
    m.axes = axes;
    m.degree = degree;
    m.coefficients.assign(coef.data(), coef.data() + coef.size());
    m.samples = x.size();
    m.sse = residual.squaredNorm();
    m.max_abs_residual = residual.cwiseAbs().maxCoeff();
    const double mean = target.mean();
    const double sst = (target.array() - mean).square().sum();
    m.r_squared = sst > 0.0 ? 1.0 - m.sse / sst : (m.sse <= 1e-18 ? 1.0 : 0.0);
    return m;
}

MetaModelPrediction eval_metamodel(const MetaModel& model, std::span<const double> x) {
    if (x.size() != model.axes.size()) {
        throw ValidationError("meta-model expects " + std::to_string(model.axes.size()) + " inputs");
    }
    const auto exps = monomial_exponents(model.axes.size(), model.degree);
    if (exps.size() != model.coefficients.size()) {
        throw ValidationError("meta-model coefficient count does not match its degree");
    }
    MetaModelPrediction out;
    std::vector<double> z(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        z[a] = model.axes[a].normalize(x[a]);
        if (z[a] < -1.0 - 1e-12 || z[a] > 1.0 + 1e-12) {
            out.extrapolated = true;
        }
    }
    for (std::size_t c = 0; c < exps.size(); ++c) {
        out.y += model.coefficients[c] * monomial(z, exps[c]);
    }
    return out;
}

std::vector<std::vector<double>> surface(const MetaModel& model, const std::vector<std::vector<double>>& points) {
    if (points.size() != model.axes.size()) {
        throw ValidationError("surface needs one point list per axis");
    }
    std::vector<std::vector<double>> rows;
    if (points.size() == 1) {
        for (double a : points[0]) {
            const double in[] = {a};
            rows.push_back({a, eval_metamodel(model, in).y});
        }
    } else {
        for (double a : points[0]) {
            for (double b : points[1]) {
                const double in[] = {a, b};
                rows.push_back({a, b, eval_metamodel(model, in).y});
            }
        }
    }
    return rows;
}

std::vector<std::vector<double>> axis_points(const MetaModel& model, std::size_t count) {
    if (count < 2) {
        throw ValidationError("need at least two points per axis");
    }
    std::vector<std::vector<double>> out;
    for (const auto& a : model.axes) {
        std::vector<double> pts(count);
        for (std::size_t i = 0; i < count; ++i) {
            pts[i] = a.lo + (a.hi - a.lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        out.push_back(std::move(pts));
    }
    return out;
}

nlohmann::json to_json(const MetaModel& model) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& a : model.axes) {
        axes.push_back({{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}});
    }
    return {{"kind", "metamodel"},
            {"axes", axes},
            {"degree", model.degree},
            {"exponents", monomial_exponents(model.axes.size(), model.degree)},
            {"coefficients", model.coefficients},
            {"stats",
             {{"r_squared", model.r_squared},
              {"max_abs_residual", model.max_abs_residual},
              {"sse", model.sse},
              {"samples", model.samples}}}};
}

MetaModel metamodel_from_json(const nlohmann::json& j) {
    try {
        MetaModel m;
        for (const auto& a : j.at("axes")) {
            m.axes.push_back({a.at("name").get<std::string>(), a.at("lo").get<double>(), a.at("hi").get<double>()});
        }
        check_axes(m.axes);
        m.degree = j.at("degree").get<int>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        if (m.coefficients.size() != coefficient_count(m.axes.size(), m.degree)) {
            throw ValidationError("meta-model json: coefficient count does not match degree");
        }
        const auto& s = j.at("stats");
        m.r_squared = s.at("r_squared").get<double>();
        m.max_abs_residual = s.at("max_abs_residual").get<double>();
        m.sse = s.value("sse", 0.0);
        m.samples = s.value("samples", std::size_t{0});
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("meta-model json: ") + e.what());
    }
}

}  // namespace mescale
