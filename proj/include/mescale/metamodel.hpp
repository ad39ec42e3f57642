#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mescale {

/// One input of a meta-model. Values in [lo, hi] map linearly onto [-1, 1].
struct MetaModelAxis {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;

    double normalize(double x) const { return (2.0 * x - lo - hi) / (hi - lo); }
};

/// Total-degree polynomial in the normalized inputs. Coefficients follow
/// graded order: constant, then all degree-1 monomials, then degree 2, and so
/// on; within a degree, higher powers of earlier axes come first
/// (x1^2, x1 x2, x2^2).
struct MetaModel {
    std::vector<MetaModelAxis> axes;
    int degree = 0;
    std::vector<double> coefficients;
    double r_squared = 0.0;
    double max_abs_residual = 0.0;
    double sse = 0.0;
    std::size_t samples = 0;
};

struct MetaModelPrediction {
    double y = 0.0;
    bool extrapolated = false;
};

/// Exponent tuples in coefficient order.
std::vector<std::vector<int>> monomial_exponents(std::size_t dims, int degree);

/// C(degree + dims, dims).
std::size_t coefficient_count(std::size_t dims, int degree);

/// Least-squares fit. `x` holds one row per sample with one entry per axis.
/// Throws ValidationError on malformed input and SolverError when the design
/// matrix is rank deficient.
MetaModel fit_metamodel(const std::vector<std::vector<double>>& x, std::span<const double> y,
                        const std::vector<MetaModelAxis>& axes, int degree);

MetaModelPrediction eval_metamodel(const MetaModel& model, std::span<const double> x);

/// Evaluates the model over the cartesian product of `points` (one vector per
/// axis), first axis outermost. Each row is (x1[, x2], y).
std::vector<std::vector<double>> surface(const MetaModel& model, const std::vector<std::vector<double>>& points);

/// `count` equally spaced points over each axis range.
std::vector<std::vector<double>> axis_points(const MetaModel& model, std::size_t count);

nlohmann::json to_json(const MetaModel& model);
MetaModel metamodel_from_json(const nlohmann::json& j);

}  // namespace mescale
