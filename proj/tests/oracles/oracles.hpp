#pragma once

// Reference implementations for tests. Nothing here includes or links the
// production library; every formula is derived again from first principles.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

struct OracleReport {
    std::string case_name;
    std::vector<double> reference;
    std::vector<double> candidate;
    double tolerance = 0.0;
    bool pass = false;
    /// Largest element-wise |reference - candidate| (infinite on length mismatch).
    double max_error = 0.0;

    std::string summary() const;
};

OracleReport compare(std::string case_name, std::vector<double> reference, std::vector<double> candidate,
                     double tolerance);

// --- Sensitivity analysis -------------------------------------------------

struct IshigamiIndices {
    std::array<double, 3> s1{};
    std::array<double, 3> st{};
    double variance = 0.0;
};

/// Closed-form variance decomposition of
/// f = sin x1 + a sin^2 x2 + b x3^4 sin x1 on [-pi, pi]^3.
IshigamiIndices ishigami_analytic(double a, double b);
double ishigami(double x1, double x2, double x3, double a, double b);

// --- Electrical -------------------------------------------------------------

/// Receiving-end voltage magnitude of a source V0 feeding a load P + jQ
/// through R + jX (consistent units). Throws std::domain_error past the
/// loadability limit.
double two_bus_voltage(double p, double q, double r, double x, double v0);

/// Full Newton-Raphson in polar coordinates on a chain slack-1-2. Impedances
/// and injections in per unit (injection positive = generation). Returns bus
/// voltages 0..2.
std::array<std::complex<double>, 3> newton_three_bus(std::complex<double> z01, std::complex<double> z12,
                                                     std::complex<double> s1, std::complex<double> s2, double v0 = 1.0);

// --- Thermal ----------------------------------------------------------------

/// Outlet temperature by marching `segments` slices of the pipe, each slice
/// losing heat at its inlet temperature (converges to the exponential law).
double pipe_outlet_marching(double t_in, double mdot, double length_m, double loss_w_per_mk, double t_ground,
                            double cp, std::size_t segments);

double cylinder_volume_m3(double diameter_m, double height_m);
/// Sensible heat of `volume_m3` of water over `delta_k`, in kWh.
double sensible_heat_kwh(double volume_m3, double delta_k, double density = 1000.0, double cp = 4186.0);

/// Carnot-fraction COP with the [1, 8] clamp, temperatures in Celsius.
double heat_pump_cop(double eta, double t_evap_c, double t_cond_c);

// --- Sampling -----------------------------------------------------------------

/// Exact star discrepancy of a 2-D point set by enumerating every anchored box
/// whose corner coordinates come from the points (or 1).
double star_discrepancy_2d(const std::vector<std::array<double, 2>>& points);

/// Every inclusive, equally spaced grid point over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t points);

/// Expected OAT recipe list: base, then (min, max) per factor.
struct OatFactor {
    std::string name;
    double min, base, max;
};
std::vector<std::map<std::string, double>> oat_enumeration(const std::vector<OatFactor>& factors);

/// Ranks by brute force: 1 + number of factors that beat this one (higher
/// score, or equal score and smaller name).
std::map<std::string, int> brute_force_ranks(const std::map<std::string, double>& scores);

/// Population variance, two-pass.
double population_variance(const std::vector<double>& values);

// --- Reference sequences ------------------------------------------------------

/// First points of the 2-D Sobol sequence in Gray-code order written out from
/// the published direction numbers (dimension 2: primitive polynomial x + 1,
/// m = 1). Includes the origin as point 0.
std::vector<std::array<double, 2>> sobol_2d_reference(std::size_t count);

/// 64-bit splitmix stream for test-side random data.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace oracle
