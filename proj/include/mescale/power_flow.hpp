#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mescale {

/// Per-unit power base used by the feeder model.
inline constexpr double kBasePowerKva = 100.0;

struct FeederLine {
    double r_ohm = 0.0;
    double x_ohm = 0.0;
    double rating_kva = 0.0;
};

/// Chain feeder: bus 0 is the slack, line i connects bus i to bus i+1.
struct RadialFeeder {
    double nominal_voltage_v = 400.0;
    double slack_voltage_pu = 1.0;
    std::vector<FeederLine> lines;

    std::size_t bus_count() const { return lines.size() + 1; }
    double base_impedance_ohm() const { return nominal_voltage_v * nominal_voltage_v / (kBasePowerKva * 1e3); }
};

struct SweepOptions {
    double tolerance_pu = 1e-8;
    int max_iterations = 100;
};

struct ElectricalState {
    /// Complex per-unit voltages including the slack bus at index 0.
    std::vector<std::complex<double>> voltage_pu;
    /// Apparent power at the sending end of each line (kVA).
    std::vector<double> line_flow_kva;
    /// Sending-end complex power of each line (kW + j kvar).
    std::vector<std::complex<double>> line_sending_kva;
    /// Power drawn from the upstream grid (positive = import).
    std::complex<double> slack_import_kva;
    double losses_kw = 0.0;
    int iterations = 0;
};

/// Backward/forward sweep with constant-power injections given in kVA,
/// generation positive, one entry per non-slack bus. Throws SolverError if
/// the sweep has not converged after `max_iterations` (message carries the
/// last residual) or the voltages collapse.
ElectricalState solve_radial_power_flow(const RadialFeeder& feeder,
                                        std::span<const std::complex<double>> injections_kva,
                                        const SweepOptions& options = {});

}  // namespace mescale
