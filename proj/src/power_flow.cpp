#include "mescale/power_flow.hpp"

#include <cmath>
#include <sstream>

#include "mescale/error.hpp"

namespace mescale {

ElectricalState solve_radial_power_flow(const RadialFeeder& feeder,
                                        std::span<const std::complex<double>> injections_kva,
                                        const SweepOptions& options) {
    using cd = std::complex<double>;
    const std::size_t lines = feeder.lines.size();
    if (lines == 0) {
        throw ValidationError("feeder needs at least one line");
    }
    if (injections_kva.size() != lines) {
        throw ValidationError("expected one injection per non-slack bus");
    }

    const double z_base = feeder.base_impedance_ohm();
    std::vector<cd> z(lines);
    for (std::size_t i = 0; i < lines; ++i) {
        z[i] = cd(feeder.lines[i].r_ohm, feeder.lines[i].x_ohm) / z_base;
    }
    // Load convention inside the sweep: s_load = -injection.
    std::vector<cd> s_load(lines + 1, cd{});
    for (std::size_t b = 1; b <= lines; ++b) {
        s_load[b] = -injections_kva[b - 1] / kBasePowerKva;
    }

    std::vector<cd> v(lines + 1, cd(feeder.slack_voltage_pu, 0.0));
    std::vector<cd> branch(lines);

    auto backward = [&] {
        cd downstream{};
        for (std::size_t b = lines; b >= 1; --b) {
            downstream += std::conj(s_load[b] / v[b]);
            branch[b - 1] = downstream;
        }
    };

    double residual = 0.0;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        backward();
        residual = 0.0;
        for (std::size_t b = 1; b <= lines; ++b) {
            const cd updated = v[b - 1] - z[b - 1] * branch[b - 1];
            residual = std::max(residual, std::abs(updated - v[b]));
            v[b] = updated;
        }
        if (!std::isfinite(residual)) {
            throw SolverError("power flow diverged (voltage collapse)");
        }
        for (std::size_t b = 1; b <= lines; ++b) {
            if (std::abs(v[b]) < 0.05) {
                throw SolverError("power flow voltage collapse at bus " + std::to_string(b));
            }
        }
        if (residual < options.tolerance_pu) {
            break;
        }
    }
    if (residual >= options.tolerance_pu) {
        std::ostringstream msg;
        msg << "power flow did not converge after " << options.max_iterations
            << " iterations (last residual " << residual << " pu)";
        throw SolverError(msg.str());
    }
    backward();

    ElectricalState state;
    state.voltage_pu = v;
    state.iterations = iter + 1;
    state.line_flow_kva.resize(lines);
    state.line_sending_kva.resize(lines);
    for (std::size_t i = 0; i < lines; ++i) {
        const cd sending = v[i] * std::conj(branch[i]) * kBasePowerKva;
        state.line_sending_kva[i] = sending;
        state.line_flow_kva[i] = std::abs(sending);
        state.losses_kw += std::norm(branch[i]) * z[i].real() * kBasePowerKva;
    }
    state.slack_import_kva = state.line_sending_kva[0];
    return state;
}

}  // namespace mescale
