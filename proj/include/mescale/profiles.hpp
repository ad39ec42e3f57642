#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mescale/scenario.hpp"

namespace mescale {

/// Per-step exogenous inputs. Loads are in kW, PV is a fraction of peak.
struct Profiles {
    std::vector<double> timestamps_s;
    std::vector<double> pv_normalized;
    std::array<std::vector<double>, 2> electrical_load_kw;
    std::array<std::vector<double>, 2> heat_load_kw;

    std::size_t size() const { return timestamps_s.size(); }

    bool operator==(const Profiles&) const = default;
};

/// Checks equal lengths, pv in [0,1], non-negative loads.
void validate(const Profiles& profiles);

/// Deterministic synthetic week: clipped diurnal PV with daily cloudiness,
/// double-peak residential electrical load and outdoor-temperature driven
/// heat load, each with seeded noise.
Profiles synthetic_profiles(std::size_t steps, double step_s, std::uint64_t seed);

/// Header: timestamp,pv,load_el_1,load_el_2,load_th_1,load_th_2
Profiles read_profiles_csv(std::istream& in);
Profiles read_profiles_csv(const std::filesystem::path& path);
void write_profiles_csv(const Profiles& profiles, std::ostream& out);
void write_profiles_csv(const Profiles& profiles, const std::filesystem::path& path);

/// Synthetic or CSV profiles as selected by config.profiles (unscaled).
Profiles resolve_profiles(const BenchmarkConfig& config);

}  // namespace mescale
