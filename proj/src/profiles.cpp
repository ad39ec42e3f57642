#include "mescale/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "mescale/error.hpp"
#include "mescale/text.hpp"

namespace mescale {

namespace {

constexpr const char* kHeader = "timestamp,pv,load_el_1,load_el_2,load_th_1,load_th_2";

// Synthetic neighbourhood magnitudes (kW).
constexpr std::array<double, 2> kElectricalBaseKw{100.0, 60.0};
constexpr std::array<double, 2> kHeatPeakKw{200.0, 120.0};

// Platform-independent uniform in [0, 1) from the raw engine output.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double bump(double hour, double centre, double width) {
    const double z = (hour - centre) / width;
    return std::exp(-0.5 * z * z);
}

}  // namespace

void validate(const Profiles& p) {
    const std::size_t n = p.timestamps_s.size();
    auto same = [n](const std::vector<double>& v) { return v.size() == n; };
    if (!same(p.pv_normalized) || !same(p.electrical_load_kw[0]) || !same(p.electrical_load_kw[1]) ||
        !same(p.heat_load_kw[0]) || !same(p.heat_load_kw[1])) {
        throw ValidationError("profile series must all have the same length");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(p.pv_normalized[i] >= 0.0 && p.pv_normalized[i] <= 1.0)) {
            throw ValidationError("pv value outside [0, 1] at row " + std::to_string(i));
        }
        for (int c = 0; c < 2; ++c) {
            if (!(p.electrical_load_kw[c][i] >= 0.0) || !(p.heat_load_kw[c][i] >= 0.0)) {
                throw ValidationError("negative load at row " + std::to_string(i));
            }
        }
    }
}

Profiles synthetic_profiles(std::size_t steps, double step_s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Profiles p;
    p.timestamps_s.reserve(steps);
    p.pv_normalized.reserve(steps);
    for (int c = 0; c < 2; ++c) {
        p.electrical_load_kw[c].reserve(steps);
        p.heat_load_kw[c].reserve(steps);
    }

    long current_day = -1;
    double cloudiness = 1.0;
    double day_temperature_offset = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        const double seconds = static_cast<double>(t) * step_s;
        const long day = static_cast<long>(seconds / 86400.0);
        const double hour = std::fmod(seconds / 3600.0, 24.0);
        if (day != current_day) {
            current_day = day;
            cloudiness = 0.55 + 0.45 * uniform01(rng);
            day_temperature_offset = 4.0 * uniform01(rng) - 2.0;
        }

        double sun = 0.0;
        if (hour > 6.0 && hour < 18.0) {
            sun = std::sin(std::numbers::pi * (hour - 6.0) / 12.0);
        }
        const double pv_noise = 1.0 + 0.05 * (2.0 * uniform01(rng) - 1.0);
        p.timestamps_s.push_back(seconds);
        p.pv_normalized.push_back(std::clamp(sun * cloudiness * pv_noise, 0.0, 1.0));

        const double el_shape = 0.45 + 0.35 * bump(hour, 7.5, 1.2) + 0.6 * bump(hour, 19.0, 1.8);
        const double outdoor_c =
            6.0 + day_temperature_offset + 4.0 * std::sin(2.0 * std::numbers::pi * (hour - 9.0) / 24.0);
        const double heat_shape =
            std::max(0.0, 18.0 - outdoor_c) / 20.0 + 0.15 * (bump(hour, 7.0, 1.0) + bump(hour, 20.0, 1.5));
        for (int c = 0; c < 2; ++c) {
            const double el_noise = 1.0 + 0.05 * (2.0 * uniform01(rng) - 1.0);
            const double heat_noise = 1.0 + 0.05 * (2.0 * uniform01(rng) - 1.0);
            p.electrical_load_kw[c].push_back(kElectricalBaseKw[c] * el_shape * el_noise);
            p.heat_load_kw[c].push_back(kHeatPeakKw[c] * heat_shape * heat_noise);
        }
    }
    return p;
}

Profiles read_profiles_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("profiles csv: missing header", 1);
    }
    ++line_no;
    if (trim(line) != kHeader) {
        throw ParseError("profiles csv: expected header '" + std::string(kHeader) + "'", 1);
    }
    Profiles p;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 6) {
            throw ParseError("profiles csv line " + std::to_string(line_no) + ": expected 6 columns",
                             line_no);
        }
        std::array<double, 6> v{};
        try {
            for (std::size_t i = 0; i < 6; ++i) {
                v[i] = parse_double(cells[i]);
            }
        } catch (const ParseError& e) {
            throw ParseError("profiles csv line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
        p.timestamps_s.push_back(v[0]);
        p.pv_normalized.push_back(v[1]);
        p.electrical_load_kw[0].push_back(v[2]);
        p.electrical_load_kw[1].push_back(v[3]);
        p.heat_load_kw[0].push_back(v[4]);
        p.heat_load_kw[1].push_back(v[5]);
    }
    validate(p);
    return p;
}

Profiles read_profiles_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open profiles '" + path.string() + "'");
    }
    return read_profiles_csv(in);
}

void write_profiles_csv(const Profiles& p, std::ostream& out) {
    out << kHeader << '\n';
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << format_double(p.timestamps_s[i]) << ',' << format_double(p.pv_normalized[i]) << ','
            << format_double(p.electrical_load_kw[0][i]) << ',' << format_double(p.electrical_load_kw[1][i])
            << ',' << format_double(p.heat_load_kw[0][i]) << ',' << format_double(p.heat_load_kw[1][i])
            << '\n';
    }
}

void write_profiles_csv(const Profiles& profiles, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    write_profiles_csv(profiles, out);
}

Profiles resolve_profiles(const BenchmarkConfig& config) {
    const std::size_t steps = config.step_count();
    if (config.profiles.source == ProfileSource::Synthetic) {
        return synthetic_profiles(steps, config.step_s, config.seed);
    }
    Profiles p = read_profiles_csv(std::filesystem::path(config.profiles.path));
    if (p.size() < steps) {
        throw ValidationError("profiles csv has " + std::to_string(p.size()) + " rows, horizon needs " +
                              std::to_string(steps));
    }
    return p;
}

}  // namespace mescale
