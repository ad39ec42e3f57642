#include "mescale/sobol_sequence.hpp"

#include <bit>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "mescale/error.hpp"

namespace mescale {

namespace detail {
extern const char* const kSobolDirectionNumbers;
}

DirectionTable DirectionTable::parse(std::istream& in) {
    DirectionTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_dim = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream row(line);
        std::size_t d = 0;
        if (!(row >> d)) {
            if (line_no == 1) {
                continue;  // header
            }
            throw ParseError("direction table line " + std::to_string(line_no) + ": bad dimension", line_no);
        }
        Entry e;
        if (!(row >> e.degree >> e.coefficients) || e.degree == 0 || e.degree >= SobolSequence::kBits) {
            throw ParseError("direction table line " + std::to_string(line_no) + ": bad degree", line_no);
        }
        if (d != expected_dim) {
            throw ParseError("direction table line " + std::to_string(line_no) + ": expected dimension " +
                                 std::to_string(expected_dim),
                             line_no);
        }
        e.initial.resize(e.degree);
        for (unsigned k = 0; k < e.degree; ++k) {
            if (!(row >> e.initial[k]) || e.initial[k] % 2 == 0 || e.initial[k] >= (2u << k)) {
                throw ParseError("direction table line " + std::to_string(line_no) +
                                     ": initial numbers must be odd and below 2^k",
                                 line_no);
            }
        }
        table.entries_.push_back(std::move(e));
        ++expected_dim;
    }
    return table;
}

const DirectionTable& DirectionTable::bundled() {
    static const DirectionTable table = [] {
        std::istringstream in(detail::kSobolDirectionNumbers);
        return parse(in);
    }();
    return table;
}

SobolSequence::SobolSequence(std::size_t dimension) : SobolSequence(dimension, DirectionTable::bundled()) {}

SobolSequence::SobolSequence(std::size_t dimension, const DirectionTable& table) {
    if (dimension == 0) {
        throw ValidationError("sobol dimension must be at least 1");
    }
    if (dimension > table.max_dimension()) {
        throw ValidationError("sobol dimension " + std::to_string(dimension) +
                              " exceeds direction table size " + std::to_string(table.max_dimension()));
    }
    directions_.resize(dimension);
    for (unsigned k = 0; k < kBits; ++k) {
        directions_[0][k] = std::uint32_t{1} << (kBits - 1 - k);
    }
    for (std::size_t d = 2; d <= dimension; ++d) {
        const auto& e = table.entry(d);
        auto& v = directions_[d - 1];
        const unsigned s = e.degree;
        for (unsigned k = 0; k < s; ++k) {
            v[k] = e.initial[k] << (kBits - 1 - k);
        }
        for (unsigned k = s; k < kBits; ++k) {
            std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
            for (unsigned l = 1; l < s; ++l) {
                if ((e.coefficients >> (s - 1 - l)) & 1u) {
                    value ^= v[k - l];
                }
            }
            v[k] = value;
        }
    }
    state_.assign(dimension, 0u);
}

void SobolSequence::next(std::span<double> point) {
    if (point.size() != dimension()) {
        throw std::invalid_argument("sobol point buffer has wrong dimension");
    }
    if (index_ >= (std::uint64_t{1} << kBits)) {
        throw SolverError("sobol sequence exhausted at 2^32 points");
    }
    constexpr double scale = 1.0 / 4294967296.0;
    for (std::size_t d = 0; d < dimension(); ++d) {
        point[d] = static_cast<double>(state_[d]) * scale;
    }
    // Gray-code update: flip the direction of the lowest zero bit of index.
    const unsigned c = static_cast<unsigned>(std::countr_one(index_));
    if (c < kBits) {
        for (std::size_t d = 0; d < dimension(); ++d) {
            state_[d] ^= directions_[d][c];
        }
    }
    ++index_;
}

void SobolSequence::skip(std::uint64_t count) {
    std::vector<double> scratch(dimension());
    for (std::uint64_t i = 0; i < count; ++i) {
        next(scratch);
    }
}

std::vector<std::vector<double>> sobol_points(std::size_t dim, std::size_t n, std::size_t skip) {
    SobolSequence seq(dim);
    seq.skip(1 + skip);
    std::vector<std::vector<double>> out(n, std::vector<double>(dim));
    for (auto& p : out) {
        seq.next(p);
    }
    return out;
}

}  // namespace mescale
