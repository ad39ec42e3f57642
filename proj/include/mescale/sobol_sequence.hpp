#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mescale {

/// Primitive-polynomial direction numbers in the Joe-Kuo text layout
/// (`d s a m_1 .. m_s`). Dimension 1 is implicit (van der Corput).
class DirectionTable {
public:
    struct Entry {
        unsigned degree = 0;
        std::uint32_t coefficients = 0;
        std::vector<std::uint32_t> initial;
    };

    static DirectionTable parse(std::istream& in);
    /// Table compiled into the library from data/sobol_direction_numbers.txt.
    static const DirectionTable& bundled();

    std::size_t max_dimension() const { return entries_.size() + 1; }
    const Entry& entry(std::size_t dim) const { return entries_.at(dim - 2); }

private:
    std::vector<Entry> entries_;
};

/// Unscrambled Sobol sequence in Gray-code order, 32-bit resolution.
/// The first point returned by next() is the origin.
class SobolSequence {
public:
    static constexpr unsigned kBits = 32;

    explicit SobolSequence(std::size_t dimension);
    SobolSequence(std::size_t dimension, const DirectionTable& table);

    std::size_t dimension() const { return directions_.size(); }
    std::uint64_t index() const { return index_; }

    void next(std::span<double> point);
    void skip(std::uint64_t count);

private:
    std::vector<std::array<std::uint32_t, kBits>> directions_;
    std::vector<std::uint32_t> state_;
    std::uint64_t index_ = 0;
};

/// `n` points in [0,1)^dim starting after the origin plus `skip` further
/// points. Throws ValidationError when `dim` exceeds the bundled table.
std::vector<std::vector<double>> sobol_points(std::size_t dim, std::size_t n, std::size_t skip = 0);

}  // namespace mescale
