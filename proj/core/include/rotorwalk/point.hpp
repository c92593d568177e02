#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

#include "rotorwalk/direction.hpp"

namespace rotorwalk {

/// A lattice point in Z^d, 1 <= d <= kMaxDim.
///
/// Coordinates past dim() are kept at zero so that equality, ordering and
/// hashing can work on the whole array. Stepping and norms are overflow
/// checked and throw std::overflow_error.
class Point {
public:
    using Coord = std::int64_t;

    Point() = default;
    explicit Point(int dim);
    Point(std::initializer_list<Coord> coords);

    static Point origin(int dim) { return Point(dim); }

    int dim() const { return dim_; }
    Coord operator[](int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
    Coord& operator[](int axis) { return coords_[static_cast<std::size_t>(axis)]; }
    std::span<const Coord> coords() const { return {coords_.data(), static_cast<std::size_t>(dim_)}; }

    bool is_origin() const;

    Point& operator+=(Direction dir) {
        Coord& c = coords_[static_cast<std::size_t>(dir.axis())];
        if (__builtin_add_overflow(c, static_cast<Coord>(dir.sign()), &c)) {
            throw std::overflow_error("lattice coordinate overflow");
        }
        return *this;
    }
    Point operator+(Direction dir) const {
        Point p = *this;
        p += dir;
        return p;
    }

    /// Squared Euclidean norm.
    Coord norm2() const;

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point&, const Point&) = default;

private:
    std::array<Coord, kMaxDim> coords_{};
    std::uint8_t dim_ = 0;
};

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept;
};

/// "(x1,x2,...)"
std::string to_string(const Point& p);

/// The first d-1 coordinates of a point; identifies the line through it
/// parallel to e_d.
class ColumnKey {
public:
    ColumnKey() = default;
    static ColumnKey of(const Point& p);

    const Point& base() const { return base_; }

    friend bool operator==(const ColumnKey&, const ColumnKey&) = default;
    friend std::strong_ordering operator<=>(const ColumnKey&, const ColumnKey&) = default;

private:
    explicit ColumnKey(Point base) : base_(base) {}
    Point base_;
};

struct ColumnKeyHash {
    std::size_t operator()(const ColumnKey& key) const noexcept { return PointHash{}(key.base()); }
};

}  // namespace rotorwalk
