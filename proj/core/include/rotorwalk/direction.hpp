#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rotorwalk {

/// Smallest and largest supported lattice dimension.
inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

/// Throws std::invalid_argument unless kMinDim <= dim <= kMaxDim.
void validate_dimension(int dim);

/// One of the 2d cardinal directions {+e_1, -e_1, ..., +e_d, -e_d}.
///
/// The index enumerates directions as 2*axis + (sign < 0), so +e_1 = 0,
/// -e_1 = 1, +e_2 = 2, ... The encoding does not depend on the dimension.
class Direction {
public:
    constexpr Direction() = default;

    static constexpr Direction from_index(int index) {
        return Direction(static_cast<std::uint8_t>(index));
    }
    static constexpr Direction positive(int axis) { return from_index(2 * axis); }
    static constexpr Direction negative(int axis) { return from_index(2 * axis + 1); }

    constexpr int index() const { return index_; }
    constexpr int axis() const { return index_ >> 1; }
    constexpr int sign() const { return (index_ & 1) != 0 ? -1 : 1; }
    constexpr Direction negated() const { return Direction(static_cast<std::uint8_t>(index_ ^ 1U)); }

    friend constexpr auto operator<=>(const Direction&, const Direction&) = default;

private:
    constexpr explicit Direction(std::uint8_t index) : index_(index) {}

    std::uint8_t index_ = 0;
};

/// The 2d directions in index order: +e_1, -e_1, +e_2, -e_2, ...
std::vector<Direction> direction_set(int dim);

/// "+e1", "-e3", ...
std::string to_string(Direction dir);

/// Accepts "+e1", "-e2", "e3" (= "+e3"), and for dim == 2 the compass
/// aliases N (+e2), E (+e1), S (-e2), W (-e1). Throws std::invalid_argument.
Direction parse_direction(std::string_view text, int dim);

}  // namespace rotorwalk
