#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotorwalk/rotor_state.hpp"

namespace rotorwalk {

struct Rgb {
    std::uint8_t r = 255;
    std::uint8_t g = 255;
    std::uint8_t b = 255;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Inclusive box in the (x1, x2) plane.
struct PlaneBox {
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;
    std::int64_t y_min = 0;
    std::int64_t y_max = 0;
};

struct RenderSpec {
    /// Unset: the smallest origin-centred square holding every modified
    /// site of the slice (escape rays contribute their start points).
    std::optional<PlaneBox> box;
    /// Colour per direction index.
    std::array<Rgb, 16> palette = default_palette();
    Rgb unvisited{255, 255, 255};
    int scale = 1;
    /// Fixed x3..xd for d >= 3; missing entries are 0.
    std::vector<std::int64_t> slice;

    /// +e1 green, -e1 orange, +e2 blue, -e2 red, then fixed extras for
    /// higher axes.
    static std::array<Rgb, 16> default_palette();
};

/// Binary P6 image of the planar slice, north (+e2) up, one pixel block per
/// site. Only modified sites are coloured, by their current rotor.
std::string render_rotors(const RotorState& state, const RenderSpec& spec = {});

/// The box render_rotors uses when spec.box is unset.
PlaneBox auto_box(const RotorState& state, const std::vector<std::int64_t>& slice = {});

}  // namespace rotorwalk
