#include "rotorwalk/render.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace rotorwalk {
namespace {

bool in_slice(const Point& p, const std::vector<std::int64_t>& slice) {
    for (int a = 2; a < p.dim(); ++a) {
        const auto i = static_cast<std::size_t>(a - 2);
        if (p[a] != (i < slice.size() ? slice[i] : 0)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::array<Rgb, 16> RenderSpec::default_palette() {
    return {{{0, 160, 0},
             {255, 140, 0},
             {0, 0, 255},
             {220, 0, 0},
             {128, 0, 128},
             {0, 170, 170},
             {120, 80, 40},
             {255, 0, 255},
             {90, 90, 90},
             {170, 170, 0},
             {0, 90, 0},
             {0, 0, 120},
             {120, 0, 0},
             {60, 120, 200},
             {200, 120, 60},
             {30, 30, 30}}};
}

PlaneBox auto_box(const RotorState& state, const std::vector<std::int64_t>& slice) {
    std::int64_t h = 0;
    auto widen = [&](const Point& p) {
        h = std::max<std::int64_t>({h, std::llabs(p[0]), std::llabs(p[1])});
    };
    for (const auto& [p, prog] : state.materialized_sites()) {
        if (in_slice(p, slice)) {
            widen(p);
        }
    }
    for (const auto& [col, start] : state.escape_rays()) {
        Point p(state.dim());
        for (int a = 0; a < state.dim() - 1; ++a) {
            p[a] = col.base()[a];
        }
        p[state.dim() - 1] = start;
        if (state.dim() >= 3) {
            // The ray crosses the slice in one site, if at all.
            const auto i = static_cast<std::size_t>(state.dim() - 3);
            const std::int64_t level = i < slice.size() ? slice[i] : 0;
            if (level < start) {
                continue;
            }
            p[state.dim() - 1] = level;
        }
        if (in_slice(p, slice)) {
            widen(p);
        }
    }
    return {-h, h, -h, h};
}

std::string render_rotors(const RotorState& state, const RenderSpec& spec) {
    if (spec.scale < 1) {
        throw std::invalid_argument("render scale must be at least 1");
    }
    const PlaneBox box = spec.box.value_or(auto_box(state, spec.slice));
    if (box.x_min > box.x_max || box.y_min > box.y_max) {
        throw std::invalid_argument("empty render box");
    }
    const auto cols = static_cast<std::size_t>(box.x_max - box.x_min + 1);
    const auto rows = static_cast<std::size_t>(box.y_max - box.y_min + 1);
    const auto scale = static_cast<std::size_t>(spec.scale);
    const std::size_t width = cols * scale;
    const std::size_t height = rows * scale;
    if (width * height > (std::size_t{1} << 28)) {
        throw std::invalid_argument("render box too large");
    }
    std::string img = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    const std::size_t header = img.size();
    img.resize(header + width * height * 3);

    Point p(state.dim());
    for (int a = 2; a < state.dim(); ++a) {
        const auto i = static_cast<std::size_t>(a - 2);
        p[a] = i < spec.slice.size() ? spec.slice[i] : 0;
    }
    for (std::size_t row = 0; row < rows; ++row) {
        p[1] = box.y_max - static_cast<std::int64_t>(row);
        for (std::size_t col = 0; col < cols; ++col) {
            p[0] = box.x_min + static_cast<std::int64_t>(col);
            const Rgb c = state.is_modified(p)
                              ? spec.palette[static_cast<std::size_t>(state.rotor(p).index())]
                              : spec.unvisited;
            for (std::size_t dy = 0; dy < scale; ++dy) {
                char* line = img.data() + header + ((row * scale + dy) * width + col * scale) * 3;
                for (std::size_t dx = 0; dx < scale; ++dx) {
                    line[3 * dx] = static_cast<char>(c.r);
                    line[3 * dx + 1] = static_cast<char>(c.g);
                    line[3 * dx + 2] = static_cast<char>(c.b);
                }
            }
        }
    }
    return img;
}

}  // namespace rotorwalk
