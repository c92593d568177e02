#include "rotorwalk/direction.hpp"

#include <charconv>
#include <stdexcept>

namespace rotorwalk {

void validate_dimension(int dim) {
    if (dim < kMinDim || dim > kMaxDim) {
        throw std::invalid_argument("dimension must be in [" + std::to_string(kMinDim) + ", " +
                                    std::to_string(kMaxDim) + "], got " + std::to_string(dim));
    }
}

std::vector<Direction> direction_set(int dim) {
    validate_dimension(dim);
    std::vector<Direction> dirs;
    dirs.reserve(static_cast<std::size_t>(2 * dim));
    for (int i = 0; i < 2 * dim; ++i) {
        dirs.push_back(Direction::from_index(i));
    }
    return dirs;
}

std::string to_string(Direction dir) {
    return std::string(dir.sign() > 0 ? "+e" : "-e") + std::to_string(dir.axis() + 1);
}

Direction parse_direction(std::string_view text, int dim) {
    validate_dimension(dim);
    const std::string original(text);
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (dim == 2 && text.size() == 1) {
        switch (text.front()) {
            case 'N': case 'n': return Direction::positive(1);
            case 'E': case 'e': return Direction::positive(0);
            case 'S': case 's': return Direction::negative(1);
            case 'W': case 'w': return Direction::negative(0);
            default: break;
        }
    }
    int sign = 1;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        sign = text.front() == '-' ? -1 : 1;
        text.remove_prefix(1);
    }
    if (text.size() < 2 || (text.front() != 'e' && text.front() != 'E')) {
        throw std::invalid_argument("cannot parse direction '" + original + "'");
    }
    text.remove_prefix(1);
    int axis = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), axis);
    if (ec != std::errc{} || ptr != text.data() + text.size() || axis < 1 || axis > dim) {
        throw std::invalid_argument("direction '" + original + "' is not valid in dimension " +
                                    std::to_string(dim));
    }
    return sign > 0 ? Direction::positive(axis - 1) : Direction::negative(axis - 1);
}

}  // namespace rotorwalk
