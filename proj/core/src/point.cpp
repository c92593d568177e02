#include "rotorwalk/point.hpp"

#include "rotorwalk/random.hpp"

namespace rotorwalk {

Point::Point(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw std::invalid_argument("point dimension out of range: " + std::to_string(dim));
    }
    dim_ = static_cast<std::uint8_t>(dim);
}

Point::Point(std::initializer_list<Coord> coords) : Point(static_cast<int>(coords.size())) {
    std::size_t i = 0;
    for (Coord c : coords) {
        coords_[i++] = c;
    }
}

bool Point::is_origin() const {
    for (int i = 0; i < dim_; ++i) {
        if (coords_[static_cast<std::size_t>(i)] != 0) {
            return false;
        }
    }
    return true;
}

Point::Coord Point::norm2() const {
    Coord total = 0;
    for (int i = 0; i < dim_; ++i) {
        const Coord c = coords_[static_cast<std::size_t>(i)];
        Coord sq = 0;
        if (__builtin_mul_overflow(c, c, &sq) || __builtin_add_overflow(total, sq, &total)) {
            throw std::overflow_error("squared norm overflow");
        }
    }
    return total;
}

std::size_t PointHash::operator()(const Point& p) const noexcept {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(p.dim()));
    for (Point::Coord c : p.coords()) {
        h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    }
    return static_cast<std::size_t>(h);
}

std::string to_string(const Point& p) {
    std::string out = "(";
    for (int i = 0; i < p.dim(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(p[i]);
    }
    out += ')';
    return out;
}

ColumnKey ColumnKey::of(const Point& p) {
    if (p.dim() < 2) {
        throw std::invalid_argument("column key needs a point of dimension >= 2");
    }
    Point base(p.dim() - 1);
    for (int i = 0; i + 1 < p.dim(); ++i) {
        base[i] = p[i];
    }
    return ColumnKey(base);
}

}  // namespace rotorwalk
