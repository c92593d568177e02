#include "rotorwalk/int128.hpp"
#include "rotorwalk/ball.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rotorwalk {

Ball::Ball(int dim, std::int64_t radius) : dim_(dim), radius_(radius), radius2_(0) {
    validate_dimension(dim);
    if (radius < 1) {
        throw std::invalid_argument("ball radius must be >= 1, got " + std::to_string(radius));
    }
    if (__builtin_mul_overflow(radius, radius, &radius2_)) {
        throw std::overflow_error("ball radius too large");
    }
}

Ball Ball::with_real_radius(int dim, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("ball radius must be positive and finite");
    }
    return Ball(dim, static_cast<std::int64_t>(std::ceil(radius)));
}

std::int64_t Ball::default_radius(int dim, std::uint64_t n) {
    validate_dimension(dim);
    if (n == 0) {
        return 1;
    }
    const int power = dim - 1;
    const auto reaches = [&](std::uint64_t r) {
        uint128 acc = 1;
        for (int i = 0; i < power; ++i) {
            acc *= r;
            if (acc >= n) {
                return true;
            }
        }
        return acc >= n;
    };
    std::uint64_t guess = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / power));
    guess = guess > 2 ? guess - 2 : 1;
    while (!reaches(guess)) {
        ++guess;
    }
    return static_cast<std::int64_t>(guess);
}

bool Ball::on_boundary(const Point& x) const {
    if (contains(x)) {
        return false;
    }
    for (int axis = 0; axis < dim_; ++axis) {
        if (contains(x + Direction::positive(axis)) || contains(x + Direction::negative(axis))) {
            return true;
        }
    }
    return false;
}

namespace {

template <class F>
void enumerate_box(int dim, std::int64_t lo, std::int64_t hi, F&& visit) {
    Point p(dim);
    for (int i = 0; i < dim; ++i) {
        p[i] = lo;
    }
    while (true) {
        visit(p);
        int axis = dim - 1;
        while (axis >= 0 && p[axis] == hi) {
            p[axis] = lo;
            --axis;
        }
        if (axis < 0) {
            return;
        }
        ++p[axis];
    }
}

}  // namespace

std::vector<Point> Ball::points() const {
    std::vector<Point> out;
    const std::int64_t m = radius_ - 1;
    enumerate_box(dim_, -m, m, [&](const Point& p) {
        if (contains(p)) {
            out.push_back(p);
        }
    });
    return out;
}

std::vector<Point> Ball::boundary_points() const {
    std::vector<Point> out;
    enumerate_box(dim_, -radius_, radius_, [&](const Point& p) {
        if (on_boundary(p)) {
            out.push_back(p);
        }
    });
    return out;
}

bool in_ball(const Point& x, std::int64_t radius) { return Ball(x.dim(), radius).contains(x); }

bool is_boundary(const Point& x, std::int64_t radius) { return Ball(x.dim(), radius).on_boundary(x); }

}  // namespace rotorwalk
