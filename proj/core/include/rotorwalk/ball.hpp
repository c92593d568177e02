#pragma once

#include <cstdint>
#include <vector>

#include "rotorwalk/point.hpp"

namespace rotorwalk {

/// The open lattice ball B_r = {x : |x| < r} with integer radius r >= 1.
/// Membership is decided exactly by |x|^2 < r^2.
class Ball {
public:
    Ball(int dim, std::int64_t radius);

    /// Radius ceil(value); non-integer radii are rounded up.
    static Ball with_real_radius(int dim, double radius);

    /// ceil(n^{1/(d-1)}), computed exactly as the least r with r^{d-1} >= n.
    static std::int64_t default_radius(int dim, std::uint64_t n);

    int dim() const { return dim_; }
    std::int64_t radius() const { return radius_; }
    std::int64_t radius2() const { return radius2_; }

    bool contains(const Point& x) const { return x.norm2() < radius2_; }
    /// Outside the ball and adjacent to a ball point.
    bool on_boundary(const Point& x) const;

    /// Ball points in lexicographic order.
    std::vector<Point> points() const;
    /// Boundary points in lexicographic order.
    std::vector<Point> boundary_points() const;

private:
    int dim_;
    std::int64_t radius_;
    std::int64_t radius2_;
};

bool in_ball(const Point& x, std::int64_t radius);
bool is_boundary(const Point& x, std::int64_t radius);

}  // namespace rotorwalk
