#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rotorwalk/ball.hpp"
#include "rotorwalk/calculus.hpp"
#include "rotorwalk/engine.hpp"
#include "rotorwalk/rotor_state.hpp"
#include "rotorwalk/site_map.hpp"

namespace rotorwalk {

class GreenTable;

/// Total exits per site for n walks from the origin stopped only on the
/// boundary of a ball. Vanishes outside the ball and on its boundary.
class Odometer {
public:
    Odometer(std::uint64_t particles, const Ball& ball);

    int dim() const { return ball_.dim(); }
    std::uint64_t particles() const { return particles_; }
    const Ball& ball() const { return ball_; }

    std::uint64_t operator()(const Point& x) const { return counts_.get(x); }
    std::uint64_t at_origin() const { return counts_.get(Point::origin(dim())); }

    std::uint64_t& counter(const Point& x) { return counts_.ref(x); }

    /// Sites with a positive count, sorted.
    std::vector<std::pair<Point, std::uint64_t>> support() const;
    std::uint64_t total() const;

private:
    std::uint64_t particles_;
    Ball ball_;
    SiteMap<std::uint64_t> counts_;
};

/// Net crossings kappa(x, y) of directed edges; antisymmetric by
/// construction since each undirected edge is stored once at its
/// lexicographically smaller endpoint.
class EdgeFlux {
public:
    explicit EdgeFlux(int dim) : lanes_(dim, 0, dim) {}

    int dim() const { return lanes_.dim(); }

    /// kappa(x, x + dir).
    std::int64_t operator()(const Point& x, Direction dir) const {
        return dir.sign() > 0 ? lanes_.get(x, dir.axis()) : -lanes_.get(x + dir, dir.axis());
    }

    /// One particle crossed from x to x + dir.
    void record(const Point& x, Direction dir) {
        if (dir.sign() > 0) {
            ++lanes_.ref(x, dir.axis());
        } else {
            --lanes_.ref(x + dir, dir.axis());
        }
    }

    struct Edge {
        Point from;
        int axis;
        std::int64_t net;
    };
    /// Edges (x, x + e_axis) with nonzero net flux, sorted.
    std::vector<Edge> edges() const;

private:
    SiteMap<std::int64_t> lanes_;
};

struct OdometerRun {
    Odometer odometer;
    EdgeFlux flux;
    RotorState final_state;
    /// Particles absorbed at each boundary site, sorted.
    std::vector<std::pair<Point, std::uint64_t>> arrivals;
    std::uint64_t steps_total = 0;
};

/// n walks from the origin stopped only on the boundary of `ball` (they are
/// not stopped on returning to the origin).
OdometerRun compute_odometer(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                             const Ball& ball, std::uint64_t step_limit = kDefaultStepLimit);

Rational gradient(const Odometer& u, const Point& x, Direction dir);
Rational laplacian(const Odometer& u, const Point& x);
Rational divergence(const EdgeFlux& kappa, const Point& x);

struct FluxIdentityReport {
    /// max |R(x,y)| with R = grad u + 2d kappa, over edges with at least one
    /// endpoint in the ball.
    std::int64_t max_abs_remainder = 0;
    std::int64_t bound = 0;
    std::uint64_t edges_checked = 0;
    Point worst_from;
    Direction worst_dir;
};

/// Computes the remainder statistics without judging them.
FluxIdentityReport flux_remainder(const Odometer& u, const EdgeFlux& kappa);

/// flux_remainder plus the bound |R| <= 4d - 2, which holds for cyclic
/// mechanisms; LemmaViolation when exceeded, std::invalid_argument for a
/// non-cyclic mechanism.
FluxIdentityReport check_flux_identity(const OdometerRun& run);

/// 2d div kappa = 0 at every visited interior site other than the origin,
/// = n at the origin, and the boundary absorbs exactly n particles.
/// LemmaViolation otherwise.
void check_flux_conservation(const OdometerRun& run);

struct InnCheck {
    std::uint64_t n = 0;
    /// N = u(o) from the boundary-only run.
    std::uint64_t odometer_origin = 0;
    /// I_r(rho, N) from a fresh finite-ball run with N particles.
    std::uint64_t exited = 0;
    bool holds = false;
};

/// I_r(rho, u_n^r(o)) == n. Throws LemmaViolation on mismatch.
InnCheck check_inn(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n, const Ball& ball);

/// Distinct columns containing a site with positive count.
std::uint64_t count_columns(const Odometer& u);

struct ResidualShell {
    std::int64_t norm2;
    double radius;
    std::uint64_t sites;
    /// max |u(x) - n G_r(x, o)| over the shell.
    double max_residual;
    /// rho log(2r / rho) with rho = r + 1 - |x|.
    double shape;
};

struct ResidualProfile {
    std::int64_t radius = 0;
    std::uint64_t particles = 0;
    double additive = 0;  // 4d
    double u_origin = 0;
    double f_origin = 0;
    double origin_residual = 0;
    /// Smallest c with max_residual <= c * shape + additive on every shell
    /// with |x| <= r/2.
    double fitted_c = 0;
    std::vector<ResidualShell> shells;  // ascending |x|^2

    double max_residual_within(double radius) const;
    /// max_residual <= c * shape + additive on every shell.
    bool dominated(double c) const;
};

/// Compares u with f = n G_r(., o) shell by shell (integer |x|^2 buckets).
ResidualProfile odometer_green_residual(const Odometer& u, const GreenTable& green);

}  // namespace rotorwalk
