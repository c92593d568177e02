#include "rotorwalk/odometer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "rotorwalk/errors.hpp"
#include "rotorwalk/green.hpp"

namespace rotorwalk {

Odometer::Odometer(std::uint64_t particles, const Ball& ball)
    : particles_(particles), ball_(ball), counts_(ball.dim(), 0) {}

std::vector<std::pair<Point, std::uint64_t>> Odometer::support() const {
    std::vector<std::pair<Point, std::uint64_t>> out;
    counts_.for_each([&](const Point& p, std::span<const std::uint64_t> v) { out.emplace_back(p, v[0]); });
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t Odometer::total() const {
    std::uint64_t sum = 0;
    counts_.for_each([&](const Point&, std::span<const std::uint64_t> v) { sum += v[0]; });
    return sum;
}

std::vector<EdgeFlux::Edge> EdgeFlux::edges() const {
    std::vector<Edge> out;
    lanes_.for_each([&](const Point& p, std::span<const std::int64_t> v) {
        for (int axis = 0; axis < static_cast<int>(v.size()); ++axis) {
            if (v[static_cast<std::size_t>(axis)] != 0) {
                out.push_back({p, axis, v[static_cast<std::size_t>(axis)]});
            }
        }
    });
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return a.from != b.from ? a.from < b.from : a.axis < b.axis;
    });
    return out;
}

OdometerRun compute_odometer(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                             const Ball& ball, std::uint64_t step_limit) {
    if (ball.dim() != mechanism.dim()) {
        throw std::invalid_argument("ball and mechanism have different dimensions");
    }
    OdometerRun run{Odometer(n, ball), EdgeFlux(ball.dim()), RotorState(mechanism, rule), {}, 0};
    const Point origin = Point::origin(ball.dim());
    const StopSet stop = StopSet::boundary(ball);
    std::unordered_map<Point, std::uint64_t, PointHash> arrivals;
    auto observe = [&](const Point& x, Direction d) {
        ++run.odometer.counter(x);
        run.flux.record(x, d);
    };
    for (std::uint64_t i = 0; i < n; ++i) {
        const WalkOutcome out = walk_observed(run.final_state, origin, stop, EscapeOracle::None, step_limit, observe);
        run.steps_total += out.steps;
        if (out.kind != OutcomeKind::StoppedAtBoundary) {
            throw std::runtime_error("odometer walk exceeded the step limit");
        }
        ++arrivals[out.position];
    }
    run.arrivals.assign(arrivals.begin(), arrivals.end());
    std::sort(run.arrivals.begin(), run.arrivals.end());
    return run;
}

Rational gradient(const Odometer& u, const Point& x, Direction dir) {
    return gradient_of([&](const Point& p) { return static_cast<std::int64_t>(u(p)); }, x, dir);
}

Rational laplacian(const Odometer& u, const Point& x) {
    return laplacian_of([&](const Point& p) { return static_cast<std::int64_t>(u(p)); }, x);
}

Rational divergence(const EdgeFlux& kappa, const Point& x) { return divergence_of(kappa, x); }

FluxIdentityReport flux_remainder(const Odometer& u, const EdgeFlux& kappa) {
    const Ball& ball = u.ball();
    const int dim = ball.dim();
    FluxIdentityReport rep;
    rep.bound = 4 * dim - 2;
    rep.worst_from = Point::origin(dim);
    for (const Point& x : ball.points()) {
        const auto ux = static_cast<std::int64_t>(u(x));
        for (int i = 0; i < 2 * dim; ++i) {
            const Direction d = Direction::from_index(i);
            const Point y = x + d;
            const bool y_inside = ball.contains(y);
            if (y_inside && d.sign() < 0) {
                continue;  // counted from the other endpoint
            }
            const std::int64_t r = static_cast<std::int64_t>(u(y)) - ux + 2 * dim * kappa(x, d);
            ++rep.edges_checked;
            if (std::llabs(r) > rep.max_abs_remainder) {
                rep.max_abs_remainder = std::llabs(r);
                rep.worst_from = x;
                rep.worst_dir = d;
            }
        }
    }
    return rep;
}

FluxIdentityReport check_flux_identity(const OdometerRun& run) {
    if (!run.final_state.mechanism().is_cyclic()) {
        throw std::invalid_argument("the flux remainder bound needs a cyclic mechanism");
    }
    FluxIdentityReport rep = flux_remainder(run.odometer, run.flux);
    if (rep.max_abs_remainder > rep.bound) {
        throw LemmaViolation("flux remainder " + std::to_string(rep.max_abs_remainder) + " exceeds " +
                             std::to_string(rep.bound) + " on edge " + to_string(rep.worst_from) + " -> " +
                             to_string(rep.worst_dir));
    }
    return rep;
}

void check_flux_conservation(const OdometerRun& run) {
    const Odometer& u = run.odometer;
    const int dim = u.dim();
    const auto net_out = [&](const Point& x) {
        std::int64_t s = 0;
        for (int i = 0; i < 2 * dim; ++i) {
            s += run.flux(x, Direction::from_index(i));
        }
        return s;
    };
    for (const auto& [x, count] : u.support()) {
        const std::int64_t expected = x.is_origin() ? static_cast<std::int64_t>(u.particles()) : 0;
        if (net_out(x) != expected) {
            throw LemmaViolation("2d div kappa at " + to_string(x) + " is " + std::to_string(net_out(x)) +
                                 ", expected " + std::to_string(expected));
        }
    }
    std::uint64_t absorbed = 0;
    for (const auto& [y, count] : run.arrivals) {
        if (!u.ball().on_boundary(y) || -net_out(y) != static_cast<std::int64_t>(count)) {
            throw LemmaViolation("boundary arrivals at " + to_string(y) + " disagree with the flux");
        }
        absorbed += count;
    }
    if (absorbed != u.particles()) {
        throw LemmaViolation("boundary absorbed " + std::to_string(absorbed) + " of " +
                             std::to_string(u.particles()) + " particles");
    }
}

InnCheck check_inn(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n, const Ball& ball) {
    InnCheck check;
    check.n = n;
    check.odometer_origin = compute_odometer(mechanism, rule, n, ball).odometer.at_origin();
    check.exited = run_finite_ball(mechanism, rule, check.odometer_origin, ball).exited;
    check.holds = check.exited == n;
    if (!check.holds) {
        throw LemmaViolation("I_r(rho, u(o)=" + std::to_string(check.odometer_origin) + ") = " +
                             std::to_string(check.exited) + ", expected " + std::to_string(n));
    }
    return check;
}

std::uint64_t count_columns(const Odometer& u) {
    std::unordered_set<ColumnKey, ColumnKeyHash> columns;
    for (const auto& [x, count] : u.support()) {
        if (count > 0) {
            columns.insert(ColumnKey::of(x));
        }
    }
    return columns.size();
}

double ResidualProfile::max_residual_within(double r) const {
    double m = 0;
    for (const auto& s : shells) {
        if (s.radius <= r) {
            m = std::max(m, s.max_residual);
        }
    }
    return m;
}

bool ResidualProfile::dominated(double c) const {
    return std::all_of(shells.begin(), shells.end(), [&](const ResidualShell& s) {
        return s.max_residual <= c * s.shape + additive;
    });
}

ResidualProfile odometer_green_residual(const Odometer& u, const GreenTable& green) {
    const Ball& ball = u.ball();
    if (green.dim() != ball.dim() || green.radius() != ball.radius()) {
        throw std::invalid_argument("odometer and Green table use different balls");
    }
    ResidualProfile prof;
    prof.radius = ball.radius();
    prof.particles = u.particles();
    prof.additive = 4.0 * ball.dim();
    const double n = static_cast<double>(u.particles());
    const double r = static_cast<double>(ball.radius());

    std::map<std::int64_t, ResidualShell> shells;
    for (const Point& x : ball.points()) {
        const std::int64_t q = x.norm2();
        const double residual = std::abs(static_cast<double>(u(x)) - n * green(x));
        auto [it, inserted] = shells.try_emplace(q);
        ResidualShell& s = it->second;
        if (inserted) {
            s.norm2 = q;
            s.radius = std::sqrt(static_cast<double>(q));
            const double rho = r + 1.0 - s.radius;
            s.shape = rho * std::log(2.0 * r / rho);
            s.sites = 0;
            s.max_residual = 0;
        }
        ++s.sites;
        s.max_residual = std::max(s.max_residual, residual);
    }
    for (auto& [q, s] : shells) {
        prof.shells.push_back(s);
        if (s.radius <= r / 2.0 && s.shape > 0) {
            prof.fitted_c = std::max(prof.fitted_c, (s.max_residual - prof.additive) / s.shape);
        }
    }
    prof.u_origin = static_cast<double>(u.at_origin());
    prof.f_origin = n * green.at_origin();
    prof.origin_residual = std::abs(prof.u_origin - prof.f_origin);
    return prof;
}

}  // namespace rotorwalk
