#include "rotorwalk/engine.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "rotorwalk/errors.hpp"

namespace rotorwalk {

const char* to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::ReturnedToOrigin: return "returned";
        case OutcomeKind::Escaped: return "escaped";
        case OutcomeKind::StoppedAtBoundary: return "boundary";
        case OutcomeKind::StepLimitExceeded: return "step_limit";
    }
    return "unknown";
}

Point step(RotorState& state, const Point& x) { return x + state.next_exit(x); }

WalkOutcome walk(RotorState& state, const Point& start, const StopSet& stop, EscapeOracle oracle,
                 std::uint64_t step_limit) {
    return walk_observed(state, start, stop, oracle, step_limit, [](const Point&, Direction) {});
}

EscapeRunner::EscapeRunner(Mechanism mechanism, DefaultRule rule, EscapeOptions options)
    : state_(std::move(mechanism), std::move(rule)), options_(options) {
    if (!state_.default_rule().is_aligned_up()) {
        throw std::invalid_argument("exact escape counting requires the aligned-up rule, got " +
                                    state_.default_rule().spec());
    }
}

const EscapeStats& EscapeRunner::release(std::uint64_t count) {
    const Point origin = Point::origin(state_.dim());
    const StopSet stop = StopSet::origin_return();
    for (std::uint64_t i = 0; i < count; ++i) {
        const WalkOutcome out = walk(state_, origin, stop, EscapeOracle::UpColumn, options_.step_limit);
        ++stats_.n;
        stats_.steps_total += out.steps;
        switch (out.kind) {
            case OutcomeKind::Escaped: ++stats_.escaped; break;
            case OutcomeKind::ReturnedToOrigin: ++stats_.returned; break;
            case OutcomeKind::StepLimitExceeded: ++stats_.step_limited; break;
            case OutcomeKind::StoppedAtBoundary: break;
        }
        if (options_.keep_outcomes) {
            stats_.per_particle.push_back(out);
        }
    }
    return stats_;
}

EscapeResult run_escape_experiment(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                                   EscapeOptions options) {
    EscapeRunner runner(mechanism, rule, options);
    runner.release(n);
    EscapeStats stats = runner.stats();
    return {std::move(stats), std::move(runner).take_state()};
}

FiniteBallResult run_finite_ball(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                                 const Ball& ball, std::uint64_t step_limit) {
    if (ball.dim() != mechanism.dim()) {
        throw std::invalid_argument("ball and mechanism have different dimensions");
    }
    FiniteBallResult result{0, 0, 0, ball.radius(), RotorState(mechanism, rule)};
    const Point origin = Point::origin(ball.dim());
    const StopSet stop = StopSet::boundary_or_origin(ball);
    for (std::uint64_t i = 0; i < n; ++i) {
        const WalkOutcome out = walk(result.state, origin, stop, EscapeOracle::None, step_limit);
        result.steps_total += out.steps;
        switch (out.kind) {
            case OutcomeKind::StoppedAtBoundary: ++result.exited; break;
            case OutcomeKind::ReturnedToOrigin: ++result.returned; break;
            case OutcomeKind::StepLimitExceeded:
                throw std::runtime_error("finite-ball walk exceeded the step limit; raise --step-limit");
            case OutcomeKind::Escaped: break;
        }
    }
    return result;
}

std::vector<std::int64_t> RadiusSchedule::radii() const {
    if (r0 < 1 || cap < r0 || !(growth > 1.0)) {
        throw std::invalid_argument("radius schedule needs r0 >= 1, cap >= r0 and growth > 1");
    }
    std::vector<std::int64_t> out{r0};
    double next = static_cast<double>(r0);
    while (out.back() < cap) {
        next *= growth;
        auto r = static_cast<std::int64_t>(std::ceil(next));
        if (r <= out.back()) {
            r = out.back() + 1;
        }
        out.push_back(r > cap ? cap : r);
    }
    return out;
}

StabilizedEstimate estimate_I_stabilized(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                                         const RadiusSchedule& schedule, int patience,
                                         std::uint64_t step_limit) {
    if (patience < 1) {
        throw std::invalid_argument("patience must be >= 1");
    }
    StabilizedEstimate est;
    int run = 0;
    for (std::int64_t r : schedule.radii()) {
        const FiniteBallResult fb = run_finite_ball(mechanism, rule, n, Ball(mechanism.dim(), r), step_limit);
        if (!est.trace.empty() && fb.exited > est.trace.back().exited) {
            throw LemmaViolation("I_r increased from " + std::to_string(est.trace.back().exited) + " at r=" +
                                 std::to_string(est.trace.back().radius) + " to " + std::to_string(fb.exited) +
                                 " at r=" + std::to_string(r));
        }
        run = (!est.trace.empty() && fb.exited == est.trace.back().exited) ? run + 1 : 1;
        est.trace.push_back({r, fb.exited, fb.steps_total});
        est.estimate = fb.exited;
        if (run >= patience) {
            est.stabilized = true;
            break;
        }
    }
    return est;
}

ForwardPath forward_path(const RotorState& state, const Point& x, std::size_t limit) {
    ForwardPath out;
    out.path.reserve(limit + 1);
    std::unordered_set<Point, PointHash> seen;
    Point cur = x;
    out.path.push_back(cur);
    seen.insert(cur);
    for (std::size_t k = 0; k < limit; ++k) {
        cur += state.rotor(cur);
        out.path.push_back(cur);
        if (!seen.insert(cur).second) {
            out.simple = false;
        }
    }
    return out;
}

}  // namespace rotorwalk
