#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rotorwalk/ball.hpp"
#include "rotorwalk/rotor_state.hpp"

namespace rotorwalk {

inline constexpr std::uint64_t kDefaultStepLimit = 10'000'000'000ULL;

/// Where a walk halts. The origin is only a stopping point on return: the
/// walk's own start is never tested.
class StopSet {
public:
    enum class Kind { OriginReturn, Boundary, BoundaryOrOrigin };

    static StopSet origin_return() { return StopSet(Kind::OriginReturn, std::nullopt); }
    static StopSet boundary(const Ball& ball) { return StopSet(Kind::Boundary, ball); }
    static StopSet boundary_or_origin(const Ball& ball) { return StopSet(Kind::BoundaryOrOrigin, ball); }

    Kind kind() const { return kind_; }
    bool stops_at_origin() const { return kind_ != Kind::Boundary; }
    const std::optional<Ball>& ball() const { return ball_; }

private:
    StopSet(Kind kind, std::optional<Ball> ball) : kind_(kind), ball_(std::move(ball)) {}

    Kind kind_;
    std::optional<Ball> ball_;
};

enum class EscapeOracle {
    None,
    /// Certify escape via RotorState::escape_check_up (aligned-up rule only).
    UpColumn,
};

enum class OutcomeKind { ReturnedToOrigin, Escaped, StoppedAtBoundary, StepLimitExceeded };

struct WalkOutcome {
    OutcomeKind kind;
    std::uint64_t steps = 0;
    /// Final position: the boundary point, the origin, the escape point, or
    /// where the step budget ran out.
    Point position;

    friend bool operator==(const WalkOutcome&, const WalkOutcome&) = default;
};

const char* to_string(OutcomeKind kind);

/// Moves one particle from x and advances the rotor at x.
Point step(RotorState& state, const Point& x);

/// Runs one particle from `start`, calling observe(x, dir) before each
/// move from x in direction dir.
template <class Observer>
WalkOutcome walk_observed(RotorState& state, const Point& start, const StopSet& stop, EscapeOracle oracle,
                          std::uint64_t step_limit, Observer&& observe) {
    using Coord = Point::Coord;
    const int dim = state.dim();
    if (start.dim() != dim) {
        throw std::invalid_argument("walk start has wrong dimension");
    }
    if (oracle == EscapeOracle::UpColumn && !state.default_rule().is_aligned_up()) {
        throw std::logic_error("the column escape oracle requires the aligned-up rotor rule");
    }
    const bool bounded = stop.ball().has_value();
    const Coord radius2 = bounded ? stop.ball()->radius2() : 0;
    const bool stop_origin = stop.stops_at_origin();
    const Mechanism& mech = state.mechanism();

    Point x = start;
    Coord norm2 = x.norm2();
    if (bounded && norm2 >= radius2) {
        throw std::invalid_argument("walk start " + to_string(start) + " is outside the ball");
    }
    std::uint64_t steps = 0;
    while (true) {
        if (steps >= step_limit) {
            return {OutcomeKind::StepLimitExceeded, steps, x};
        }
        RotorState::Progress& p = state.slot(x);
        if (p == RotorState::kPristine) {
            if (oracle == EscapeOracle::UpColumn && state.escape_check_up(x)) {
                state.commit_escape_ray(x);
                return {OutcomeKind::Escaped, steps, x};
            }
            state.materialize(x, p);
        }
        const Direction d = mech.at(p);
        p = mech.successor(p);
        observe(x, d);
        const Coord c = x[d.axis()];
        // |x + s e_i|^2 - |x|^2 = 2 s x_i + 1
        if (__builtin_add_overflow(norm2, 2 * d.sign() * c + 1, &norm2)) {
            throw std::overflow_error("squared norm overflow during walk");
        }
        x += d;
        ++steps;
        if (stop_origin && norm2 == 0) {
            return {OutcomeKind::ReturnedToOrigin, steps, x};
        }
        if (bounded && norm2 >= radius2) {
            return {OutcomeKind::StoppedAtBoundary, steps, x};
        }
    }
}

WalkOutcome walk(RotorState& state, const Point& start, const StopSet& stop, EscapeOracle oracle,
                 std::uint64_t step_limit = kDefaultStepLimit);

/// Counts for n sequential particles released from the origin.
struct EscapeStats {
    std::uint64_t n = 0;
    /// Escaped to infinity (exact mode) or stopped on the ball boundary.
    std::uint64_t escaped = 0;
    std::uint64_t returned = 0;
    std::uint64_t step_limited = 0;
    std::uint64_t steps_total = 0;
    std::vector<WalkOutcome> per_particle;

    friend bool operator==(const EscapeStats&, const EscapeStats&) = default;
};

struct EscapeOptions {
    std::uint64_t step_limit = kDefaultStepLimit;
    bool keep_outcomes = false;
};

/// Incremental exact escape experiment for the aligned-up rule: particles
/// stop on returning to the origin or when the column oracle certifies
/// escape. Rotors are never reset between particles.
class EscapeRunner {
public:
    EscapeRunner(Mechanism mechanism, DefaultRule rule, EscapeOptions options = {});

    /// Releases `count` more particles.
    const EscapeStats& release(std::uint64_t count);

    const EscapeStats& stats() const { return stats_; }
    const RotorState& state() const { return state_; }
    RotorState take_state() && { return std::move(state_); }

private:
    RotorState state_;
    EscapeOptions options_;
    EscapeStats stats_;
};

struct EscapeResult {
    EscapeStats stats;
    RotorState state;
};

/// I(up, n) exactly.
EscapeResult run_escape_experiment(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                                   EscapeOptions options = {});

struct FiniteBallResult {
    /// I_r: particles that reached the boundary before returning.
    std::uint64_t exited = 0;
    std::uint64_t returned = 0;
    std::uint64_t steps_total = 0;
    std::int64_t radius = 0;
    RotorState state;
};

/// n sequential walks from the origin stopped on the boundary of B_r or on
/// returning to the origin.
FiniteBallResult run_finite_ball(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                                 const Ball& ball, std::uint64_t step_limit = kDefaultStepLimit);

/// Geometric radius schedule r0, r0*growth, ... up to cap (inclusive).
struct RadiusSchedule {
    std::int64_t r0 = 8;
    double growth = 2.0;
    std::int64_t cap = 4096;

    std::vector<std::int64_t> radii() const;
};

struct RadiusSample {
    std::int64_t radius;
    std::uint64_t exited;
    std::uint64_t steps;
};

struct StabilizedEstimate {
    /// Last computed I_r; an upper bound on I(rho, n) even when inconclusive.
    std::uint64_t estimate = 0;
    bool stabilized = false;
    std::vector<RadiusSample> trace;
};

/// Estimates I(rho, n) for a general rule by computing I_r on a growing
/// radius schedule until `patience` consecutive radii agree. The sequence
/// is nonincreasing in r; an increase raises LemmaViolation.
StabilizedEstimate estimate_I_stabilized(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                                         const RadiusSchedule& schedule, int patience = 2,
                                         std::uint64_t step_limit = kDefaultStepLimit);

struct ForwardPath {
    std::vector<Point> path;
    bool simple = true;
};

/// Follows x_{k+1} = x_k + rho(x_k) for `limit` steps without touching the rotors.
ForwardPath forward_path(const RotorState& state, const Point& x, std::size_t limit);

}  // namespace rotorwalk
