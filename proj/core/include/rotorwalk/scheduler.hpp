#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rotorwalk/ball.hpp"
#include "rotorwalk/engine.hpp"
#include "rotorwalk/rotor_state.hpp"

namespace rotorwalk {

/// Policy choosing which active particle moves next.
struct Scheduler {
    enum class Kind { Sequential, RoundRobin, Random };
    Kind kind = Kind::Sequential;
    std::uint64_t seed = 0;

    /// One particle at a time, in release order.
    static Scheduler sequential() { return {Kind::Sequential, 0}; }
    /// One step per active particle per round.
    static Scheduler round_robin() { return {Kind::RoundRobin, 0}; }
    /// Uniformly random active particle at every step.
    static Scheduler random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

std::string to_string(const Scheduler& s);

enum class StopRule {
    /// Stop only on the ball boundary (odometer experiment).
    BoundaryOnly,
    /// Stop on the boundary or on returning to the origin. Particles still
    /// waiting at the origin are active.
    BoundaryOrOrigin,
};

struct ScheduleResult {
    /// Exits per site, sorted.
    std::vector<std::pair<Point, std::uint64_t>> fires;
    /// Where particles stopped, sorted (a multiset).
    std::vector<Point> stopped;
    RotorState final_state;
    std::uint64_t steps_total = 0;
};

/// n particles start at the origin and move one step at a time in the order
/// chosen by `scheduler`.
ScheduleResult run_scheduled(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                             const Ball& ball, const Scheduler& scheduler, StopRule stop_rule,
                             std::uint64_t step_limit = kDefaultStepLimit);

/// Runs both schedules and compares fires, stopped multisets and final
/// rotors. Returns true, or throws LemmaViolation naming the first mismatch.
bool abelian_schedule_check(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                            const Ball& ball, const Scheduler& a, const Scheduler& b,
                            StopRule stop_rule = StopRule::BoundaryOrOrigin);

}  // namespace rotorwalk
