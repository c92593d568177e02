#include "rotorwalk/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "rotorwalk/errors.hpp"
#include "rotorwalk/random.hpp"

namespace rotorwalk {

std::string to_string(const Scheduler& s) {
    switch (s.kind) {
        case Scheduler::Kind::Sequential:
            return "sequential";
        case Scheduler::Kind::RoundRobin:
            return "round-robin";
        case Scheduler::Kind::Random:
            return "random:" + std::to_string(s.seed);
    }
    return "unknown";
}

ScheduleResult run_scheduled(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                             const Ball& ball, const Scheduler& scheduler, StopRule stop_rule,
                             std::uint64_t step_limit) {
    if (ball.dim() != mechanism.dim()) {
        throw std::invalid_argument("ball and mechanism have different dimensions");
    }
    ScheduleResult result{{}, {}, RotorState(mechanism, rule), 0};
    const Point origin = Point::origin(ball.dim());
    std::vector<Point> position(n, origin);
    // Active particle ids in release order.
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) {
        active[i] = i;
    }
    std::unordered_map<Point, std::uint64_t, PointHash> fires;
    Xoshiro256 rng(scheduler.seed);
    std::size_t cursor = 0;

    while (!active.empty()) {
        if (result.steps_total >= step_limit) {
            throw std::runtime_error("scheduled run exceeded the step limit");
        }
        std::size_t slot = 0;
        switch (scheduler.kind) {
            case Scheduler::Kind::Sequential:
                slot = 0;
                break;
            case Scheduler::Kind::RoundRobin:
                slot = cursor % active.size();
                break;
            case Scheduler::Kind::Random:
                slot = static_cast<std::size_t>(rng.below(active.size()));
                break;
        }
        Point& x = position[active[slot]];
        ++fires[x];
        x = step(result.final_state, x);
        ++result.steps_total;
        const bool stops = !ball.contains(x) || (stop_rule == StopRule::BoundaryOrOrigin && x.is_origin());
        if (stops) {
            result.stopped.push_back(x);
            active.erase(active.begin() + static_cast<std::ptrdiff_t>(slot));
            cursor = slot;
        } else {
            cursor = slot + 1;
        }
    }
    result.fires.assign(fires.begin(), fires.end());
    std::sort(result.fires.begin(), result.fires.end());
    std::sort(result.stopped.begin(), result.stopped.end());
    return result;
}

bool abelian_schedule_check(const Mechanism& mechanism, const DefaultRule& rule, std::uint64_t n,
                            const Ball& ball, const Scheduler& a, const Scheduler& b, StopRule stop_rule) {
    const ScheduleResult ra = run_scheduled(mechanism, rule, n, ball, a, stop_rule);
    const ScheduleResult rb = run_scheduled(mechanism, rule, n, ball, b, stop_rule);
    const std::string pair = to_string(a) + " vs " + to_string(b);
    if (ra.fires != rb.fires) {
        throw LemmaViolation("exit counts differ: " + pair);
    }
    if (ra.stopped != rb.stopped) {
        throw LemmaViolation("stopped multisets differ: " + pair);
    }
    if (!same_configuration(ra.final_state, rb.final_state)) {
        throw LemmaViolation("final rotors differ: " + pair);
    }
    return true;
}

}  // namespace rotorwalk
