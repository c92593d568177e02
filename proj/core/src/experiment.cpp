#include "rotorwalk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rotorwalk/random.hpp"

namespace rotorwalk {

const char* to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::ExactUp:
            return "exact-up";
        case ExperimentMode::FiniteBall:
            return "finite-ball";
        case ExperimentMode::Stabilized:
            return "stabilized";
    }
    return "unknown";
}

ExperimentMode parse_mode(std::string_view text) {
    if (text == "exact-up") {
        return ExperimentMode::ExactUp;
    }
    if (text == "finite-ball") {
        return ExperimentMode::FiniteBall;
    }
    if (text == "stabilized") {
        return ExperimentMode::Stabilized;
    }
    throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

Mechanism ExperimentDescriptor::make_mechanism() const { return Mechanism::parse(dim, mechanism); }

DefaultRule ExperimentDescriptor::make_rule() const { return DefaultRule::parse(dim, rule, seed); }

void ExperimentDescriptor::validate() const {
    validate_dimension(dim);
    const Mechanism mech = make_mechanism();
    const DefaultRule r = make_rule();
    if (mode == ExperimentMode::ExactUp && !r.is_aligned_up()) {
        throw std::invalid_argument("exact-up mode needs the rule 'up', got '" + rule + "'");
    }
    if (radius && *radius < 1) {
        throw std::invalid_argument("radius must be at least 1");
    }
    if (patience < 1) {
        throw std::invalid_argument("patience must be at least 1");
    }
    if (schedule.r0 < 1 || schedule.growth <= 1.0 || schedule.cap < schedule.r0) {
        throw std::invalid_argument("schedule needs r0 >= 1, growth > 1 and cap >= r0");
    }
    (void)mech;
}

ExperimentResult run_experiment(const ExperimentDescriptor& desc, std::optional<RotorState>* final_state) {
    desc.validate();
    const Mechanism mech = desc.make_mechanism();
    const DefaultRule rule = desc.make_rule();
    ExperimentResult res;
    res.row.n = desc.n;
    switch (desc.mode) {
        case ExperimentMode::ExactUp: {
            EscapeResult r = run_escape_experiment(mech, rule, desc.n, {desc.step_limit, false});
            res.row.escaped = r.stats.escaped;
            res.row.returned = r.stats.returned;
            res.row.steps_total = r.stats.steps_total;
            res.step_limited = r.stats.step_limited;
            if (final_state != nullptr) {
                final_state->emplace(std::move(r.state));
            }
            break;
        }
        case ExperimentMode::FiniteBall: {
            const Ball ball(desc.dim, desc.radius.value_or(Ball::default_radius(desc.dim, desc.n)));
            FiniteBallResult r = run_finite_ball(mech, rule, desc.n, ball, desc.step_limit);
            res.row.escaped = r.exited;
            res.row.returned = r.returned;
            res.row.steps_total = r.steps_total;
            res.row.radius_used = r.radius;
            if (final_state != nullptr) {
                final_state->emplace(std::move(r.state));
            }
            break;
        }
        case ExperimentMode::Stabilized: {
            const StabilizedEstimate est =
                estimate_I_stabilized(mech, rule, desc.n, desc.schedule, desc.patience, desc.step_limit);
            res.row.escaped = est.estimate;
            res.row.returned = desc.n - est.estimate;
            res.stabilized = est.stabilized;
            res.trace = est.trace;
            std::uint64_t steps = 0;
            for (const auto& s : est.trace) {
                steps += s.steps;
            }
            res.row.steps_total = steps;
            res.row.radius_used = est.trace.empty() ? 0 : est.trace.back().radius;
            if (final_state != nullptr && !est.trace.empty()) {
                final_state->emplace(
                    run_finite_ball(mech, rule, desc.n, Ball(desc.dim, est.trace.back().radius), desc.step_limit).state);
            }
            break;
        }
    }
    return res;
}

std::vector<ExperimentDescriptor> SweepSpec::cells() const {
    const std::vector<std::string> rule_axis = rules.empty() ? std::vector<std::string>{base.rule} : rules;
    const std::vector<std::uint64_t> n_axis = ns.empty() ? std::vector<std::uint64_t>{base.n} : ns;
    std::vector<std::optional<std::int64_t>> r_axis;
    if (radii.empty()) {
        r_axis.push_back(base.radius);
    } else {
        r_axis.assign(radii.begin(), radii.end());
    }
    const std::vector<std::uint64_t> seed_axis = seeds.empty() ? std::vector<std::uint64_t>{base.seed} : seeds;

    std::vector<ExperimentDescriptor> out;
    for (const auto& rule : rule_axis) {
        for (auto n : n_axis) {
            for (const auto& r : r_axis) {
                for (auto s : seed_axis) {
                    ExperimentDescriptor d = base;
                    d.rule = rule;
                    d.n = n;
                    d.radius = r;
                    d.seed = derive_seed(s, out.size());
                    out.push_back(std::move(d));
                }
            }
        }
    }
    return out;
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec) {
    const auto descriptors = spec.cells();
    for (const auto& d : descriptors) {
        d.validate();
    }
    std::vector<SweepCell> cells(descriptors.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= descriptors.size()) {
                return;
            }
            try {
                cells[i] = {i, descriptors[i], run_experiment(descriptors[i])};
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const unsigned width = std::clamp<unsigned>(spec.width, 1U, static_cast<unsigned>(std::max<std::size_t>(1, descriptors.size())));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < width; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return cells;
}

}  // namespace rotorwalk
