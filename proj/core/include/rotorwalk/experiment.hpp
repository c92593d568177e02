#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotorwalk/engine.hpp"
#include "rotorwalk/report.hpp"

namespace rotorwalk {

enum class ExperimentMode {
    /// I(up, n) exactly via the column oracle; needs the aligned-up rule.
    ExactUp,
    /// I_r(rho, n) on one ball.
    FiniteBall,
    /// I_r on a growing radius schedule until it stabilizes.
    Stabilized,
};

const char* to_string(ExperimentMode mode);
ExperimentMode parse_mode(std::string_view text);

struct ExperimentDescriptor {
    int dim = 2;
    std::string mechanism = "default";
    std::string rule = "up";
    std::uint64_t n = 1;
    ExperimentMode mode = ExperimentMode::ExactUp;
    /// FiniteBall radius; default ceil(n^{1/(d-1)}).
    std::optional<std::int64_t> radius;
    RadiusSchedule schedule;
    int patience = 2;
    std::uint64_t step_limit = kDefaultStepLimit;
    /// Seed for a bare "random" rule.
    std::uint64_t seed = 0;

    Mechanism make_mechanism() const;
    DefaultRule make_rule() const;
    /// Throws std::invalid_argument on inconsistent fields.
    void validate() const;
};

struct ExperimentResult {
    EscapeRow row;
    /// False only for a Stabilized run that hit the radius cap.
    bool stabilized = true;
    std::vector<RadiusSample> trace;
    std::uint64_t step_limited = 0;
};

/// Runs one experiment. Pass `final_state` to keep the rotor configuration.
ExperimentResult run_experiment(const ExperimentDescriptor& desc, std::optional<RotorState>* final_state = nullptr);

struct SweepSpec {
    ExperimentDescriptor base;
    /// Empty axes fall back to the base value.
    std::vector<std::uint64_t> ns;
    std::vector<std::int64_t> radii;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> rules;
    unsigned width = 1;

    /// Cartesian product in the order rules x ns x radii x seeds (last
    /// fastest). Cell i gets seed derive_seed(seed_value, i).
    std::vector<ExperimentDescriptor> cells() const;
};

struct SweepCell {
    std::size_t index = 0;
    ExperimentDescriptor descriptor;
    ExperimentResult result;
};

/// Runs every cell on up to spec.width threads. Results are in cell order
/// and do not depend on the width.
std::vector<SweepCell> run_sweep(const SweepSpec& spec);

}  // namespace rotorwalk
