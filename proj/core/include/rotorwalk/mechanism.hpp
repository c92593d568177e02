#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotorwalk/direction.hpp"

namespace rotorwalk {

/// The periodic exit sequence every site follows (site-uniform).
///
/// A rotor is stored as a position ("progress") in the sequence. When the
/// sequence is a cyclic permutation of all 2d directions, progress and
/// direction are interchangeable; general periodic sequences such as
/// N,N,E,S,W are allowed and reported as non-cyclic.
class Mechanism {
public:
    using Progress = std::uint8_t;
    static constexpr std::size_t kMaxPeriod = 254;

    Mechanism(int dim, std::vector<Direction> sequence);

    /// N,E,S,W (clockwise) for d = 2; direction_set order for d >= 3.
    static Mechanism standard(int dim);

    /// Comma-separated direction names, e.g. "N,E,S,W" or "+e1,-e1,+e2,-e2,+e3,-e3".
    /// An empty string or "default" gives standard(dim).
    static Mechanism parse(int dim, std::string_view spec);

    int dim() const { return dim_; }
    std::size_t period() const { return sequence_.size(); }
    bool is_cyclic() const { return cyclic_; }
    const std::vector<Direction>& sequence() const { return sequence_; }

    Direction at(Progress p) const { return sequence_[p]; }
    Progress successor(Progress p) const {
        return static_cast<Progress>(p + 1U == sequence_.size() ? 0U : p + 1U);
    }

    /// First position of `dir` in the sequence, if present.
    std::optional<Progress> first_index(Direction dir) const;

    std::string to_string() const;

    friend bool operator==(const Mechanism& a, const Mechanism& b) {
        return a.dim_ == b.dim_ && a.sequence_ == b.sequence_;
    }

private:
    int dim_;
    std::vector<Direction> sequence_;
    std::array<Progress, 2 * kMaxDim> first_index_{};
    bool cyclic_ = false;
};

}  // namespace rotorwalk
