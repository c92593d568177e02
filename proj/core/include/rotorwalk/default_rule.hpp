#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>

#include "rotorwalk/direction.hpp"
#include "rotorwalk/point.hpp"

namespace rotorwalk {

/// The initial rotor configuration, as a deterministic function of the site.
class DefaultRule {
public:
    struct Aligned {
        Direction dir;
    };
    /// Rotor drawn from a hash of (seed, coordinates); independent of visit order.
    struct IidRandom {
        std::uint64_t seed;
    };
    /// `upper` where x_d >= 0, `lower` where x_d < 0.
    struct Split {
        Direction upper;
        Direction lower;
    };
    struct Explicit {
        std::shared_ptr<const std::unordered_map<Point, Direction, PointHash>> rotors;
        Direction fallback;
    };
    using Variant = std::variant<Aligned, IidRandom, Split, Explicit>;

    /// All rotors +e_d.
    static DefaultRule up(int dim);
    static DefaultRule aligned(int dim, Direction dir);
    static DefaultRule iid_random(int dim, std::uint64_t seed);
    static DefaultRule split(int dim, Direction upper, Direction lower);
    static DefaultRule explicit_map(int dim, std::unordered_map<Point, Direction, PointHash> rotors,
                                    Direction fallback);

    /// "up", "aligned:DIR", "random:SEED", "split:DIR,DIR". A bare "random"
    /// uses `fallback_seed`.
    static DefaultRule parse(int dim, std::string_view spec, std::uint64_t fallback_seed = 0);

    int dim() const { return dim_; }
    const Variant& variant() const { return rule_; }

    Direction operator()(const Point& x) const;

    /// True for Aligned(+e_d), the configuration the column escape oracle needs.
    bool is_aligned_up() const;

    /// Round-trips through parse(); Explicit rules report "explicit".
    std::string spec() const;

private:
    DefaultRule(int dim, Variant rule);

    int dim_;
    Variant rule_;
};

}  // namespace rotorwalk
