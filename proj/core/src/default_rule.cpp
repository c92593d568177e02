#include "rotorwalk/int128.hpp"
#include "rotorwalk/default_rule.hpp"

#include <charconv>
#include <stdexcept>

#include "rotorwalk/random.hpp"

namespace rotorwalk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_direction(int dim, Direction d) {
    if (d.axis() >= dim) {
        throw std::invalid_argument("direction " + to_string(d) + " not valid in dimension " +
                                    std::to_string(dim));
    }
}

}  // namespace

DefaultRule::DefaultRule(int dim, Variant rule) : dim_(dim), rule_(std::move(rule)) {
    validate_dimension(dim);
}

DefaultRule DefaultRule::up(int dim) {
    validate_dimension(dim);
    return DefaultRule(dim, Aligned{Direction::positive(dim - 1)});
}

DefaultRule DefaultRule::aligned(int dim, Direction dir) {
    validate_dimension(dim);
    check_direction(dim, dir);
    return DefaultRule(dim, Aligned{dir});
}

DefaultRule DefaultRule::iid_random(int dim, std::uint64_t seed) {
    return DefaultRule(dim, IidRandom{seed});
}

DefaultRule DefaultRule::split(int dim, Direction upper, Direction lower) {
    validate_dimension(dim);
    check_direction(dim, upper);
    check_direction(dim, lower);
    return DefaultRule(dim, Split{upper, lower});
}

DefaultRule DefaultRule::explicit_map(int dim, std::unordered_map<Point, Direction, PointHash> rotors,
                                      Direction fallback) {
    validate_dimension(dim);
    check_direction(dim, fallback);
    for (const auto& [p, d] : rotors) {
        if (p.dim() != dim) {
            throw std::invalid_argument("explicit rotor at " + to_string(p) + " has wrong dimension");
        }
        check_direction(dim, d);
    }
    return DefaultRule(dim, Explicit{std::make_shared<const std::unordered_map<Point, Direction, PointHash>>(
                                         std::move(rotors)),
                                     fallback});
}

DefaultRule DefaultRule::parse(int dim, std::string_view spec, std::uint64_t fallback_seed) {
    validate_dimension(dim);
    const std::string original(spec);
    if (spec == "up") {
        return up(dim);
    }
    if (spec == "random") {
        return iid_random(dim, fallback_seed);
    }
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("unknown rotor rule '" + original + "'");
    }
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view arg = spec.substr(colon + 1);
    if (kind == "random") {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
        if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
            throw std::invalid_argument("bad seed in rotor rule '" + original + "'");
        }
        return iid_random(dim, seed);
    }
    if (kind == "aligned") {
        return aligned(dim, parse_direction(arg, dim));
    }
    if (kind == "split") {
        const std::size_t comma = arg.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("split rule needs two directions: '" + original + "'");
        }
        return split(dim, parse_direction(arg.substr(0, comma), dim),
                     parse_direction(arg.substr(comma + 1), dim));
    }
    throw std::invalid_argument("unknown rotor rule '" + original + "'");
}

Direction DefaultRule::operator()(const Point& x) const {
    return std::visit(
        Overloaded{
            [](const Aligned& a) { return a.dir; },
            [&](const IidRandom& r) {
                std::uint64_t h = splitmix64(r.seed);
                for (int i = 0; i < dim_; ++i) {
                    h = splitmix64(h ^ static_cast<std::uint64_t>(x[i]));
                }
                const auto idx = (static_cast<uint128>(h) * static_cast<unsigned>(2 * dim_)) >> 64;
                return Direction::from_index(static_cast<int>(idx));
            },
            [&](const Split& s) { return x[dim_ - 1] >= 0 ? s.upper : s.lower; },
            [&](const Explicit& e) {
                const auto it = e.rotors->find(x);
                return it == e.rotors->end() ? e.fallback : it->second;
            },
        },
        rule_);
}

bool DefaultRule::is_aligned_up() const {
    const auto* a = std::get_if<Aligned>(&rule_);
    return a != nullptr && a->dir == Direction::positive(dim_ - 1);
}

std::string DefaultRule::spec() const {
    return std::visit(Overloaded{
                          [&](const Aligned& a) {
                              return a.dir == Direction::positive(dim_ - 1) ? std::string("up")
                                                                            : "aligned:" + to_string(a.dir);
                          },
                          [](const IidRandom& r) { return "random:" + std::to_string(r.seed); },
                          [](const Split& s) { return "split:" + to_string(s.upper) + "," + to_string(s.lower); },
                          [](const Explicit&) { return std::string("explicit"); },
                      },
                      rule_);
}

}  // namespace rotorwalk
