#pragma once

#include "naive.hpp"
#include "rotorwalk/default_rule.hpp"
#include "rotorwalk/point.hpp"

namespace oracle {

inline rotorwalk::Point to_point(const Vec& v) {
    rotorwalk::Point p(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[static_cast<int>(i)] = v[i];
    }
    return p;
}

inline Vec to_vec(const rotorwalk::Point& p) {
    Vec v;
    for (auto c : p.coords()) {
        v.push_back(c);
    }
    return v;
}

/// Index into `sequence` of the library rule's direction at x.
inline std::function<int(const Vec&)> initial_from(const rotorwalk::DefaultRule& rule, std::vector<Vec> sequence) {
    return [rule, sequence](const Vec& x) {
        const auto d = rule(to_point(x));
        const Vec u = unit(static_cast<int>(x.size()), d.axis(), d.sign());
        for (std::size_t i = 0; i < sequence.size(); ++i) {
            if (sequence[i] == u) {
                return static_cast<int>(i);
            }
        }
        return -1;
    };
}

}  // namespace oracle
