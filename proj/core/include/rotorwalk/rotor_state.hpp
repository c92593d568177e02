#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rotorwalk/default_rule.hpp"
#include "rotorwalk/mechanism.hpp"
#include "rotorwalk/point.hpp"
#include "rotorwalk/site_map.hpp"

namespace rotorwalk {

/// Rotor configuration: the default rule plus a sparse overlay of sites
/// whose rotor has moved.
///
/// A site is either pristine (rotor = default rule) or materialized with a
/// progress index into the mechanism sequence. Columns escaped by a
/// straight +e_d ray are recorded as an escape ray: every site on or above
/// the ray start has been exited exactly once, and such sites are
/// materialized lazily on their next visit.
///
/// The column frontier is the largest x_d among modified sites of a
/// column; a column carrying an escape ray has frontier +infinity.
class RotorState {
public:
    using Progress = Mechanism::Progress;
    using Coord = Point::Coord;
    static constexpr Progress kPristine = 0xFF;
    static constexpr Coord kInfiniteFrontier = std::numeric_limits<Coord>::max();

    RotorState(Mechanism mechanism, DefaultRule rule);

    int dim() const { return mechanism_.dim(); }
    const Mechanism& mechanism() const { return mechanism_; }
    const DefaultRule& default_rule() const { return rule_; }

    /// Current rotor: where the next particle leaving x steps.
    Direction rotor(const Point& x) const { return mechanism_.at(progress(x)); }
    Progress progress(const Point& x) const;
    bool is_modified(const Point& x) const;

    /// Returns the current rotor at x, then advances it.
    Direction next_exit(const Point& x) {
        Progress& p = slot(x);
        if (p == kPristine) {
            materialize(x, p);
        }
        const Direction d = mechanism_.at(p);
        p = mechanism_.successor(p);
        return d;
    }

    /// nullopt when the column has no modified site (frontier -infinity).
    std::optional<Coord> column_frontier(const ColumnKey& column) const;

    /// True iff x_d exceeds the frontier of x's column, so every site weakly
    /// above x is pristine and points +e_d. Requires the Aligned(+e_d) rule
    /// (std::logic_error otherwise).
    bool escape_check_up(const Point& x) const;

    /// Records that a particle at x leaves along x + k e_d, k >= 0. Requires
    /// escape_check_up(x).
    void commit_escape_ray(const Point& x);

    const std::unordered_map<ColumnKey, Coord, ColumnKeyHash>& escape_rays() const { return rays_; }

    /// Materialized sites and their progress, sorted by point.
    std::vector<std::pair<Point, Progress>> materialized_sites() const;
    std::size_t materialized_count() const { return materialized_; }

    /// Restore helpers used by snapshot loading.
    void set_progress(const Point& x, Progress p);
    void add_escape_ray(const ColumnKey& column, Coord start);

    /// Hot-path access for walkers: the raw progress slot of x (kPristine
    /// if untouched) and the one-time initialisation of a pristine slot.
    Progress& slot(const Point& x) { return *progress_.slot(x); }
    void materialize(const Point& x, Progress& slot);

private:
    Progress initial_progress(const Point& x) const;
    bool on_ray(const Point& x) const;

    Mechanism mechanism_;
    DefaultRule rule_;
    bool aligned_up_;
    SiteMap<Progress> progress_;
    std::unordered_map<ColumnKey, Coord, ColumnKeyHash> frontier_;
    std::unordered_map<ColumnKey, Coord, ColumnKeyHash> rays_;
    std::size_t materialized_ = 0;
};

/// Same rule and mechanism and the same rotor at every site.
bool same_configuration(const RotorState& a, const RotorState& b);

}  // namespace rotorwalk
