#include "rotorwalk/rotor_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace rotorwalk {

RotorState::RotorState(Mechanism mechanism, DefaultRule rule)
    : mechanism_(std::move(mechanism)), rule_(std::move(rule)), aligned_up_(rule_.is_aligned_up()),
      progress_(mechanism_.dim(), kPristine) {
    if (rule_.dim() != mechanism_.dim()) {
        throw std::invalid_argument("rotor rule and mechanism have different dimensions");
    }
}

RotorState::Progress RotorState::initial_progress(const Point& x) const {
    const Direction d = rule_(x);
    const auto p = mechanism_.first_index(d);
    if (!p) {
        throw std::invalid_argument("initial rotor " + to_string(d) + " at " + to_string(x) +
                                    " does not occur in mechanism " + mechanism_.to_string());
    }
    return on_ray(x) ? mechanism_.successor(*p) : *p;
}

bool RotorState::on_ray(const Point& x) const {
    if (rays_.empty()) {
        return false;
    }
    const auto it = rays_.find(ColumnKey::of(x));
    return it != rays_.end() && x[dim() - 1] >= it->second;
}

RotorState::Progress RotorState::progress(const Point& x) const {
    const Progress p = progress_.get(x);
    return p == kPristine ? initial_progress(x) : p;
}

bool RotorState::is_modified(const Point& x) const { return progress_.get(x) != kPristine || on_ray(x); }

void RotorState::materialize(const Point& x, Progress& slot) {
    slot = initial_progress(x);
    ++materialized_;
    auto [it, inserted] = frontier_.try_emplace(ColumnKey::of(x), x[dim() - 1]);
    if (!inserted && it->second < x[dim() - 1]) {
        it->second = x[dim() - 1];
    }
}

std::optional<RotorState::Coord> RotorState::column_frontier(const ColumnKey& column) const {
    const auto it = frontier_.find(column);
    if (it == frontier_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool RotorState::escape_check_up(const Point& x) const {
    if (!aligned_up_) {
        throw std::logic_error("escape_check_up requires the aligned-up rotor rule, got " + rule_.spec());
    }
    const auto it = frontier_.find(ColumnKey::of(x));
    return it == frontier_.end() || it->second < x[dim() - 1];
}

void RotorState::commit_escape_ray(const Point& x) {
    if (!escape_check_up(x)) {
        throw std::logic_error("escape ray committed below the frontier at " + to_string(x));
    }
    const ColumnKey column = ColumnKey::of(x);
    rays_[column] = x[dim() - 1];
    frontier_[column] = kInfiniteFrontier;
}

std::vector<std::pair<Point, RotorState::Progress>> RotorState::materialized_sites() const {
    std::vector<std::pair<Point, Progress>> out;
    out.reserve(materialized_);
    progress_.for_each([&](const Point& p, std::span<const Progress> lanes) { out.emplace_back(p, lanes[0]); });
    std::sort(out.begin(), out.end());
    return out;
}

void RotorState::set_progress(const Point& x, Progress p) {
    if (p >= mechanism_.period()) {
        throw std::invalid_argument("progress index out of range for mechanism");
    }
    Progress& s = slot(x);
    if (s == kPristine) {
        materialize(x, s);
    }
    s = p;
}

void RotorState::add_escape_ray(const ColumnKey& column, Coord start) {
    rays_[column] = start;
    frontier_[column] = kInfiniteFrontier;
}

bool same_configuration(const RotorState& a, const RotorState& b) {
    if (!(a.mechanism() == b.mechanism()) || a.default_rule().spec() != b.default_rule().spec()) {
        return false;
    }
    if (a.escape_rays() != b.escape_rays()) {
        return false;
    }
    const auto sa = a.materialized_sites();
    const auto sb = b.materialized_sites();
    // A materialized site may still hold its initial rotor; compare rotors
    // over the union of materialized sites.
    for (const auto& [p, prog] : sa) {
        if (b.progress(p) != prog) {
            return false;
        }
    }
    for (const auto& [p, prog] : sb) {
        if (a.progress(p) != prog) {
            return false;
        }
    }
    return true;
}

}  // namespace rotorwalk
