#include "rotorwalk/mechanism.hpp"

#include <stdexcept>

namespace rotorwalk {

namespace {
constexpr Mechanism::Progress kAbsent = 0xFF;
}

Mechanism::Mechanism(int dim, std::vector<Direction> sequence) : dim_(dim), sequence_(std::move(sequence)) {
    validate_dimension(dim);
    if (sequence_.empty()) {
        throw std::invalid_argument("mechanism exit sequence must be nonempty");
    }
    if (sequence_.size() > kMaxPeriod) {
        throw std::invalid_argument("mechanism period exceeds " + std::to_string(kMaxPeriod));
    }
    first_index_.fill(kAbsent);
    for (std::size_t i = 0; i < sequence_.size(); ++i) {
        const Direction d = sequence_[i];
        if (d.axis() >= dim) {
            throw std::invalid_argument("direction " + rotorwalk::to_string(d) +
                                        " not valid in dimension " + std::to_string(dim));
        }
        auto& slot = first_index_[static_cast<std::size_t>(d.index())];
        if (slot == kAbsent) {
            slot = static_cast<Progress>(i);
        }
    }
    cyclic_ = sequence_.size() == static_cast<std::size_t>(2 * dim);
    for (int i = 0; cyclic_ && i < 2 * dim; ++i) {
        cyclic_ = first_index_[static_cast<std::size_t>(i)] != kAbsent;
    }
}

Mechanism Mechanism::standard(int dim) {
    validate_dimension(dim);
    if (dim == 2) {
        return Mechanism(2, {Direction::positive(1), Direction::positive(0), Direction::negative(1),
                             Direction::negative(0)});
    }
    return Mechanism(dim, direction_set(dim));
}

Mechanism Mechanism::parse(int dim, std::string_view spec) {
    if (spec.empty() || spec == "default") {
        return standard(dim);
    }
    std::vector<Direction> seq;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? spec.size() : comma;
        seq.push_back(parse_direction(spec.substr(start, end - start), dim));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return Mechanism(dim, std::move(seq));
}

std::optional<Mechanism::Progress> Mechanism::first_index(Direction dir) const {
    if (dir.axis() >= dim_) {
        return std::nullopt;
    }
    const Progress p = first_index_[static_cast<std::size_t>(dir.index())];
    if (p == kAbsent) {
        return std::nullopt;
    }
    return p;
}

std::string Mechanism::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < sequence_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += rotorwalk::to_string(sequence_[i]);
    }
    return out;
}

}  // namespace rotorwalk
