#include "rotorwalk/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

#include "rotorwalk/binary_io.hpp"

namespace rotorwalk {
namespace {

constexpr std::string_view kSnapshotMagic{"RTW1", 4};
constexpr std::string_view kOdometerMagic{"RTO1", 4};
constexpr std::uint8_t kVersion = 1;

void write_point(binary::Writer& w, const Point& p) {
    for (auto c : p.coords()) {
        w.i64(c);
    }
}

Point read_point(binary::Reader& r, int dim) {
    Point p(dim);
    for (int i = 0; i < dim; ++i) {
        p[i] = r.i64();
    }
    return p;
}

int read_header(binary::Reader& r, std::string_view magic) {
    if (r.bytes(4) != magic) {
        throw std::runtime_error("bad magic, expected " + std::string(magic));
    }
    if (const auto v = r.u8(); v != kVersion) {
        throw std::runtime_error("unsupported version " + std::to_string(v));
    }
    const int dim = r.u8();
    validate_dimension(dim);
    return dim;
}

}  // namespace

void write_snapshot(std::ostream& out, const RotorState& state) {
    const std::string rule = state.default_rule().spec();
    if (rule == "explicit") {
        throw std::invalid_argument("explicit rotor rules cannot be written to a snapshot");
    }
    binary::Writer w(out);
    w.bytes(kSnapshotMagic);
    w.u8(kVersion);
    w.u8(static_cast<std::uint8_t>(state.dim()));
    w.str16(rule);
    w.str16(state.mechanism().to_string());
    const auto sites = state.materialized_sites();
    w.u64(sites.size());
    for (const auto& [p, prog] : sites) {
        write_point(w, p);
        w.u8(static_cast<std::uint8_t>(state.mechanism().at(prog).index()));
        w.u8(prog);
    }
    std::vector<std::pair<ColumnKey, Point::Coord>> rays(state.escape_rays().begin(), state.escape_rays().end());
    std::sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    w.u64(rays.size());
    for (const auto& [col, start] : rays) {
        for (int i = 0; i < state.dim() - 1; ++i) {
            w.i64(col.base()[i]);
        }
        w.i64(start);
    }
}

RotorState read_snapshot(std::istream& in) {
    binary::Reader r(in);
    const int dim = read_header(r, kSnapshotMagic);
    const std::string rule = r.str16();
    const std::string mech = r.str16();
    RotorState state(Mechanism::parse(dim, mech), DefaultRule::parse(dim, rule));
    const std::uint64_t count = r.u64();
    std::vector<std::pair<Point, Mechanism::Progress>> sites;
    for (std::uint64_t i = 0; i < count; ++i) {
        const Point p = read_point(r, dim);
        const std::uint8_t dir = r.u8();
        const std::uint8_t prog = r.u8();
        if (prog >= state.mechanism().period() || state.mechanism().at(prog).index() != dir) {
            throw std::runtime_error("snapshot record at " + to_string(p) + " is inconsistent");
        }
        sites.emplace_back(p, prog);
    }
    const std::uint64_t rays = r.u64();
    for (std::uint64_t i = 0; i < rays; ++i) {
        Point at(dim);
        for (int a = 0; a < dim - 1; ++a) {
            at[a] = r.i64();
        }
        at[dim - 1] = r.i64();
        state.add_escape_ray(ColumnKey::of(at), at[dim - 1]);
    }
    r.expect_end();
    for (const auto& [p, prog] : sites) {
        state.set_progress(p, prog);
    }
    return state;
}

void save_snapshot(const std::filesystem::path& file, const RotorState& state) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + file.string() + " for writing");
    }
    write_snapshot(out, state);
}

RotorState load_snapshot(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + file.string());
    }
    return read_snapshot(in);
}

void write_odometer(std::ostream& out, const Odometer& u) {
    binary::Writer w(out);
    w.bytes(kOdometerMagic);
    w.u8(kVersion);
    w.u8(static_cast<std::uint8_t>(u.dim()));
    w.i64(u.ball().radius());
    w.u64(u.particles());
    const auto support = u.support();
    w.u64(support.size());
    for (const auto& [p, c] : support) {
        write_point(w, p);
        w.u64(c);
    }
}

Odometer read_odometer(std::istream& in) {
    binary::Reader r(in);
    const int dim = read_header(r, kOdometerMagic);
    const std::int64_t radius = r.i64();
    Odometer u(r.u64(), Ball(dim, radius));
    const std::uint64_t count = r.u64();
    for (std::uint64_t i = 0; i < count; ++i) {
        const Point p = read_point(r, dim);
        if (!u.ball().contains(p)) {
            throw std::runtime_error("odometer record outside the ball");
        }
        u.counter(p) = r.u64();
    }
    r.expect_end();
    return u;
}

}  // namespace rotorwalk
