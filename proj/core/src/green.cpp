#include "rotorwalk/int128.hpp"
#include "rotorwalk/green.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "rotorwalk/ball.hpp"
#include "rotorwalk/binary_io.hpp"
#include "rotorwalk/direction.hpp"
#include "rotorwalk/errors.hpp"
#include "rotorwalk/random.hpp"

namespace rotorwalk {
namespace {

constexpr char kGreenMagic[] = "RTG1";
constexpr std::uint8_t kGreenVersion = 1;

// First zero of J_{d/2-1}; the lowest Dirichlet eigenvalue of the unit ball
// in R^d is its square.
double first_bessel_zero(int dim) {
    static constexpr std::array<double, 7> zeros{2.404825557695773, 3.141592653589793, 3.831705970207512,
                                                 4.493409457909064, 5.135622301840683, 5.763459196894550,
                                                 6.380161895923984};
    return zeros[static_cast<std::size_t>(dim - 2)];
}

double sor_omega(int dim, std::int64_t radius) {
    const double j = first_bessel_zero(dim);
    const double reff = static_cast<double>(radius) + 0.5;
    const double mu = 1.0 - j * j / (2.0 * dim * reff * reff);
    if (mu <= 0) {
        return 1.0;
    }
    return std::clamp(2.0 / (1.0 + std::sqrt(1.0 - mu * mu)), 1.0, 1.99);
}

void check_radius(int dim, std::int64_t radius) {
    validate_dimension(dim);
    if (radius < 1) {
        throw std::invalid_argument("radius must be at least 1");
    }
    double cells = 1;
    for (int i = 0; i < dim; ++i) {
        cells *= static_cast<double>(2 * radius + 1);
    }
    if (cells > 4e8) {
        throw std::invalid_argument("Green table for d=" + std::to_string(dim) + ", r=" + std::to_string(radius) +
                                    " exceeds the memory budget");
    }
}

}  // namespace

GreenTable::GreenTable(int dim, std::int64_t radius) : dim_(dim), radius_(radius), side_(2 * radius + 1) {
    check_radius(dim, radius);
    stride_.assign(static_cast<std::size_t>(dim), 1);
    std::size_t total = 1;
    for (int i = dim - 1; i >= 0; --i) {
        stride_[static_cast<std::size_t>(i)] = total;
        total *= static_cast<std::size_t>(side_);
    }
    values_.assign(total, 0.0);
    origin_index_ = index(Point::origin(dim));
}

bool GreenTable::in_box(const Point& x) const {
    for (int i = 0; i < dim_; ++i) {
        if (x[i] < -radius_ || x[i] > radius_) {
            return false;
        }
    }
    return true;
}

std::size_t GreenTable::index(const Point& x) const {
    std::size_t k = 0;
    for (int i = 0; i < dim_; ++i) {
        k += static_cast<std::size_t>(x[i] + radius_) * stride_[static_cast<std::size_t>(i)];
    }
    return k;
}

double GreenTable::operator()(const Point& x) const {
    if (x.dim() != dim_) {
        throw std::invalid_argument("point dimension does not match the Green table");
    }
    return in_box(x) ? values_[index(x)] : 0.0;
}

double GreenTable::defect(const Point& x) const {
    double sum = 0;
    for (int i = 0; i < 2 * dim_; ++i) {
        sum += (*this)(x + Direction::from_index(i));
    }
    return sum / (2.0 * dim_) - (*this)(x) + (x.is_origin() ? 1.0 : 0.0);
}

std::vector<std::pair<Point, double>> GreenTable::entries() const {
    std::vector<std::pair<Point, double>> out;
    const Ball ball(dim_, radius_);
    for (const Point& x : ball.points()) {
        out.emplace_back(x, values_[index(x)]);
    }
    return out;
}

void GreenTable::write_binary(std::ostream& out) const {
    binary::Writer w(out);
    w.bytes(std::string_view(kGreenMagic, 4));
    w.u8(kGreenVersion);
    w.u8(static_cast<std::uint8_t>(dim_));
    w.i64(radius_);
    w.f64(tolerance_);
    w.f64(residual_);
    w.u64(sweeps_);
    w.u64(values_.size());
    for (double v : values_) {
        w.f64(v);
    }
}

GreenTable GreenTable::read_binary(std::istream& in) {
    binary::Reader r(in);
    if (r.bytes(4) != std::string_view(kGreenMagic, 4)) {
        throw std::runtime_error("not a Green table file");
    }
    if (r.u8() != kGreenVersion) {
        throw std::runtime_error("unsupported Green table version");
    }
    const int dim = r.u8();
    const std::int64_t radius = r.i64();
    GreenTable g(dim, radius);
    g.tolerance_ = r.f64();
    g.residual_ = r.f64();
    g.sweeps_ = r.u64();
    if (r.u64() != g.values_.size()) {
        throw std::runtime_error("Green table size mismatch");
    }
    for (double& v : g.values_) {
        v = r.f64();
    }
    r.expect_end();
    return g;
}

GreenTable green_exact(int dim, std::int64_t radius, double tol, std::uint64_t sweep_cap) {
    if (!(tol > 0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    GreenTable g(dim, radius);
    g.tolerance_ = tol;
    const Ball ball(dim, radius);
    std::vector<std::size_t> cells;
    for (const Point& x : ball.points()) {
        cells.push_back(g.index(x));
    }
    std::vector<std::size_t> offsets;
    for (int i = 0; i < dim; ++i) {
        offsets.push_back(g.stride_[static_cast<std::size_t>(i)]);
    }
    const double inv = 1.0 / (2.0 * dim);
    const double omega = sor_omega(dim, radius);
    const std::size_t origin = g.origin_index_;
    double* v = g.values_.data();

    auto neighbour_sum = [&](std::size_t k) {
        double s = 0;
        for (std::size_t off : offsets) {
            s += v[k + off] + v[k - off];
        }
        return s;
    };
    auto max_residual = [&] {
        double m = 0;
        for (std::size_t k : cells) {
            m = std::max(m, std::abs(neighbour_sum(k) * inv - v[k] + (k == origin ? 1.0 : 0.0)));
        }
        return m;
    };

    constexpr std::uint64_t kCheckEvery = 8;
    for (std::uint64_t sweep = 1; sweep <= sweep_cap; ++sweep) {
        for (std::size_t k : cells) {
            const double target = neighbour_sum(k) * inv + (k == origin ? 1.0 : 0.0);
            v[k] += omega * (target - v[k]);
        }
        if (sweep % kCheckEvery == 0 || sweep == sweep_cap) {
            g.residual_ = max_residual();
            g.sweeps_ = sweep;
            if (g.residual_ <= tol) {
                return g;
            }
        }
    }
    throw ConvergenceError("Green solver did not reach tolerance " + std::to_string(tol) + " in " +
                           std::to_string(sweep_cap) + " sweeps (residual " + std::to_string(g.residual_) + ")");
}

std::optional<std::filesystem::path> cache_directory(std::optional<std::filesystem::path> dir) {
    if (dir) {
        return dir;
    }
    if (const char* env = std::getenv("ROTORWALK_CACHE"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return std::nullopt;
}

GreenTable green_exact_cached(int dim, std::int64_t radius, double tol, std::optional<std::filesystem::path> dir) {
    const auto root = cache_directory(std::move(dir));
    if (!root) {
        return green_exact(dim, radius, tol);
    }
    char name[96];
    std::snprintf(name, sizeof name, "green_d%d_r%lld_tol%.3e.rtg", dim, static_cast<long long>(radius), tol);
    const std::filesystem::path file = *root / name;
    if (std::ifstream in(file, std::ios::binary); in) {
        try {
            GreenTable g = GreenTable::read_binary(in);
            if (g.dim() == dim && g.radius() == radius && g.tolerance() == tol) {
                return g;
            }
        } catch (const std::runtime_error&) {
            // Corrupt or stale entry: recompute and overwrite.
        }
    }
    GreenTable g = green_exact(dim, radius, tol);
    std::filesystem::create_directories(*root);
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        g.write_binary(out);
        if (!out) {
            throw std::runtime_error("cannot write Green cache " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, file);
    return g;
}

MonteCarloEstimate green_mc(int dim, std::int64_t radius, const Point& x, std::uint64_t samples,
                            std::uint64_t seed, unsigned threads) {
    validate_dimension(dim);
    if (x.dim() != dim) {
        throw std::invalid_argument("point dimension does not match");
    }
    const Ball ball(dim, radius);
    if (!ball.contains(x)) {
        throw std::invalid_argument("start point " + to_string(x) + " is outside the ball");
    }
    if (samples == 0) {
        throw std::invalid_argument("green_mc needs at least one sample");
    }
    const std::int64_t r2 = ball.radius2();
    const auto d = static_cast<std::uint64_t>(2 * dim);

    auto one = [&](std::uint64_t i) -> std::uint64_t {
        Xoshiro256 rng(derive_seed(seed, i));
        std::array<std::int64_t, kMaxDim> p{};
        for (int a = 0; a < dim; ++a) {
            p[static_cast<std::size_t>(a)] = x[a];
        }
        std::int64_t n2 = x.norm2();
        std::uint64_t visits = n2 == 0 ? 1 : 0;
        while (true) {
            const auto dir = rng.below(d);
            std::int64_t& c = p[dir >> 1];
            const std::int64_t s = (dir & 1) != 0 ? -1 : 1;
            n2 += 2 * s * c + 1;
            c += s;
            if (n2 >= r2) {
                return visits;
            }
            if (n2 == 0) {
                ++visits;
            }
        }
    };

    threads = std::max(1U, threads);
    std::vector<uint128> sum(threads, 0);
    std::vector<uint128> sum2(threads, 0);
    auto work = [&](unsigned t) {
        const std::uint64_t lo = samples * t / threads;
        const std::uint64_t hi = samples * (t + 1) / threads;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t v = one(i);
            sum[t] += v;
            sum2[t] += static_cast<uint128>(v) * v;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
    }
    uint128 s = 0;
    uint128 s2 = 0;
    for (unsigned t = 0; t < threads; ++t) {
        s += sum[t];
        s2 += sum2[t];
    }
    const double n = static_cast<double>(samples);
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = static_cast<double>(s) / n;
    if (samples > 1) {
        const double var = (static_cast<double>(s2) - static_cast<double>(s) * est.mean) / (n - 1);
        est.stderr_ = std::sqrt(std::max(0.0, var) / n);
    }
    return est;
}

double green_origin_asymptotic(std::int64_t radius) {
    return 2.0 / std::numbers::pi * std::log(static_cast<double>(radius));
}

double green_asymptotic(int dim, std::int64_t radius, const Point& x, double a_d) {
    validate_dimension(dim);
    if (x.is_origin()) {
        throw std::invalid_argument("asymptotic form is undefined at the origin");
    }
    const double norm = std::sqrt(static_cast<double>(x.norm2()));
    const double r = static_cast<double>(radius);
    if (dim == 2) {
        return 2.0 / std::numbers::pi * (std::log(r) - std::log(norm));
    }
    return a_d * (std::pow(norm, 2.0 - dim) - std::pow(r, 2.0 - dim));
}

AdFit fit_a_d(const GreenTable& green, std::optional<double> inner, std::optional<double> outer) {
    const int dim = green.dim();
    if (dim < 3) {
        throw std::invalid_argument("a_d is only defined for d >= 3");
    }
    AdFit fit;
    fit.inner = inner.value_or(2.0);
    fit.outer = outer.value_or(static_cast<double>(green.radius()) / 2.0);
    const double tail = std::pow(static_cast<double>(green.radius()), 2.0 - dim);
    double num = 0;
    double den = 0;
    std::vector<std::pair<double, double>> used;
    for (const auto& [x, g] : green.entries()) {
        const double norm = std::sqrt(static_cast<double>(x.norm2()));
        if (norm < fit.inner || norm > fit.outer) {
            continue;
        }
        const double phi = std::pow(norm, 2.0 - dim) - tail;
        num += g * phi;
        den += phi * phi;
        used.emplace_back(g, phi);
    }
    if (used.empty() || den <= 0) {
        throw std::invalid_argument("fit window contains no usable points");
    }
    fit.a_d = num / den;
    fit.points = used.size();
    double sq = 0;
    for (const auto& [g, phi] : used) {
        const double rel = (g - fit.a_d * phi) / g;
        sq += rel * rel;
    }
    fit.rms_relative = std::sqrt(sq / static_cast<double>(used.size()));
    return fit;
}

AdFit fit_a_d(int dim, std::int64_t radius) {
    if (dim < 3) {
        throw std::invalid_argument("a_d is only defined for d >= 3");
    }
    return fit_a_d(green_exact_cached(dim, radius));
}

}  // namespace rotorwalk
