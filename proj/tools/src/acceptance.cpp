#include "rotorwalk/cli/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rotorwalk/csv.hpp"
#include "rotorwalk/errors.hpp"
#include "rotorwalk/experiment.hpp"
#include "rotorwalk/green.hpp"
#include "rotorwalk/odometer.hpp"
#include "rotorwalk/random.hpp"
#include "rotorwalk/render.hpp"
#include "rotorwalk/scheduler.hpp"

namespace rotorwalk::cli {
namespace {

// Pinned from the first run on x86-64 Linux; any drift is a determinism bug.
constexpr std::uint64_t kGoldenEscapeHash = 0x97e9d7b19d489e46ULL;
constexpr std::uint64_t kGoldenRenderHash = 0xa4d7d2ad5a0399d6ULL;

constexpr std::uint64_t kAlphaSamples = 1'000'000;
constexpr std::uint64_t kAlphaHorizon = 1'000'000;
constexpr std::uint64_t kAlphaSeed = 0;

std::string fmt(double v, int precision = 4) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(precision);
    s << v;
    return s.str();
}

struct Outcome {
    bool passed;
    std::string detail;
};

// Dense Gaussian elimination with partial pivoting for Delta G = -delta_o on
// B_r; independent of the relaxation solver.
std::vector<std::pair<Point, double>> dense_green(int dim, std::int64_t radius) {
    const auto pts = Ball(dim, radius).points();
    const std::size_t m = pts.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        a[i][i] = 1.0;
        for (int k = 0; k < 2 * dim; ++k) {
            const Point y = pts[i] + Direction::from_index(k);
            for (std::size_t j = 0; j < m; ++j) {
                if (pts[j] == y) {
                    a[i][j] -= 1.0 / (2 * dim);
                }
            }
        }
        a[i][m] = pts[i].is_origin() ? 1.0 : 0.0;
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r != c && a[r][c] != 0.0) {
                const double f = a[r][c] / a[c][c];
                for (std::size_t k = c; k <= m; ++k) {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    std::vector<std::pair<Point, double>> out;
    for (std::size_t i = 0; i < m; ++i) {
        out.emplace_back(pts[i], a[i][m] / a[i][i]);
    }
    return out;
}

Outcome c1_inn() {
    std::ostringstream d;
    int checks = 0;
    for (const char* rule : {"up", "random:1"}) {
        for (std::uint64_t n : {10ULL, 50ULL, 200ULL}) {
            const InnCheck c = check_inn(Mechanism::standard(2), DefaultRule::parse(2, rule), n,
                                         Ball(2, static_cast<std::int64_t>(n)));
            checks += c.holds ? 1 : 0;
        }
        for (std::uint64_t n : {10ULL, 100ULL}) {
            const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
            const InnCheck c = check_inn(Mechanism::standard(3), DefaultRule::parse(3, rule), n, Ball(3, r));
            checks += c.holds ? 1 : 0;
        }
    }
    d << checks << "/10 exact";
    return {checks == 10, d.str()};
}

// Deterministic sample of (d, rule, n, r) configurations.
struct Config {
    int dim;
    std::string rule;
    std::uint64_t n;
    std::int64_t r;
};

std::vector<Config> sample_configs(std::uint64_t seed, int count, std::uint64_t max_n, std::int64_t max_r) {
    Xoshiro256 rng(seed);
    std::vector<Config> out;
    for (int i = 0; i < count; ++i) {
        const int dim = 2 + static_cast<int>(rng.below(2));
        std::string rule;
        switch (rng.below(4)) {
            case 0:
                rule = "up";
                break;
            case 1:
                rule = "random:" + std::to_string(rng.below(1000));
                break;
            case 2:
                rule = "split:+e1,-e1";
                break;
            default:
                rule = "aligned:-e" + std::to_string(dim);
                break;
        }
        const std::uint64_t n = 1 + rng.below(max_n);
        const auto r = static_cast<std::int64_t>(2 + rng.below(static_cast<std::uint64_t>(max_r - 1)));
        out.push_back({dim, rule, n, r});
    }
    return out;
}

Outcome c2_monotone() {
    int ok = 0;
    for (const Config& c : sample_configs(2, 20, 200, 32)) {
        const Mechanism mech = Mechanism::standard(c.dim);
        const DefaultRule rule = DefaultRule::parse(c.dim, c.rule);
        const auto small = run_finite_ball(mech, rule, c.n, Ball(c.dim, c.r)).exited;
        const auto large = run_finite_ball(mech, rule, c.n, Ball(c.dim, 2 * c.r)).exited;
        ok += large <= small ? 1 : 0;
    }
    return {ok == 20, std::to_string(ok) + "/20 triples with I_2r <= I_r"};
}

Outcome c3_flux() {
    std::int64_t worst2 = 0;
    std::int64_t worst3 = 0;
    int runs = 0;
    for (const Config& c : sample_configs(3, 10, 500, 24)) {
        const OdometerRun run = compute_odometer(Mechanism::standard(c.dim), DefaultRule::parse(c.dim, c.rule), c.n,
                                                 Ball(c.dim, c.r));
        check_flux_conservation(run);
        const FluxIdentityReport f = check_flux_identity(run);
        (c.dim == 2 ? worst2 : worst3) = std::max(c.dim == 2 ? worst2 : worst3, f.max_abs_remainder);
        ++runs;
    }
    return {runs == 10 && worst2 <= 6 && worst3 <= 10,
            "10 runs, max |R| d=2: " + std::to_string(worst2) + " (<= 6), d=3: " + std::to_string(worst3) + " (<= 10)"};
}

Outcome c4_abelian() {
    int ok = 0;
    for (const Config& c : sample_configs(4, 10, 50, 16)) {
        const Mechanism mech = Mechanism::standard(c.dim);
        const DefaultRule rule = DefaultRule::parse(c.dim, c.rule);
        const Ball ball(c.dim, c.r);
        bool all = true;
        for (StopRule stop : {StopRule::BoundaryOnly, StopRule::BoundaryOrOrigin}) {
            all = all && abelian_schedule_check(mech, rule, c.n, ball, Scheduler::sequential(), Scheduler::round_robin(), stop);
            all = all && abelian_schedule_check(mech, rule, c.n, ball, Scheduler::sequential(),
                                                Scheduler::random(derive_seed(4, c.n)), stop);
        }
        ok += all ? 1 : 0;
    }
    return {ok == 10, std::to_string(ok) + "/10 cases identical under sequential, round-robin, random"};
}

Outcome c5_d3_rate(unsigned threads) {
    const AlphaEstimate alpha = alpha_cached(3, kAlphaSamples, kAlphaHorizon, kAlphaSeed, threads);
    EscapeRunner runner(Mechanism::standard(3), DefaultRule::up(3));
    std::vector<double> ratio;
    for (std::uint64_t n : {5000ULL, 10000ULL, 20000ULL}) {
        runner.release(n - runner.stats().n);
        ratio.push_back(static_cast<double>(runner.stats().escaped) / static_cast<double>(n));
    }
    const double spread = *std::max_element(ratio.begin(), ratio.end()) - *std::min_element(ratio.begin(), ratio.end());
    const bool pass = ratio[2] >= 0.10 && ratio[2] <= alpha.estimate + 0.05 && spread < 0.05;
    return {pass, "I/n at 5k,10k,20k = " + fmt(ratio[0]) + ", " + fmt(ratio[1]) + ", " + fmt(ratio[2]) +
                      "; alpha_3 = " + fmt(alpha.estimate) + " +- " + fmt(alpha.stderr_) + "; spread " + fmt(spread)};
}

Outcome c6_d2_rate() {
    EscapeRunner runner(Mechanism::standard(2), DefaultRule::up(2));
    std::string detail = "I ln n / n:";
    bool pass = true;
    const double hi = std::numbers::pi / 2 + 0.2;
    for (std::uint64_t n : {1000ULL, 4000ULL, 16000ULL}) {
        runner.release(n - runner.stats().n);
        const double v = static_cast<double>(runner.stats().escaped) * std::log(static_cast<double>(n)) /
                         static_cast<double>(n);
        pass = pass && v >= 0.2 && v <= hi;
        detail += " n=" + std::to_string(n) + " I=" + std::to_string(runner.stats().escaped) + " -> " + fmt(v) + ";";
    }
    return {pass, detail + " window [0.2, " + fmt(hi) + "]"};
}

Outcome c7_origin() {
    std::vector<double> ratio;
    std::string detail = "u(o) pi / (2 n ln n):";
    for (std::uint64_t n : {256ULL, 1024ULL}) {
        const OdometerRun run =
            compute_odometer(Mechanism::standard(2), DefaultRule::up(2), n, Ball(2, static_cast<std::int64_t>(n)));
        const double nd = static_cast<double>(n);
        ratio.push_back(static_cast<double>(run.odometer.at_origin()) * std::numbers::pi / (2 * nd * std::log(nd)));
        detail += " n=" + std::to_string(n) + " u(o)=" + std::to_string(run.odometer.at_origin()) + " -> " +
                  fmt(ratio.back()) + ";";
    }
    const bool window = std::all_of(ratio.begin(), ratio.end(), [](double v) { return v >= 0.7 && v <= 1.3; });
    const bool drift = std::abs(ratio[1] - 1) <= std::abs(ratio[0] - 1);
    return {window && drift, detail + (drift ? " drifting toward 1" : " not drifting toward 1")};
}

Outcome c8_odometer_green() {
    const std::int64_t r = 128;
    const GreenTable g = green_exact_cached(2, r);
    const OdometerRun run = compute_odometer(Mechanism::standard(2), DefaultRule::up(2), 128, Ball(2, r));
    const ResidualProfile p = odometer_green_residual(run.odometer, g);
    const double worst = p.max_residual_within(static_cast<double>(r) / 2);
    const bool near = worst <= 0.1 * p.u_origin;
    const bool dominated = p.dominated(p.fitted_c);
    return {near && dominated, "rule up: max |u - nG| over |x| <= 64 = " + fmt(worst, 1) + " vs 0.1 u(o) = " +
                                   fmt(0.1 * p.u_origin, 1) + "; |u(o) - nG(o)| = " + fmt(p.origin_residual, 1) +
                                   "; fitted c = " + fmt(p.fitted_c, 3) + (dominated ? ", dominated" : ", not dominated")};
}

Outcome c9_columns() {
    std::vector<double> ratio;
    std::string detail = "col/n:";
    for (std::uint64_t n : {1000ULL, 4000ULL}) {
        const OdometerRun run =
            compute_odometer(Mechanism::standard(3), DefaultRule::up(3), n, Ball(3, Ball::default_radius(3, n)));
        ratio.push_back(static_cast<double>(count_columns(run.odometer)) / static_cast<double>(n));
        detail += " n=" + std::to_string(n) + " -> " + fmt(ratio.back()) + ";";
    }
    const bool floor = ratio[0] >= 0.05 && ratio[1] >= 0.05;
    const bool stable = std::max(ratio[0], ratio[1]) <= 2 * std::min(ratio[0], ratio[1]);
    return {floor && stable, detail};
}

Outcome c10_green(unsigned threads) {
    bool pass = true;
    std::string detail;
    const GreenTable small = green_exact(2, 2, 1e-14);
    double dense_err = 0;
    for (const auto& [x, v] : dense_green(2, 2)) {
        dense_err = std::max(dense_err, std::abs(v - small(x)));
    }
    pass = pass && dense_err <= 1e-12;
    detail += "r=2 vs dense: " + [&] {
        std::ostringstream s;
        s << dense_err;
        return s.str();
    }();

    const std::vector<std::pair<std::int64_t, std::vector<Point>>> cases{
        {16, {Point{0, 0}, Point{1, 0}, Point{3, 2}, Point{-5, 4}, Point{0, -10}}},
        {8, {Point{0, 0, 0}, Point{2, 0, 0}, Point{1, 1, 1}, Point{-3, 2, 0}, Point{0, 0, -5}}}};
    double worst_z = 0;
    for (const auto& [r, xs] : cases) {
        const int dim = xs.front().dim();
        const GreenTable g = green_exact_cached(dim, r);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const MonteCarloEstimate mc = green_mc(dim, r, xs[i], 200000, derive_seed(10, i), threads);
            const double z = std::abs(mc.mean - g(xs[i])) / mc.stderr_;
            worst_z = std::max(worst_z, z);
        }
    }
    pass = pass && worst_z <= 3;
    detail += "; MC max |z| = " + fmt(worst_z, 2) + " over 10 points; G(o)-(2/pi)ln r:";
    for (std::int64_t r : {32, 64, 128}) {
        const double gap = green_exact_cached(2, r).at_origin() - green_origin_asymptotic(r);
        pass = pass && gap >= 0.5 && gap <= 1.5;
        detail += " r=" + std::to_string(r) + " " + fmt(gap);
    }
    return {pass, detail};
}

Outcome c11_goldens() {
    const std::string csv1 = golden_escape_csv();
    const std::string csv2 = golden_escape_csv();
    const std::string ppm1 = golden_render_ppm();
    const std::string ppm2 = golden_render_ppm();
    const std::uint64_t hc = fnv1a64(csv1);
    const std::uint64_t hp = fnv1a64(ppm1);
    const bool pass = csv1 == csv2 && ppm1 == ppm2 && hc == kGoldenEscapeHash && hp == kGoldenRenderHash;
    std::ostringstream d;
    d << std::hex << "escape csv fnv1a64 " << hc << " (pinned " << kGoldenEscapeHash << "), ppm " << hp
      << " (pinned " << kGoldenRenderHash << ")";
    return {pass, d.str()};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string golden_escape_csv() {
    ExperimentDescriptor d;
    d.n = 100;
    const ExperimentResult r = run_experiment(d);
    std::ostringstream out;
    write_escape_csv(out, {r.row});
    return out.str();
}

std::string golden_render_ppm() {
    ExperimentDescriptor d;
    d.n = 100;
    std::optional<RotorState> state;
    run_experiment(d, &state);
    return render_rotors(*state);
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only, unsigned threads, std::ostream& log) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"inn exactness", c1_inn},
        {"finite-ball monotonicity", c2_monotone},
        {"edge flux bound", c3_flux},
        {"abelian property", c4_abelian},
        {"d=3 escape rate", [threads] { return c5_d3_rate(threads); }},
        {"d=2 escape rate", c6_d2_rate},
        {"odometer at origin", c7_origin},
        {"odometer vs Green", c8_odometer_green},
        {"column lower bound", c9_columns},
        {"Green solver", [threads] { return c10_green(threads); }},
        {"determinism goldens", c11_goldens},
    };
    std::vector<CriterionResult> results;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
            continue;
        }
        const auto& [name, run] = criteria[static_cast<std::size_t>(id - 1)];
        CriterionResult res;
        res.id = id;
        res.name = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = run();
            res.passed = o.passed;
            res.detail = o.detail;
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        log << (res.passed ? "[PASS] " : "[FAIL] ") << id << ". " << res.name << " (" << fmt(res.seconds, 1)
            << " s): " << res.detail << std::endl;
        results.push_back(res);
    }
    return results;
}

}  // namespace rotorwalk::cli
