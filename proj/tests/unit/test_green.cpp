#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <sstream>

#include "convert.hpp"
#include "naive.hpp"
#include "rotorwalk/errors.hpp"
#include "rotorwalk/green.hpp"

using namespace rotorwalk;

namespace {

// P(SRW from o avoids o during steps 1..h), by exact dynamic programming
// over the killed walk's distribution.
double no_return_probability(int dim, int h) {
    std::map<oracle::Vec, double> mass{{oracle::Vec(static_cast<std::size_t>(dim), 0), 1.0}};
    double returned = 0;
    for (int t = 0; t < h; ++t) {
        std::map<oracle::Vec, double> next;
        for (const auto& [x, p] : mass) {
            for (int a = 0; a < dim; ++a) {
                for (int s : {-1, 1}) {
                    oracle::Vec y = oracle::add(x, oracle::unit(dim, a, s));
                    if (oracle::is_zero(y)) {
                        returned += p / (2 * dim);
                    } else {
                        next[y] += p / (2 * dim);
                    }
                }
            }
        }
        mass = std::move(next);
    }
    return 1.0 - returned;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("rotorwalk_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(GreenExact, RadiusOneIsOneVisit) {
    const GreenTable g = green_exact(2, 1);
    EXPECT_NEAR(g.at_origin(), 1.0, 1e-10);
    EXPECT_EQ(g(Point{1, 0}), 0.0);
}

// d=2, r=2: the ball is o, four axis neighbours and four diagonals. By
// symmetry G(o)=a, G(e)=b, G(diag)=c with a - b = 1, b = (a + 2c)/4 and
// c = b/2, so a = 3/2, b = 1/2, c = 1/4.
TEST(GreenExact, HandSolvedRadiusTwo) {
    const GreenTable g = green_exact(2, 2, 1e-14);
    EXPECT_NEAR(g.at_origin(), 1.5, 1e-12);
    EXPECT_NEAR(g(Point{1, 0}), 0.5, 1e-12);
    EXPECT_NEAR(g(Point{0, -1}), 0.5, 1e-12);
    EXPECT_NEAR(g(Point{1, 1}), 0.25, 1e-12);
    EXPECT_EQ(g(Point{2, 0}), 0.0);
    EXPECT_EQ(g(Point{9, 9}), 0.0);
}

TEST(GreenExact, AgreesWithDenseElimination) {
    for (auto [d, r] : {std::pair{2, 7}, std::pair{3, 4}, std::pair{4, 2}}) {
        const GreenTable g = green_exact(d, r, 1e-13);
        const auto ref = oracle::dense_green(d, r);
        ASSERT_EQ(g.entries().size(), ref.size());
        for (const auto& [v, value] : ref) {
            EXPECT_NEAR(g(oracle::to_point(v)), value, 1e-10) << d << " " << r;
        }
        for (const auto& [p, value] : g.entries()) {
            EXPECT_LT(std::abs(g.defect(p)), 1e-12);
        }
        EXPECT_LE(g.residual(), 1e-13);
    }
}

TEST(GreenExact, SymmetricUnderAxisReflection) {
    const GreenTable g = green_exact(3, 6);
    for (const auto& [p, value] : g.entries()) {
        Point q = p;
        q[0] = -q[0];
        std::swap(q[1], q[2]);
        EXPECT_NEAR(g(q), value, 1e-9);
    }
}

// G_r(o) = (2/pi) log r + (2 gamma + 3 log 2)/pi + o(1) for planar SRW.
TEST(GreenExact, PlanarOriginConstant) {
    const double constant = (2 * std::numbers::egamma + 3 * std::numbers::ln2) / std::numbers::pi;
    double prev = 0;
    for (auto [r, tol] : {std::pair<std::int64_t, double>{16, 0.015}, {64, 0.005}}) {
        const GreenTable g = green_exact(2, r);
        const double offset = g.at_origin() - green_origin_asymptotic(r);
        EXPECT_NEAR(offset, constant, tol) << r;
        if (prev != 0) {
            EXPECT_LT(std::abs(offset - constant), std::abs(prev - constant));
        }
        prev = offset;
    }
}

TEST(GreenExact, SweepCapRaisesConvergenceError) {
    EXPECT_THROW(green_exact(2, 16, 1e-10, 1), ConvergenceError);
    EXPECT_THROW(green_exact(2, 0), std::invalid_argument);
}

TEST(GreenExact, CachedMatchesFreshAndReusesFile) {
    const auto dir = scratch_dir("green_cache");
    const GreenTable fresh = green_exact(3, 5);
    const GreenTable first = green_exact_cached(3, 5, kDefaultGreenTolerance, dir);
    ASSERT_EQ(std::distance(std::filesystem::directory_iterator(dir), {}), 1);
    const GreenTable second = green_exact_cached(3, 5, kDefaultGreenTolerance, dir);
    for (const auto& [p, v] : fresh.entries()) {
        EXPECT_EQ(first(p), v);
        EXPECT_EQ(second(p), v);
    }
    EXPECT_EQ(second.sweeps(), fresh.sweeps());
    std::filesystem::remove_all(dir);
}

TEST(GreenExact, BinaryRoundTripAndCorruption) {
    const GreenTable g = green_exact(2, 9);
    std::stringstream buf;
    g.write_binary(buf);
    const GreenTable back = GreenTable::read_binary(buf);
    EXPECT_EQ(back.radius(), 9);
    EXPECT_EQ(back.residual(), g.residual());
    for (const auto& [p, v] : g.entries()) {
        EXPECT_EQ(back(p), v);
    }
    std::string bytes = buf.str();
    std::stringstream truncated(std::string(bytes.substr(0, bytes.size() / 2)));
    EXPECT_ANY_THROW(GreenTable::read_binary(truncated));
    std::stringstream bad("XXXX" + bytes.substr(4));
    EXPECT_ANY_THROW(GreenTable::read_binary(bad));
}

TEST(GreenMonteCarlo, AgreesWithExactWithinFourSigma) {
    const std::int64_t r = 8;
    const GreenTable g = green_exact(2, r);
    for (const Point& x : {Point{0, 0}, Point{3, 2}}) {
        const MonteCarloEstimate e = green_mc(2, r, x, 20000, 11);
        EXPECT_NEAR(e.mean, g(x), 4 * e.stderr_ + 1e-12) << to_string(x);
        EXPECT_EQ(e.samples, 20000U);
    }
}

TEST(GreenMonteCarlo, IndependentOfThreadCount) {
    const MonteCarloEstimate a = green_mc(3, 5, Point{1, 1, 0}, 3000, 5, 1);
    const MonteCarloEstimate b = green_mc(3, 5, Point{1, 1, 0}, 3000, 5, 3);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(GreenAsymptotic, Formulae) {
    EXPECT_NEAR(green_asymptotic(2, 100, Point{10, 0}, 0), (2 / std::numbers::pi) * std::log(10.0), 1e-12);
    EXPECT_NEAR(green_asymptotic(3, 10, Point{2, 0, 0}, 0.5), 0.5 * (0.5 - 0.1), 1e-12);
    EXPECT_THROW(green_asymptotic(2, 10, Point{0, 0}, 0), std::invalid_argument);
}

// Continuum constant for SRW visits in Z^3: G(x) ~ 3/(2 pi |x|).
TEST(FitAd, ApproachesContinuumConstantInD3) {
    const double target = 3 / (2 * std::numbers::pi);
    const AdFit f16 = fit_a_d(3, 16);
    const AdFit f32 = fit_a_d(3, 32);
    EXPECT_NEAR(f32.a_d, target, 0.015 * target);
    EXPECT_LT(std::abs(f32.a_d - target), std::abs(f16.a_d - target));
    EXPECT_LT(std::abs(f32.a_d - f16.a_d) / f32.a_d, 0.01);
    EXPECT_DOUBLE_EQ(f32.inner, 2.0);
    EXPECT_DOUBLE_EQ(f32.outer, 16.0);
    EXPECT_GT(f32.points, 0U);
}

TEST(FitAd, RejectsPlaneAndEmptyWindow) {
    EXPECT_THROW(fit_a_d(2, 16), std::invalid_argument);
    EXPECT_THROW(fit_a_d(green_exact(3, 6), 5.0, 4.0), std::invalid_argument);
}

TEST(Alpha, MatchesExactShortHorizonProbability) {
    for (auto [d, h] : {std::pair{2, 24}, std::pair{3, 24}, std::pair{4, 16}}) {
        const double exact = no_return_probability(d, h);
        const AlphaEstimate e = alpha_mc(d, 200000, static_cast<std::uint64_t>(h), 3);
        EXPECT_NEAR(e.estimate, exact, 4 * e.stderr_) << d;
    }
}

TEST(Alpha, SmallHorizonsAreExact) {
    EXPECT_NEAR(no_return_probability(2, 4), 172.0 / 256.0, 1e-15);
    const AlphaEstimate e = alpha_mc(2, 50000, 2, 1);
    EXPECT_NEAR(e.estimate, 0.75, 4 * e.stderr_);
}

// Escape probability of SRW in Z^3 is 1 - 1/G(0) = 0.65946...; truncation
// only biases the estimate upward.
TEST(Alpha, ThreeDimensionalEscapeProbability) {
    const AlphaEstimate e = alpha_mc(3, 20000, 100000, 9);
    EXPECT_GT(e.estimate, 0.65946 - 4 * e.stderr_);
    EXPECT_LT(e.estimate, 0.65946 + 4 * e.stderr_ + 0.01);
}

TEST(Alpha, NestedIsMonotoneAndMatchesSingle) {
    const auto nested = alpha_mc_nested(3, 5000, {10, 100, 1000}, 4);
    ASSERT_EQ(nested.size(), 3U);
    EXPECT_GE(nested[0].estimate, nested[1].estimate);
    EXPECT_GE(nested[1].estimate, nested[2].estimate);
    EXPECT_EQ(alpha_mc(3, 5000, 100, 4).estimate, nested[1].estimate);
    EXPECT_EQ(alpha_mc(3, 5000, 1000, 4, 1).estimate, alpha_mc(3, 5000, 1000, 4, 4).estimate);
    EXPECT_THROW(alpha_mc_nested(3, 10, {100, 10}, 0), std::invalid_argument);
    EXPECT_THROW(alpha_mc(3, 0, 10, 0), std::invalid_argument);
}

TEST(Alpha, CacheRoundTrip) {
    const auto dir = scratch_dir("alpha_cache");
    const AlphaEstimate a = alpha_cached(3, 2000, 500, 7, 1, dir);
    const AlphaEstimate b = alpha_cached(3, 2000, 500, 7, 1, dir);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.estimate, alpha_mc(3, 2000, 500, 7).estimate);
    std::filesystem::remove_all(dir);
}
