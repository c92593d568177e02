#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rotorwalk/point.hpp"

namespace rotorwalk {

/// G_r(x, o): expected visits to o of simple random walk from x killed on
/// leaving B_r. Stored densely over the box [-r, r]^d, which contains the
/// ball and its boundary; entries outside the ball are zero.
///
/// Memory is (2r+1)^d doubles: about 0.5 MB at d=2, r=128 and 2.2 MB at
/// d=3, r=32.
class GreenTable {
public:
    GreenTable(int dim, std::int64_t radius);

    int dim() const { return dim_; }
    std::int64_t radius() const { return radius_; }
    /// Max |Delta G + delta_o| over the ball at the last check.
    double residual() const { return residual_; }
    double tolerance() const { return tolerance_; }
    std::uint64_t sweeps() const { return sweeps_; }

    double operator()(const Point& x) const;
    double at_origin() const { return values_[origin_index_]; }

    /// Exact Delta G(x) + [x = o] from the stored values.
    double defect(const Point& x) const;

    /// Ball points with their values, lexicographic order.
    std::vector<std::pair<Point, double>> entries() const;

    void write_binary(std::ostream& out) const;
    static GreenTable read_binary(std::istream& in);

private:
    friend GreenTable green_exact(int, std::int64_t, double, std::uint64_t);

    bool in_box(const Point& x) const;
    std::size_t index(const Point& x) const;

    int dim_;
    std::int64_t radius_;
    std::int64_t side_;
    std::vector<std::size_t> stride_;
    std::vector<double> values_;
    std::size_t origin_index_ = 0;
    double residual_ = 0;
    double tolerance_ = 0;
    std::uint64_t sweeps_ = 0;
};

inline constexpr double kDefaultGreenTolerance = 1e-10;
inline constexpr std::uint64_t kDefaultGreenSweepCap = 200000;

/// Solves Delta G = -delta_o on B_r with zero boundary data by successive
/// over-relaxation until the max residual is at most tol. Throws
/// ConvergenceError when the sweep cap is reached first.
GreenTable green_exact(int dim, std::int64_t radius, double tol = kDefaultGreenTolerance,
                       std::uint64_t sweep_cap = kDefaultGreenSweepCap);

/// green_exact through a binary cache in `dir`, keyed by (d, r, tol). With
/// no dir, uses $ROTORWALK_CACHE when set and computes directly otherwise.
GreenTable green_exact_cached(int dim, std::int64_t radius, double tol = kDefaultGreenTolerance,
                              std::optional<std::filesystem::path> dir = std::nullopt);

struct MonteCarloEstimate {
    double mean = 0;
    double stderr_ = 0;
    std::uint64_t samples = 0;
};

/// Mean number of visits to o by SRW from x before leaving B_r. Sample i
/// uses its own stream derive_seed(seed, i), so the result does not depend
/// on `threads`.
MonteCarloEstimate green_mc(int dim, std::int64_t radius, const Point& x, std::uint64_t samples,
                            std::uint64_t seed, unsigned threads = 1);

/// Leading-order G_r(x, o): (2/pi)(log r - log|x|) in d=2 and
/// a_d(|x|^{2-d} - r^{2-d}) otherwise (a_d unused in d=2). x = o is rejected.
double green_asymptotic(int dim, std::int64_t radius, const Point& x, double a_d);

/// (2/pi) log r, the d=2 origin asymptotic.
double green_origin_asymptotic(std::int64_t radius);

struct AdFit {
    double a_d = 0;
    /// Root-mean-square relative misfit over the window.
    double rms_relative = 0;
    std::uint64_t points = 0;
    double inner = 0;
    double outer = 0;
};

/// One-parameter least-squares fit of G_r(x, o) = a_d(|x|^{2-d} - r^{2-d})
/// over inner <= |x| <= outer. Defaults to the window [2, r/2]. d = 2 and
/// an empty window throw std::invalid_argument.
AdFit fit_a_d(const GreenTable& green, std::optional<double> inner = std::nullopt,
              std::optional<double> outer = std::nullopt);
AdFit fit_a_d(int dim, std::int64_t radius);

struct AlphaEstimate {
    int dim = 0;
    std::uint64_t samples = 0;
    std::uint64_t horizon = 0;
    /// Fraction of paths with no return to o within `horizon` steps.
    double estimate = 0;
    double stderr_ = 0;
};

/// Monte Carlo no-return fraction of SRW started at o. The estimate is
/// biased upward by the paths that return after the horizon.
AlphaEstimate alpha_mc(int dim, std::uint64_t samples, std::uint64_t horizon, std::uint64_t seed,
                       unsigned threads = 1);

/// alpha_mc at several horizons from the same paths, so the estimates are
/// nonincreasing in the horizon by construction. Horizons must be ascending.
std::vector<AlphaEstimate> alpha_mc_nested(int dim, std::uint64_t samples, const std::vector<std::uint64_t>& horizons,
                                           std::uint64_t seed, unsigned threads = 1);

/// alpha_mc through a text cache file in `dir` (or $ROTORWALK_CACHE).
AlphaEstimate alpha_cached(int dim, std::uint64_t samples, std::uint64_t horizon, std::uint64_t seed,
                           unsigned threads = 1, std::optional<std::filesystem::path> dir = std::nullopt);

/// Resolves the cache directory: `dir` if given, else $ROTORWALK_CACHE, else none.
std::optional<std::filesystem::path> cache_directory(std::optional<std::filesystem::path> dir = std::nullopt);

}  // namespace rotorwalk
