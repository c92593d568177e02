#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rotorwalk::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kValidation = 2,
    kLemmaFailure = 3,
    kNotStabilized = 4,
};

enum class Format { Csv, Json };

struct CommonOptions {
    int dim = 2;
    std::string mechanism = "default";
    std::string rule = "up";
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> out_dir;
    Format format = Format::Json;
};

struct EscapeOptions {
    CommonOptions common;
    std::uint64_t n = 1;
    std::uint64_t step_limit = 10'000'000'000ULL;
    /// Writes the final rotors here (defaults to OUT/escape.rtw with --out).
    std::optional<std::filesystem::path> snapshot;
};

struct FiniteBallOptions {
    CommonOptions common;
    std::uint64_t n = 1;
    std::optional<std::int64_t> radius;
    /// "r0,growth,cap": stabilized mode.
    std::optional<std::string> schedule;
    int patience = 2;
    std::uint64_t step_limit = 10'000'000'000ULL;
};

struct OdometerOptions {
    CommonOptions common;
    std::uint64_t n = 1;
    std::optional<std::int64_t> radius;
    bool check_inn = false;
    bool check_flux = false;
};

struct GreenOptions {
    CommonOptions common;
    std::int64_t radius = 16;
    double tol = 1e-10;
    /// Monte Carlo comparison at this point ("x1,x2,...").
    std::optional<std::string> mc_point;
    std::uint64_t samples = 100000;
    bool fit_ad = false;
    /// Estimate alpha_d with this horizon instead of solving for G.
    std::optional<std::uint64_t> alpha_horizon;
    unsigned threads = 1;
};

struct RenderOptions {
    CommonOptions common;
    std::optional<std::filesystem::path> snapshot;
    std::uint64_t n = 100;
    std::optional<std::filesystem::path> image;
    /// "xmin,xmax,ymin,ymax"
    std::optional<std::string> box;
    int scale = 1;
    std::vector<std::int64_t> slice;
};

struct SweepOptions {
    CommonOptions common;
    std::string mode = "exact-up";
    std::vector<std::uint64_t> ns;
    std::vector<std::int64_t> radii;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> rules;
    std::optional<std::string> schedule;
    unsigned parallel = 1;
    bool report = false;
};

struct AcceptOptions {
    std::vector<int> only;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Each command writes its primary result to `out` (JSON or CSV), files
/// under --out, and on failure one JSON error record to `err`.
int cmd_escape(const EscapeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_finite_ball(const FiniteBallOptions& opt, std::ostream& out, std::ostream& err);
int cmd_odometer(const OdometerOptions& opt, std::ostream& out, std::ostream& err);
int cmd_green(const GreenOptions& opt, std::ostream& out, std::ostream& err);
int cmd_render(const RenderOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);
int cmd_accept(const AcceptOptions& opt, std::ostream& out, std::ostream& err);

/// Parses argv (without the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotorwalk::cli
