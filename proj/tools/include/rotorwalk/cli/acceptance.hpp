#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rotorwalk::cli {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriterionCount = 11;

/// Runs the selected criteria (all when `only` is empty), printing one
/// "[PASS]"/"[FAIL]" line per criterion to `log` as it completes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only, unsigned threads, std::ostream& log);

/// FNV-1a 64-bit, used to pin byte-exact artifacts.
std::uint64_t fnv1a64(std::string_view bytes);

/// The escape CSV and render of (d=2, up, n=100, seed 0), as produced by
/// the escape and render commands.
std::string golden_escape_csv();
std::string golden_render_ppm();

}  // namespace rotorwalk::cli
