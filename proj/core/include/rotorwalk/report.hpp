#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace rotorwalk {

/// One escape experiment in CSV form. radius_used is 0 in exact mode.
struct EscapeRow {
    std::uint64_t n = 0;
    std::uint64_t escaped = 0;
    std::uint64_t returned = 0;
    std::uint64_t steps_total = 0;
    std::int64_t radius_used = 0;
    friend bool operator==(const EscapeRow&, const EscapeRow&) = default;
};

struct RateRow {
    int dim = 0;
    std::uint64_t n = 0;
    std::uint64_t escaped = 0;
    double fraction = 0;      // I/n
    double log_fraction = 0;  // I ln n / n
    /// alpha_d estimate for d >= 3 (Schramm's upper bound on I/n).
    std::optional<double> schramm;
    /// pi/2 for d = 2 (upper bound on limsup I ln n / n).
    std::optional<double> pi_half;
};

std::vector<RateRow> escape_rate_report(int dim, const std::vector<EscapeRow>& rows,
                                        std::optional<double> alpha_hat = std::nullopt);

}  // namespace rotorwalk
