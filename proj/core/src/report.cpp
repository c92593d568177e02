#include "rotorwalk/report.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotorwalk {

std::vector<RateRow> escape_rate_report(int dim, const std::vector<EscapeRow>& rows, std::optional<double> alpha_hat) {
    std::vector<RateRow> out;
    out.reserve(rows.size());
    for (const EscapeRow& row : rows) {
        if (row.n == 0) {
            throw std::invalid_argument("escape report rows need n >= 1");
        }
        RateRow r;
        r.dim = dim;
        r.n = row.n;
        r.escaped = row.escaped;
        const double n = static_cast<double>(row.n);
        r.fraction = static_cast<double>(row.escaped) / n;
        r.log_fraction = r.fraction * std::log(n);
        if (dim >= 3) {
            r.schramm = alpha_hat;
        } else {
            r.pi_half = std::numbers::pi / 2;
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace rotorwalk
