#pragma once

#include <iosfwd>
#include <vector>

#include "rotorwalk/green.hpp"
#include "rotorwalk/odometer.hpp"
#include "rotorwalk/report.hpp"

namespace rotorwalk {

/// Every CSV starts with a "# schema=NAME/VERSION" line, then a header.
/// Rows are sorted and numbers formatted locale-independently, so output is
/// byte-stable.
inline constexpr const char* kEscapeSchema = "escape/1";
inline constexpr const char* kOdometerSchema = "odometer/1";
inline constexpr const char* kFluxSchema = "flux/1";
inline constexpr const char* kGreenSchema = "green/1";
inline constexpr const char* kRateSchema = "rate/1";

void write_escape_csv(std::ostream& out, const std::vector<EscapeRow>& rows);
void write_odometer_csv(std::ostream& out, const Odometer& u);
void write_flux_csv(std::ostream& out, const EdgeFlux& kappa);
void write_green_csv(std::ostream& out, const GreenTable& g);
void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows);

/// Round-trip decimal for a double ("%.17g").
std::string format_double(double v);

}  // namespace rotorwalk
