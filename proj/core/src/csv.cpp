#include "rotorwalk/csv.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace rotorwalk {
namespace {

void schema(std::ostream& out, const char* name) { out << "# schema=" << name << '\n'; }

void coord_header(std::ostream& out, int dim) {
    for (int i = 1; i <= dim; ++i) {
        out << 'x' << i << ',';
    }
}

void coords(std::ostream& out, const Point& p) {
    for (auto c : p.coords()) {
        out << c << ',';
    }
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_escape_csv(std::ostream& out, const std::vector<EscapeRow>& rows) {
    schema(out, kEscapeSchema);
    out << "n,escaped,returned,steps_total,radius_used\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.escaped << ',' << r.returned << ',' << r.steps_total << ',' << r.radius_used << '\n';
    }
}

void write_odometer_csv(std::ostream& out, const Odometer& u) {
    schema(out, kOdometerSchema);
    coord_header(out, u.dim());
    out << "count\n";
    for (const auto& [p, c] : u.support()) {
        coords(out, p);
        out << c << '\n';
    }
}

void write_flux_csv(std::ostream& out, const EdgeFlux& kappa) {
    schema(out, kFluxSchema);
    coord_header(out, kappa.dim());
    out << "axis,kappa\n";
    for (const auto& e : kappa.edges()) {
        coords(out, e.from);
        out << e.axis + 1 << ',' << e.net << '\n';
    }
}

void write_green_csv(std::ostream& out, const GreenTable& g) {
    schema(out, kGreenSchema);
    coord_header(out, g.dim());
    out << "value\n";
    for (const auto& [p, v] : g.entries()) {
        coords(out, p);
        out << format_double(v) << '\n';
    }
}

void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows) {
    schema(out, kRateSchema);
    out << "d,n,escaped,fraction,log_fraction,schramm,pi_half\n";
    for (const auto& r : rows) {
        out << r.dim << ',' << r.n << ',' << r.escaped << ',' << format_double(r.fraction) << ','
            << format_double(r.log_fraction) << ',' << optional_cell(r.schramm) << ',' << optional_cell(r.pi_half)
            << '\n';
    }
}

}  // namespace rotorwalk
