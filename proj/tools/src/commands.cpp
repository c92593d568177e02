#include "rotorwalk/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rotorwalk/cli/acceptance.hpp"
#include "rotorwalk/csv.hpp"
#include "rotorwalk/errors.hpp"
#include "rotorwalk/experiment.hpp"
#include "rotorwalk/green.hpp"
#include "rotorwalk/odometer.hpp"
#include "rotorwalk/render.hpp"
#include "rotorwalk/report.hpp"
#include "rotorwalk/snapshot.hpp"

namespace rotorwalk::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised for a stabilized run that hit its radius cap.
struct NotStabilized : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
T parse_number(const std::string& text) {
    std::istringstream in(text);
    T v{};
    if (!(in >> v) || !in.eof()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        out.push_back(parse_number<T>(item));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

RadiusSchedule parse_schedule(const std::string& text) {
    const auto v = parse_list<double>(text);
    if (v.size() != 3) {
        throw std::invalid_argument("schedule must be r0,growth,cap");
    }
    RadiusSchedule s;
    s.r0 = static_cast<std::int64_t>(v[0]);
    s.growth = v[1];
    s.cap = static_cast<std::int64_t>(v[2]);
    if (s.r0 < 1 || s.growth <= 1.0 || s.cap < s.r0) {
        throw std::invalid_argument("schedule needs r0 >= 1, growth > 1, cap >= r0");
    }
    return s;
}

Point parse_point(int dim, const std::string& text) {
    const auto v = parse_list<std::int64_t>(text);
    if (static_cast<int>(v.size()) != dim) {
        throw std::invalid_argument("point '" + text + "' needs " + std::to_string(dim) + " coordinates");
    }
    Point p(dim);
    for (int i = 0; i < dim; ++i) {
        p[i] = v[static_cast<std::size_t>(i)];
    }
    return p;
}

std::ofstream open_output(const std::filesystem::path& file) {
    if (file.has_parent_path()) {
        std::filesystem::create_directories(file.parent_path());
    }
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + file.string() + " for writing");
    }
    return out;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json row_json(const EscapeRow& r) {
    return Json{{"n", r.n},
                {"escaped", r.escaped},
                {"returned", r.returned},
                {"steps_total", r.steps_total},
                {"radius_used", r.radius_used}};
}

// Maps exceptions to exit codes and JSON error records.
template <class F>
int guarded(const char* command, std::ostream& err, F&& body) {
    auto report = [&](const char* kind, const std::string& message, int code) {
        write_json(err, Json{{"error", kind}, {"command", command}, {"message", message}, {"exit_code", code}});
        return code;
    };
    try {
        return body();
    } catch (const LemmaViolation& e) {
        return report("lemma_violation", e.what(), kLemmaFailure);
    } catch (const NotStabilized& e) {
        return report("not_stabilized", e.what(), kNotStabilized);
    } catch (const std::invalid_argument& e) {
        return report("validation", e.what(), kValidation);
    } catch (const std::out_of_range& e) {
        return report("validation", e.what(), kValidation);
    } catch (const std::exception& e) {
        return report("internal", e.what(), kInternal);
    }
}

ExperimentDescriptor descriptor(const CommonOptions& c, std::uint64_t n, ExperimentMode mode) {
    ExperimentDescriptor d;
    d.dim = c.dim;
    d.mechanism = c.mechanism;
    d.rule = c.rule;
    d.n = n;
    d.mode = mode;
    d.seed = c.seed;
    return d;
}

void emit_rows(const CommonOptions& c, const std::vector<EscapeRow>& rows, const Json& summary, std::ostream& out,
               const char* stem) {
    if (c.out_dir) {
        auto csv = open_output(*c.out_dir / (std::string(stem) + ".csv"));
        write_escape_csv(csv, rows);
        auto js = open_output(*c.out_dir / (std::string(stem) + ".json"));
        write_json(js, summary);
    }
    if (c.format == Format::Csv) {
        write_escape_csv(out, rows);
    } else {
        write_json(out, summary);
    }
}

}  // namespace

int cmd_escape(const EscapeOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("escape", err, [&] {
        ExperimentDescriptor d = descriptor(opt.common, opt.n, ExperimentMode::ExactUp);
        d.step_limit = opt.step_limit;
        std::optional<RotorState> state;
        const ExperimentResult r = run_experiment(d, &state);
        Json j{{"command", "escape"}, {"dim", d.dim}, {"rule", d.rule}, {"mechanism", state->mechanism().to_string()}};
        j.update(row_json(r.row));
        j["step_limited"] = r.step_limited;
        emit_rows(opt.common, {r.row}, j, out, "escape");
        auto snap = opt.snapshot;
        if (!snap && opt.common.out_dir) {
            snap = *opt.common.out_dir / "escape.rtw";
        }
        if (snap) {
            auto f = open_output(*snap);
            write_snapshot(f, *state);
        }
        return r.step_limited > 0 ? kInternal : kOk;
    });
}

int cmd_finite_ball(const FiniteBallOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("finite-ball", err, [&] {
        ExperimentDescriptor d = descriptor(opt.common, opt.n,
                                            opt.schedule ? ExperimentMode::Stabilized : ExperimentMode::FiniteBall);
        d.radius = opt.radius;
        d.patience = opt.patience;
        d.step_limit = opt.step_limit;
        if (opt.schedule) {
            d.schedule = parse_schedule(*opt.schedule);
        }
        const ExperimentResult r = run_experiment(d);
        Json j{{"command", "finite-ball"}, {"dim", d.dim}, {"rule", d.rule}, {"mode", to_string(d.mode)}};
        j.update(row_json(r.row));
        if (opt.schedule) {
            j["stabilized"] = r.stabilized;
            Json trace = Json::array();
            for (const auto& s : r.trace) {
                trace.push_back({{"radius", s.radius}, {"exited", s.exited}, {"steps", s.steps}});
            }
            j["trace"] = trace;
        }
        emit_rows(opt.common, {r.row}, j, out, "finite_ball");
        if (!r.stabilized) {
            throw NotStabilized("I_r did not stabilize by radius " + std::to_string(r.row.radius_used) +
                                "; last value " + std::to_string(r.row.escaped) + " is an upper bound");
        }
        return kOk;
    });
}

int cmd_odometer(const OdometerOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("odometer", err, [&] {
        const CommonOptions& c = opt.common;
        const Mechanism mech = Mechanism::parse(c.dim, c.mechanism);
        const DefaultRule rule = DefaultRule::parse(c.dim, c.rule, c.seed);
        const Ball ball(c.dim, opt.radius.value_or(Ball::default_radius(c.dim, opt.n)));
        const OdometerRun run = compute_odometer(mech, rule, opt.n, ball);
        Json j{{"command", "odometer"},
               {"dim", c.dim},
               {"rule", rule.spec()},
               {"n", opt.n},
               {"radius", ball.radius()},
               {"u_origin", run.odometer.at_origin()},
               {"support", run.odometer.support().size()},
               {"columns", count_columns(run.odometer)},
               {"steps_total", run.steps_total}};
        if (opt.check_flux) {
            check_flux_conservation(run);
            const FluxIdentityReport f =
                mech.is_cyclic() ? check_flux_identity(run) : flux_remainder(run.odometer, run.flux);
            j["max_abs_remainder"] = f.max_abs_remainder;
            j["remainder_bound"] = mech.is_cyclic() ? Json(f.bound) : Json(nullptr);
            j["edges_checked"] = f.edges_checked;
        }
        if (opt.check_inn) {
            const InnCheck inn = check_inn(mech, rule, opt.n, ball);
            j["inn"] = {{"N", inn.odometer_origin}, {"exited", inn.exited}, {"holds", inn.holds}};
        }
        if (c.out_dir) {
            auto csv = open_output(*c.out_dir / "odometer.csv");
            write_odometer_csv(csv, run.odometer);
            auto flux = open_output(*c.out_dir / "flux.csv");
            write_flux_csv(flux, run.flux);
            auto bin = open_output(*c.out_dir / "odometer.rto");
            write_odometer(bin, run.odometer);
            auto js = open_output(*c.out_dir / "odometer.json");
            write_json(js, j);
        }
        if (c.format == Format::Csv) {
            write_odometer_csv(out, run.odometer);
        } else {
            write_json(out, j);
        }
        return kOk;
    });
}

int cmd_green(const GreenOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("green", err, [&] {
        const CommonOptions& c = opt.common;
        validate_dimension(c.dim);
        if (opt.alpha_horizon) {
            const AlphaEstimate a = alpha_cached(c.dim, opt.samples, *opt.alpha_horizon, c.seed, opt.threads);
            write_json(out, Json{{"command", "green"},
                                 {"alpha", {{"dim", a.dim},
                                            {"samples", a.samples},
                                            {"horizon", a.horizon},
                                            {"estimate", a.estimate},
                                            {"stderr", a.stderr_}}}});
            return kOk;
        }
        const GreenTable g = green_exact_cached(c.dim, opt.radius, opt.tol);
        Json j{{"command", "green"},
               {"dim", c.dim},
               {"radius", g.radius()},
               {"G_origin", g.at_origin()},
               {"residual", g.residual()},
               {"sweeps", g.sweeps()}};
        if (c.dim == 2) {
            j["G_origin_minus_log"] = g.at_origin() - green_origin_asymptotic(g.radius());
        }
        if (opt.fit_ad) {
            const AdFit f = fit_a_d(g);
            j["a_d"] = {{"estimate", f.a_d}, {"rms_relative", f.rms_relative}, {"points", f.points},
                        {"inner", f.inner}, {"outer", f.outer}};
        }
        if (opt.mc_point) {
            const Point x = parse_point(c.dim, *opt.mc_point);
            const MonteCarloEstimate mc = green_mc(c.dim, opt.radius, x, opt.samples, c.seed, opt.threads);
            const double exact = g(x);
            j["mc"] = {{"x", to_string(x)},
                       {"estimate", mc.mean},
                       {"stderr", mc.stderr_},
                       {"exact", exact},
                       {"z", mc.stderr_ > 0 ? (mc.mean - exact) / mc.stderr_ : 0.0}};
        }
        if (c.out_dir) {
            auto csv = open_output(*c.out_dir / "green.csv");
            write_green_csv(csv, g);
            auto js = open_output(*c.out_dir / "green.json");
            write_json(js, j);
        }
        if (c.format == Format::Csv) {
            write_green_csv(out, g);
        } else {
            write_json(out, j);
        }
        return kOk;
    });
}

int cmd_render(const RenderOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("render", err, [&] {
        const CommonOptions& c = opt.common;
        std::optional<RotorState> state;
        if (opt.snapshot) {
            state.emplace(load_snapshot(*opt.snapshot));
        } else {
            ExperimentDescriptor d = descriptor(c, opt.n, ExperimentMode::ExactUp);
            run_experiment(d, &state);
        }
        RenderSpec spec;
        spec.scale = opt.scale;
        spec.slice = opt.slice;
        if (opt.box) {
            const auto v = parse_list<std::int64_t>(*opt.box);
            if (v.size() != 4) {
                throw std::invalid_argument("box must be xmin,xmax,ymin,ymax");
            }
            spec.box = PlaneBox{v[0], v[1], v[2], v[3]};
        }
        const std::string img = render_rotors(*state, spec);
        auto file = opt.image;
        if (!file && c.out_dir) {
            file = *c.out_dir / "render.ppm";
        }
        if (!file) {
            throw std::invalid_argument("render needs --image or --out");
        }
        auto f = open_output(*file);
        f.write(img.data(), static_cast<std::streamsize>(img.size()));
        write_json(out, Json{{"command", "render"},
                             {"image", file->string()},
                             {"bytes", img.size()},
                             {"modified_sites", state->materialized_count()},
                             {"fnv1a64", fnv1a64(img)}});
        return kOk;
    });
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("sweep", err, [&] {
        SweepSpec spec;
        spec.base = descriptor(opt.common, 1, parse_mode(opt.mode));
        if (opt.schedule) {
            spec.base.schedule = parse_schedule(*opt.schedule);
        }
        spec.ns = opt.ns;
        spec.radii = opt.radii;
        spec.seeds = opt.seeds;
        spec.rules = opt.rules;
        spec.width = std::max(1U, opt.parallel);
        const auto cells = run_sweep(spec);

        std::ostringstream csv;
        csv << "# schema=sweep/1\n"
            << "cell,rule,n,radius,seed,mode,escaped,returned,steps_total,radius_used,stabilized\n";
        Json rows = Json::array();
        std::vector<EscapeRow> escape_rows;
        for (const auto& cell : cells) {
            const auto& d = cell.descriptor;
            const auto& r = cell.result.row;
            csv << cell.index << ',' << d.rule << ',' << d.n << ',' << (d.radius ? std::to_string(*d.radius) : "")
                << ',' << d.seed << ',' << to_string(d.mode) << ',' << r.escaped << ',' << r.returned << ','
                << r.steps_total << ',' << r.radius_used << ',' << (cell.result.stabilized ? 1 : 0) << '\n';
            Json row{{"cell", cell.index}, {"rule", d.rule}, {"seed", d.seed}, {"mode", to_string(d.mode)}};
            row.update(row_json(r));
            row["stabilized"] = cell.result.stabilized;
            rows.push_back(row);
            escape_rows.push_back(r);
        }
        Json j{{"command", "sweep"}, {"cells", rows}};
        if (opt.report) {
            std::optional<double> alpha;
            Json rate = Json::array();
            for (const auto& row : escape_rate_report(opt.common.dim, escape_rows, alpha)) {
                rate.push_back({{"n", row.n}, {"escaped", row.escaped}, {"fraction", row.fraction},
                                {"log_fraction", row.log_fraction}});
            }
            j["report"] = rate;
        }
        if (opt.common.out_dir) {
            auto f = open_output(*opt.common.out_dir / "sweep.csv");
            f << csv.str();
            if (opt.report) {
                auto rf = open_output(*opt.common.out_dir / "rate.csv");
                write_rate_csv(rf, escape_rate_report(opt.common.dim, escape_rows));
            }
        }
        if (opt.common.format == Format::Csv) {
            out << csv.str();
        } else {
            write_json(out, j);
        }
        const bool all_stable =
            std::all_of(cells.begin(), cells.end(), [](const SweepCell& cell) { return cell.result.stabilized; });
        return all_stable ? kOk : kNotStabilized;
    });
}

int cmd_accept(const AcceptOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("accept", err, [&] {
        const unsigned threads = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
        const auto results = run_acceptance(opt.only, threads, out);
        const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
        out << passed << "/" << results.size() << " criteria passed\n";
        return passed == static_cast<std::ptrdiff_t>(results.size()) ? kOk : kLemmaFailure;
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotor walks on Z^d: escape counts, odometers, Green's functions"};
    app.name("rotorwalk");
    app.require_subcommand(1);

    CommonOptions common;
    std::string format = "json";
    std::optional<std::string> out_dir;
    auto add_common = [&](CLI::App* sub, bool with_rule) {
        sub->add_option("--dim,-d", common.dim, "Lattice dimension (2..8)")->capture_default_str();
        if (with_rule) {
            sub->add_option("--mech", common.mechanism, "Exit sequence, e.g. N,E,S,W or +e1,-e1,...")
                ->capture_default_str();
            sub->add_option("--rule", common.rule, "Initial rotors: up | random[:SEED] | aligned:DIR | split:A,B")
                ->capture_default_str();
        }
        sub->add_option("--seed", common.seed, "Seed for random rules and Monte Carlo")->capture_default_str();
        sub->add_option("--out", out_dir, "Directory for CSV/JSON/binary artifacts");
        sub->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    };

    EscapeOptions esc;
    auto* escape = app.add_subcommand("escape", "Exact I(up, n) with the column escape oracle");
    add_common(escape, true);
    escape->add_option("--n", esc.n, "Particles")->required();
    escape->add_option("--step-limit", esc.step_limit, "Per-particle step budget");
    std::optional<std::string> esc_snapshot;
    escape->add_option("--snapshot", esc_snapshot, "Write the final rotors to this file");

    FiniteBallOptions fb;
    std::optional<std::int64_t> fb_r;
    std::optional<std::string> fb_schedule;
    auto* finite = app.add_subcommand("finite-ball", "I_r(rho, n) on one ball or a radius schedule");
    add_common(finite, true);
    finite->add_option("--n", fb.n, "Particles")->required();
    finite->add_option("--r", fb_r, "Ball radius (default ceil(n^(1/(d-1))))");
    finite->add_option("--schedule", fb_schedule, "r0,growth,cap: grow r until I_r stabilizes");
    finite->add_option("--patience", fb.patience, "Equal consecutive radii required")->capture_default_str();
    finite->add_option("--step-limit", fb.step_limit, "Per-particle step budget");

    OdometerOptions od;
    std::optional<std::int64_t> od_r;
    auto* odo = app.add_subcommand("odometer", "Exit counts of n walks stopped on the ball boundary");
    add_common(odo, true);
    odo->add_option("--n", od.n, "Particles")->required();
    odo->add_option("--r", od_r, "Ball radius (default ceil(n^(1/(d-1))))");
    odo->add_flag("--check-inn", od.check_inn, "Verify I_r(rho, u(o)) = n");
    odo->add_flag("--check-flux", od.check_flux, "Verify flux conservation and |grad u + 2d kappa| <= 4d-2");

    GreenOptions gr;
    std::optional<std::string> gr_mc;
    std::optional<std::uint64_t> gr_alpha;
    auto* green = app.add_subcommand("green", "Green's function of the ball, Monte Carlo checks, alpha_d");
    add_common(green, false);
    green->add_option("--r", gr.radius, "Ball radius")->capture_default_str();
    green->add_option("--tol", gr.tol, "Max residual of the solver")->capture_default_str();
    green->add_option("--mc", gr_mc, "Compare with Monte Carlo at point x1,x2,...");
    green->add_option("--samples", gr.samples, "Monte Carlo samples")->capture_default_str();
    green->add_flag("--fit-ad", gr.fit_ad, "Fit a_d (d >= 3)");
    green->add_option("--alpha-horizon", gr_alpha, "Estimate alpha_d with this horizon");
    green->add_option("--parallel", gr.threads, "Monte Carlo threads")->capture_default_str();

    RenderOptions rd;
    std::optional<std::string> rd_snapshot;
    std::optional<std::string> rd_image;
    std::optional<std::string> rd_box;
    auto* render = app.add_subcommand("render", "PPM image of the rotors (snapshot or fresh escape run)");
    add_common(render, true);
    render->add_option("--snapshot", rd_snapshot, "Rotor snapshot to draw");
    render->add_option("--n", rd.n, "Particles for a fresh escape run")->capture_default_str();
    render->add_option("--image", rd_image, "Output PPM (default OUT/render.ppm)");
    render->add_option("--box", rd_box, "xmin,xmax,ymin,ymax (default: centred, fits all rotors)");
    render->add_option("--scale", rd.scale, "Pixels per site")->capture_default_str();
    render->add_option("--slice", rd.slice, "Fixed x3..xd for d >= 3")->delimiter(',');

    SweepOptions sw;
    std::optional<std::string> sw_schedule;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep over n, r, seeds and rules");
    add_common(sweep, true);
    sweep->add_option("--mode", sw.mode, "exact-up | finite-ball | stabilized")->capture_default_str();
    sweep->add_option("--n", sw.ns, "Particle counts")->delimiter(',')->required();
    sweep->add_option("--r", sw.radii, "Radii")->delimiter(',');
    sweep->add_option("--seeds", sw.seeds, "Seed axis")->delimiter(',');
    sweep->add_option("--rules", sw.rules, "Rule axis (;-separated)")->delimiter(';');
    sweep->add_option("--schedule", sw_schedule, "r0,growth,cap for stabilized mode");
    sweep->add_option("--parallel", sw.parallel, "Concurrent cells")->capture_default_str();
    sweep->add_flag("--report", sw.report, "Add the escape-rate table");

    AcceptOptions ac;
    auto* accept = app.add_subcommand("accept", "Run the acceptance criteria");
    accept->add_option("--only", ac.only, "Criterion ids")->delimiter(',');
    accept->add_option("--parallel", ac.threads, "Threads for Monte Carlo (0: all cores)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        write_json(err, Json{{"error", "validation"}, {"message", e.what()}, {"exit_code", static_cast<int>(kValidation)}});
        return kValidation;
    }
    common.format = format == "csv" ? Format::Csv : Format::Json;
    if (out_dir) {
        common.out_dir = std::filesystem::path(*out_dir);
    }

    if (escape->parsed()) {
        esc.common = common;
        if (esc_snapshot) {
            esc.snapshot = std::filesystem::path(*esc_snapshot);
        }
        return cmd_escape(esc, out, err);
    }
    if (finite->parsed()) {
        fb.common = common;
        fb.radius = fb_r;
        fb.schedule = fb_schedule;
        return cmd_finite_ball(fb, out, err);
    }
    if (odo->parsed()) {
        od.common = common;
        od.radius = od_r;
        return cmd_odometer(od, out, err);
    }
    if (green->parsed()) {
        gr.common = common;
        gr.mc_point = gr_mc;
        gr.alpha_horizon = gr_alpha;
        return cmd_green(gr, out, err);
    }
    if (render->parsed()) {
        rd.common = common;
        if (rd_snapshot) {
            rd.snapshot = std::filesystem::path(*rd_snapshot);
        }
        if (rd_image) {
            rd.image = std::filesystem::path(*rd_image);
        }
        rd.box = rd_box;
        return cmd_render(rd, out, err);
    }
    if (sweep->parsed()) {
        sw.common = common;
        sw.schedule = sw_schedule;
        return cmd_sweep(sw, out, err);
    }
    if (accept->parsed()) {
        return cmd_accept(ac, out, err);
    }
    return kValidation;
}

}  // namespace rotorwalk::cli
