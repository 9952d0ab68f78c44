// Command-line front end: analyze a system, simulate trajectories, scan the
// discriminant over a control range.
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bilin2d/report.hpp"
#include "bilin2d/sim.hpp"

namespace {

constexpr int kExitInput = 64;    // unusable input: files, flags, schedules
constexpr int kExitRuntime = 70;  // computation could not be carried out

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot read " + path + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_double(const std::string& s, const std::string& what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    double x = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0') || errno == ERANGE || !std::isfinite(x))
        throw CliError(what + ": expected a finite number, got \"" + s + "\"");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bilin2d::ControlSchedule parse_schedule(const std::string& text) {
    bilin2d::ControlSchedule sched;
    for (const std::string& part : split(text, ',')) {
        auto fields = split(part, ':');
        if (fields.size() != 2)
            throw CliError("--u-schedule: expected \"duration:u\" segments, got \"" + part +
                           "\"");
        double dur = parse_double(fields[0], "--u-schedule duration");
        double u = parse_double(fields[1], "--u-schedule control");
        if (!(dur > 0.0)) throw CliError("--u-schedule: durations must be positive");
        sched.segments.push_back({dur, u});
    }
    sched.validate();
    return sched;
}

// Fit the schedule to an explicit horizon: truncate segments past it, or hold
// the final control value to fill the remainder.
bilin2d::ControlSchedule fit_schedule(bilin2d::ControlSchedule sched, double t) {
    if (!(t > 0.0)) throw CliError("--t must be positive");
    double total = sched.total_duration();
    if (t > total) {
        sched.segments.push_back({t - total, sched.segments.back().u});
        return sched;
    }
    bilin2d::ControlSchedule cut;
    double acc = 0.0;
    for (const auto& seg : sched.segments) {
        if (acc + seg.duration >= t) {
            double rest = t - acc;
            if (rest > 0.0) cut.segments.push_back({rest, seg.u});
            break;
        }
        cut.segments.push_back(seg);
        acc += seg.duration;
    }
    cut.validate();
    return cut;
}

std::FILE* open_out(const std::string& path, std::FILE** to_close) {
    if (path.empty() || path == "-") return stdout;
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw CliError("cannot write " + path + ": " + std::strerror(errno));
    *to_close = f;
    return f;
}

double env_default_eps() {
    const char* env = std::getenv("BILIN2D_TOL");
    if (!env || !*env) return 1e-9;
    double x = parse_double(env, "BILIN2D_TOL");
    if (!(x > 0.0)) throw CliError("BILIN2D_TOL: tolerance must be positive");
    return x;
}

int run_analyze(const std::string& path, bool as_json, const bilin2d::AnalysisOptions& opts) {
    bilin2d::SystemDescription sys = bilin2d::parse_system(read_file(path), path);
    bilin2d::AnalysisReport report = bilin2d::analyze(sys, opts);
    if (as_json)
        std::cout << bilin2d::report_to_json(report);
    else
        std::cout << bilin2d::report_to_text(report);
    return bilin2d::exit_code_for(report.verdict.status);
}

int run_simulate(const std::string& path, const std::string& schedule_text,
                 const std::optional<std::string>& x0_text, std::optional<double> theta0,
                 double dt, std::optional<double> horizon, const std::string& out_path) {
    bilin2d::SystemDescription sys = bilin2d::parse_system(read_file(path), path);
    bilin2d::ControlSchedule sched = parse_schedule(schedule_text);
    if (horizon) sched = fit_schedule(sched, *horizon);
    for (const auto& seg : sched.segments)
        if (!sys.control_set.contains(seg.u))
            throw CliError("--u-schedule: control " + std::to_string(seg.u) +
                           " lies outside the system's control set");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw CliError("--dt must be a positive number");

    std::FILE* to_close = nullptr;
    std::FILE* out = open_out(out_path, &to_close);
    bool truncated = false;
    if (x0_text) {
        auto fields = split(*x0_text, ',');
        if (fields.size() != 2) throw CliError("--x0: expected \"x1,x2\"");
        bilin2d::Vec2 x0{parse_double(fields[0], "--x0"), parse_double(fields[1], "--x0")};
        bilin2d::Trajectory traj = bilin2d::integrate_planar(sys.a, sys.b, sched, x0, dt);
        truncated = traj.truncated;
        std::fprintf(out, "t,x1,x2,u\n");
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            std::fprintf(out, "%.17g,%.17g,%.17g,%.17g\n", traj.times[i],
                         traj.states[i].x1, traj.states[i].x2, traj.controls[i]);
    } else {
        bilin2d::Trajectory traj =
            bilin2d::integrate_angular(sys.a, sys.b, sched, *theta0, dt);
        truncated = traj.truncated;
        std::fprintf(out, "t,theta,u\n");
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            std::fprintf(out, "%.17g,%.17g,%.17g\n", traj.times[i], traj.thetas[i],
                         traj.controls[i]);
    }
    if (to_close) std::fclose(to_close);
    if (truncated)
        std::cerr << "warning: trajectory left the representable range; "
                     "output truncated before the requested horizon\n";
    return 0;
}

int run_delta_scan(const std::string& path, const std::string& range_text, int n,
                   const std::string& out_path, double eps) {
    bilin2d::SystemDescription sys = bilin2d::parse_system(read_file(path), path);
    auto fields = split(range_text, ',');
    if (fields.size() != 2) throw CliError("--u-range: expected \"lo,hi\"");
    double lo = parse_double(fields[0], "--u-range");
    double hi = parse_double(fields[1], "--u-range");
    if (!(lo < hi)) throw CliError("--u-range: requires lo < hi");
    if (n < 2) throw CliError("--n must be at least 2");

    bilin2d::Tolerance tol{eps};
    bilin2d::DeltaQuadratic d = bilin2d::delta_quadratic(sys.a, sys.b);
    std::FILE* to_close = nullptr;
    std::FILE* out = open_out(out_path, &to_close);
    std::fprintf(out, "u,delta,re_lambda1,re_lambda2,im_lambda1,case_tag\n");
    for (int i = 0; i < n; ++i) {
        double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        double delta = d.eval(u);
        auto eig = bilin2d::eigenvalues_of_pencil(sys.a, sys.b, u);
        bilin2d::AngularCase c = bilin2d::classify_case(bilin2d::pqr(sys.a, sys.b, u), tol);
        std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", u, delta, eig[0].real(),
                     eig[1].real(), eig[0].imag(), bilin2d::to_string(c.tag));
    }
    if (to_close) std::fclose(to_close);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controllability analysis for planar bilinear systems x' = (A + u B) x"};
    app.require_subcommand(1);

    std::string file;
    bool as_json = false;
    bilin2d::AnalysisOptions opts;
    std::optional<double> eps_flag;

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze a system and print a report");
    analyze->add_option("file", file, "System description (JSON)")->required();
    analyze->add_flag("--json", as_json, "Emit the report as JSON instead of text");
    analyze->add_option("--eps", eps_flag, "Comparison tolerance (default 1e-9 or $BILIN2D_TOL)");
    analyze->add_option("--seed", opts.seed, "Seed for randomized certificate search");
    analyze->add_option("--grid-n", opts.grid_n, "Sample count for the spectrum range")
        ->check(CLI::Range(2, 100000000));
    analyze->add_option("--u-max", opts.u_max,
                        "Clip unbounded control sets to [-u_max, u_max] for range reporting");

    std::string schedule_text;
    std::optional<std::string> x0_text;
    std::optional<double> theta0;
    std::optional<double> horizon;
    double dt = 1e-3;
    std::string out_path;

    CLI::App* simulate = app.add_subcommand("simulate", "Integrate a trajectory, write CSV");
    simulate->add_option("file", file, "System description (JSON)")->required();
    simulate->add_option("--u-schedule", schedule_text,
                         "Piecewise-constant control, e.g. \"0.5:1,2:0\"")
        ->required();
    auto* opt_x0 = simulate->add_option("--x0", x0_text, "Planar initial state \"x1,x2\"");
    auto* opt_th = simulate->add_option("--theta0", theta0, "Angular initial state (radians)");
    opt_x0->excludes(opt_th);
    opt_th->excludes(opt_x0);
    simulate->add_option("--dt", dt, "Integration step (default 1e-3)");
    simulate->add_option("--t", horizon,
                         "Horizon: truncates the schedule or holds its last control");
    simulate->add_option("--out", out_path, "Output CSV path (default stdout)");

    std::string range_text;
    int scan_n = 101;
    CLI::App* scan = app.add_subcommand("delta-scan",
                                        "Tabulate the discriminant over a control range");
    scan->add_option("file", file, "System description (JSON)")->required();
    scan->add_option("--u-range", range_text, "Control range \"lo,hi\"")->required();
    scan->add_option("--n", scan_n, "Number of samples (default 101)");
    scan->add_option("--out", out_path, "Output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        opts.eps = env_default_eps();
        if (eps_flag) {
            if (!(*eps_flag > 0.0) || !std::isfinite(*eps_flag))
                throw CliError("--eps must be a positive number");
            opts.eps = *eps_flag;
        }
        if (*analyze) return run_analyze(file, as_json, opts);
        if (*simulate) {
            if (!x0_text && !theta0)
                throw CliError("simulate: provide exactly one of --x0 or --theta0");
            return run_simulate(file, schedule_text, x0_text, theta0, dt, horizon, out_path);
        }
        return run_delta_scan(file, range_text, scan_n, out_path, opts.eps);
    } catch (const bilin2d::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
