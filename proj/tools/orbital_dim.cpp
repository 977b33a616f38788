#include "orbital/config.hpp"
#include "orbital/dimension.hpp"
#include "orbital/error.hpp"
#include "orbital/group.hpp"
#include "orbital/orbital.hpp"
#include "orbital/parallel.hpp"
#include "orbital/render.hpp"
#include "orbital/report.hpp"
#include "orbital/scenario.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace orbital;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<unsigned> threads;
    std::optional<long> seed_truncation;
    bool quiet = false;
};

RunConfig load(const Options& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (o.seed_truncation) {
        if (*o.seed_truncation < 1) throw Error(ErrorKind::Config, "--seed-truncation must be >= 1");
        if (cfg.seed) {
            if (auto* t = std::get_if<Theorem2Seed>(&*cfg.seed)) t->count = *o.seed_truncation;
        }
    }
    return cfg;
}

fs::path out_dir(const Options& o, const RunConfig& cfg) {
    if (!o.out.empty()) return o.out;
    return cfg.out_dir.value_or(".");
}

void say(const Options& o, const std::string& line) {
    if (!o.quiet) fmt::print("{}\n", line);
}

int cmd_orbit(const Options& o) {
    const RunConfig cfg = load(o);
    if (!cfg.group) throw Error(ErrorKind::Config, "orbit needs a 'group' section");
    const Enumeration en = enumerate_elements(*cfg.group, cfg.budget);
    const PointCloud pts = orbit_points(en, cfg.base_point);
    const fs::path dir = out_dir(o, cfg);

    std::string summary;
    summary += "elements=" + std::to_string(en.records.size()) + "\n";
    summary += "orbit_points=" + std::to_string(pts.size()) + "\n";
    summary += std::string("truncated=") + (en.truncated ? "true" : "false") + "\n";
    summary += "frontier_min_distance=" + format_real(en.frontier_min_distance()) + "\n";
    if (cfg.count_radius) {
        const std::size_t n = orbit_counting(en, *cfg.count_radius);
        summary += "count_radius=" + format_real(*cfg.count_radius) + "\n";
        summary += "orbit_count=" + std::to_string(n) + "\n";
    }
    write_file_atomic(dir / "orbit.csv", points_csv(pts));
    write_file_atomic(dir / "records.csv", records_csv(*cfg.group, en));
    write_file_atomic(dir / "orbit.txt", summary);
    say(o, fmt::format("{} elements, {} orbit points -> {}", en.records.size(), pts.size(), dir.string()));
    return 0;
}

int cmd_dim(const Options& o) {
    const RunConfig cfg = load(o);
    if (!cfg.cloud && !cfg.group) throw Error(ErrorKind::Config, "dim needs a 'cloud' or 'group' section");
    const PointCloud cloud = resolve_cloud(cfg);
    const BoxCountReport r = dimension_estimate(cloud, cfg.ladder);
    const fs::path dir = out_dir(o, cfg);
    write_file_atomic(dir / "report.txt", to_key_value(r));
    write_file_atomic(dir / "counts.csv", counts_csv(r));
    say(o, fmt::format("ls_slope={} max_pair_slope={} points={}", format_real(r.ls_slope),
                       format_real(r.max_pair_slope), r.point_count));
    return 0;
}

int cmd_poincare(const Options& o) {
    const RunConfig cfg = load(o);
    if (!cfg.group) throw Error(ErrorKind::Config, "poincare needs a 'group' section");
    const PoincareEstimate e = poincare_exponent_estimate(*cfg.group, cfg.budget, cfg.window);
    const fs::path dir = out_dir(o, cfg);
    write_file_atomic(dir / "poincare.txt", to_key_value(e));
    say(o, fmt::format("growth_slope={} series_cliff={} window=[{}, {}]", format_real(e.growth_slope),
                       format_real(e.series_cliff), format_real(e.window.lo), format_real(e.window.hi)));
    return 0;
}

int cmd_scenario(const Options& o, const std::string& name, const std::vector<std::string>& sets, bool list) {
    if (list) {
        for (const std::string& n : scenario_names()) fmt::print("{}\n", n);
        return 0;
    }
    if (name.empty()) throw Error(ErrorKind::UnknownScenario, "no scenario name given");
    std::map<std::string, double> overrides;
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::Config, "--set expects key=value, got '" + s + "'");
        const std::string value = s.substr(eq + 1);
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (value.empty() || *end != '\0') throw Error(ErrorKind::Config, "--set value for '" + s.substr(0, eq) + "' is not a number");
        overrides[s.substr(0, eq)] = v;
    }
    if (o.seed_truncation && name == "theorem2_dense") overrides["n_max"] = static_cast<double>(*o.seed_truncation);
    const VerificationReport r = run_scenario(name, overrides);
    const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
    write_file_atomic(dir / (name + ".txt"), to_key_value(r));
    write_file_atomic(dir / (name + "_counts.csv"), counts_csv(r.orbital));
    say(o, fmt::format("{}: {} (measured {}, predicted {}, tolerance {})", name, r.status, format_real(r.measured),
                       format_real(r.predicted), format_real(r.tolerance)));
    if (!o.quiet) fmt::print(stderr, "runtime {:.2f} s\n", r.runtime_seconds);
    return r.status == "fail" ? 1 : 0;
}

int cmd_render(const Options& o) {
    const RunConfig cfg = load(o);
    if (!cfg.cloud && !cfg.group) throw Error(ErrorKind::Config, "render needs a 'cloud' or 'group' section");
    const PointCloud cloud = resolve_cloud(cfg);
    const fs::path dir = out_dir(o, cfg);
    write_file_atomic(dir / "render.ppm", render_ppm(cloud, cfg.render.size, cfg.render.point_radius));
    say(o, fmt::format("{} points -> {}", cloud.size(), (dir / "render.ppm").string()));
    return 0;
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::IncompleteEnumeration ? 3 : 2; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orbit enumeration, Poincare exponents and box-counting dimension on the hyperbolic disk"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    unsigned threads = 0;
    long truncation = 0;
    app.add_option("--config", o.config, "YAML run configuration");
    app.add_option("--out", o.out, "Output directory");
    auto* threads_opt = app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    auto* trunc_opt = app.add_option("--seed-truncation", truncation, "Finite count for the 1 - beta^n seed");
    app.add_flag("--quiet", o.quiet, "Print nothing on success");

    auto* orbit = app.add_subcommand("orbit", "Enumerate the group and write the orbit of the base point");
    auto* dim = app.add_subcommand("dim", "Box-counting dimension of a cloud");
    auto* poincare = app.add_subcommand("poincare", "Estimate the Poincare exponent");
    auto* scenario = app.add_subcommand("scenario", "Run a canned verification scenario");
    auto* render = app.add_subcommand("render", "Write a PPM picture of the cloud in the disk");

    std::string scenario_name;
    std::vector<std::string> sets;
    bool list = false;
    scenario->add_option("name", scenario_name, "Scenario name");
    scenario->add_option("--set", sets, "Parameter override key=value (repeatable)");
    scenario->add_flag("--list", list, "List scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*threads_opt) {
        o.threads = threads;
    } else if (const char* env = std::getenv("ORBITAL_DIM_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*env != '\0' && *end == '\0') o.threads = static_cast<unsigned>(v);
    }
    if (o.threads) parallel::set_threads(*o.threads);
    if (*trunc_opt) o.seed_truncation = truncation;

    try {
        if (*orbit) return cmd_orbit(o);
        if (*dim) return cmd_dim(o);
        if (*poincare) return cmd_poincare(o);
        if (*scenario) return cmd_scenario(o, scenario_name, sets, list);
        if (*render) return cmd_render(o);
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 2;
}
