#include "orbital/scenario.hpp"

#include "orbital/error.hpp"
#include "orbital/group.hpp"
#include "orbital/orbital.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

namespace orbital {

namespace {

using Params = std::vector<std::pair<std::string, double>>;

class ParamView {
public:
    explicit ParamView(const Params& p) : p_(p) {}
    double operator()(const std::string& key) const {
        for (const auto& [k, v] : p_)
            if (k == key) return v;
        throw Error(ErrorKind::InvalidArgument, "missing scenario parameter " + key);
    }
    long integer(const std::string& key) const {
        const double v = (*this)(key);
        if (v != std::floor(v) || std::abs(v) > 1e15)
            throw Error(ErrorKind::InvalidArgument, "parameter " + key + " must be an integer");
        return static_cast<long>(v);
    }

private:
    const Params& p_;
};

struct Entry {
    std::string name;
    Params defaults;
    std::function<void(const ParamView&, VerificationReport&)> run;
};

Params ladder_defaults() { return {{"delta_max", 0x1p-4}, {"delta_min", 0x1p-14}}; }

ScaleLadder ladder_from(const ParamView& p) {
    ScaleLadder l;
    l.delta_max = p("delta_max");
    l.delta_min = p("delta_min");
    return l;
}

EnumerationBudget budget_from(const ParamView& p) {
    EnumerationBudget b;
    const long depth = p.integer("depth");
    if (depth < 0 || depth > std::numeric_limits<int>::max())
        throw Error(ErrorKind::InvalidBudget, "depth out of range");
    b.max_word_length = static_cast<int>(depth);
    const long cap = p.integer("max_elements");
    if (cap < 1) throw Error(ErrorKind::InvalidBudget, "max_elements must be positive");
    b.max_elements = static_cast<std::size_t>(cap);
    return b;
}

double seed_dimension(const SeedSet& seed, const ScaleLadder& ladder, BoxCountReport* out) {
    const PointCloud sample = sample_seed(seed, ladder.delta_min / 4.0);
    *out = dimension_estimate(sample, ladder);
    return out->ls_slope;
}

// Shared pipeline for the bounded-seed scenarios on an explicit group.
void run_bounded(const GroupSpec& spec, const SeedSet& seed, const ParamView& p, VerificationReport& r,
                 Ingredient seed_dim, Ingredient limit_dim, Ingredient exponent, bool estimate_group) {
    const ScaleLadder ladder = ladder_from(p);
    const EnumerationBudget budget = budget_from(p);
    const Enumeration en = enumerate_elements(spec, budget);

    OrbitalOptions opts;
    opts.theta = p("theta");
    const OrbitalCloud oc = build_orbital_cloud(en, seed, ladder.delta_min, budget.min_boundary_gap, opts);
    r.orbital = dimension_estimate(oc.cloud, ladder);
    r.measured = r.orbital.ls_slope;

    BoxCountReport seed_report;
    const double seed_meas = seed_dimension(seed, ladder, &seed_report);
    const PointCloud limit = limit_set_sample(en, budget.min_boundary_gap);
    const BoxCountReport limit_report = dimension_estimate(limit, ladder);

    if (estimate_group) {
        const PoincareEstimate pe = poincare_exponent_estimate(en);
        exponent.value = pe.growth_slope;
        limit_dim.value = limit_report.ls_slope;
        r.metrics.push_back({"poincare_growth_slope", pe.growth_slope});
        r.metrics.push_back({"poincare_series_cliff", pe.series_cliff});
        r.metrics.push_back({"poincare_window_lo", pe.window.lo});
        r.metrics.push_back({"poincare_window_hi", pe.window.hi});
    }
    r.dim_seed = std::move(seed_dim);
    r.dim_limit_set = std::move(limit_dim);
    r.exponent = std::move(exponent);
    r.predicted = std::max({r.dim_seed.value, r.dim_limit_set.value, r.exponent.value});
    r.pass = std::abs(r.measured - r.predicted) <= r.tolerance;

    const double lower = std::max(seed_meas, limit_report.ls_slope);
    const double lower_box = std::max(seed_report.min_tail_slope, limit_report.min_tail_slope);
    r.metrics.push_back({"elements", static_cast<double>(en.records.size())});
    r.metrics.push_back({"enumeration_truncated", en.truncated ? 1.0 : 0.0});
    r.metrics.push_back({"images_used", static_cast<double>(oc.images_used)});
    r.metrics.push_back({"near_gap_cut", oc.near_gap_cut});
    r.metrics.push_back({"near_shell_complete", oc.near_shell_complete ? 1.0 : 0.0});
    r.metrics.push_back({"cloud_points", static_cast<double>(oc.cloud.size())});
    r.metrics.push_back({"seed_dim_measured", seed_meas});
    r.metrics.push_back({"limit_set_points", static_cast<double>(limit.size())});
    r.metrics.push_back({"limit_set_dim_measured", limit_report.ls_slope});
    r.metrics.push_back({"orbital_max_pair_slope", r.orbital.max_pair_slope});
    r.metrics.push_back({"lower_bound_ok", r.measured >= lower - 0.05 ? 1.0 : 0.0});
    r.metrics.push_back({"orbital_lower_box", r.orbital.min_tail_slope});
    r.metrics.push_back({"lower_box_floor", lower_box});
    r.metrics.push_back({"lower_box_sandwich",
                         (r.orbital.min_tail_slope >= lower_box - 0.07 &&
                          r.orbital.min_tail_slope <= r.predicted + 0.07)
                             ? 1.0
                             : 0.0});
}

Ingredient analytic(double v, std::string why) { return {v, "analytic: " + why}; }
Ingredient estimated(std::string how) { return {0.0, "estimated: " + how}; }

Params with_common(Params p, const Params& extra) {
    p.insert(p.end(), extra.begin(), extra.end());
    return p;
}

const std::vector<Entry>& catalog() {
    static const std::vector<Entry> entries = [] {
        std::vector<Entry> e;
        const Params ladder = ladder_defaults();

        e.push_back({"hyperbolic_point",
                     with_common({{"alpha", 2.0}, {"depth", 200}, {"max_elements", 1e6}, {"theta", 0.25},
                                  {"tolerance", 0.1}},
                                 ladder),
                     [](const ParamView& p, VerificationReport& r) {
                         run_bounded(cyclic_group(preset_hyperbolic(p("alpha")), "h"), FinitePoints{{DiskPoint()}},
                                     p, r, analytic(0.0, "finite seed"), analytic(0.0, "two fixed points"),
                                     analytic(0.0, "cyclic hyperbolic group"), false);
                     }});

        e.push_back({"hyperbolic_segment",
                     with_common({{"alpha", 2.0}, {"from", 0.0}, {"to", 0.5}, {"depth", 200}, {"max_elements", 1e6},
                                  {"theta", 0.25}, {"tolerance", 0.05}},
                                 ladder),
                     [](const ParamView& p, VerificationReport& r) {
                         run_bounded(cyclic_group(preset_hyperbolic(p("alpha")), "h"),
                                     Segment{DiskPoint(p("from"), 0.0), DiskPoint(p("to"), 0.0)}, p, r,
                                     analytic(1.0, "line segment"), analytic(0.0, "two fixed points"),
                                     analytic(0.0, "cyclic hyperbolic group"), false);
                     }});

        e.push_back({"parabolic_point",
                     with_common({{"tau", 2.0}, {"depth", 100000}, {"max_elements", 1e6}, {"theta", 0.25},
                                  {"tolerance", 0.05}},
                                 ladder),
                     [](const ParamView& p, VerificationReport& r) {
                         run_bounded(cyclic_group(preset_parabolic(p("tau")), "p"), FinitePoints{{DiskPoint()}}, p,
                                     r, analytic(0.0, "finite seed"), analytic(0.0, "single fixed point"),
                                     analytic(0.5, "cyclic parabolic group"), false);
                     }});

        e.push_back({"schottky_point",
                     with_common({{"lambda", kDefaultSchottkyLambda}, {"depth", 12}, {"max_elements", 2e6},
                                  {"theta", 0.25}, {"tolerance", 0.07}},
                                 ladder),
                     [](const ParamView& p, VerificationReport& r) {
                         run_bounded(schottky_group(p("lambda")), FinitePoints{{DiskPoint()}}, p, r,
                                     analytic(0.0, "finite seed"), estimated("box count of limit-set sample"),
                                     estimated("orbit growth slope"), true);
                     }});

        e.push_back({"schottky_segment",
                     with_common({{"lambda", kDefaultSchottkyLambda}, {"from", -0.5}, {"to", 0.5}, {"depth", 12},
                                  {"max_elements", 2e6}, {"theta", 0.25}, {"tolerance", 0.05}},
                                 ladder),
                     [](const ParamView& p, VerificationReport& r) {
                         run_bounded(schottky_group(p("lambda")),
                                     Segment{DiskPoint(p("from"), 0.0), DiskPoint(p("to"), 0.0)}, p, r,
                                     analytic(1.0, "line segment"), estimated("box count of limit-set sample"),
                                     estimated("orbit growth slope"), true);
                     }});

        e.push_back({"theorem2_dense",
                     {{"alpha", 2.0},
                      {"beta", 1.0 / 3.0},
                      {"m_bound", 60},
                      {"n_max", 60},
                      {"delta_max", 0x1p-2},
                      {"delta_min", 0x1p-7},
                      {"density_delta", 0.02},
                      {"density_lo", -0.9},
                      {"density_hi", 0.9},
                      {"seed_delta_max", 0x1p-4},
                      {"seed_delta_min", 0x1p-40},
                      {"exponent_depth", 300},
                      {"tolerance", 0.1}},
                     [](const ParamView& p, VerificationReport& r) {
                         const double alpha = p("alpha");
                         const double beta = p("beta");
                         const long mb = p.integer("m_bound");
                         const long nmax = p.integer("n_max");
                         if (mb < 0 || nmax < 1) throw Error(ErrorKind::InvalidArgument, "need m_bound >= 0, n_max >= 1");
                         std::vector<double> xs;
                         for (long m = -mb; m <= mb; ++m)
                             for (long n = 1; n <= nmax; ++n) xs.push_back(theorem2_point(alpha, beta, m, n));
                         const PointCloud cloud = cloud_1d(xs);
                         r.orbital = dimension_estimate(cloud, ladder_from(p));
                         r.measured = r.orbital.ls_slope;
                         const double density =
                             density_fraction(cloud, p("density_lo"), p("density_hi"), p("density_delta"));

                         ScaleLadder seed_ladder;
                         seed_ladder.delta_max = p("seed_delta_max");
                         seed_ladder.delta_min = p("seed_delta_min");
                         const long count = theorem2_default_truncation(seed_ladder.delta_min, beta);
                         const PointCloud seed = sample_seed(Theorem2Seed{beta, count}, 1.0);
                         PointCloud seed_line = seed;
                         seed_line.ambient_dim = 1;
                         const BoxCountReport seed_report = dimension_estimate(seed_line, seed_ladder);

                         EnumerationBudget budget;
                         budget.max_word_length = static_cast<int>(p.integer("exponent_depth"));
                         const Enumeration en = enumerate_elements(cyclic_group(preset_hyperbolic(alpha), "h"), budget);
                         const PoincareEstimate pe = poincare_exponent_estimate(en);
                         const PointCloud limit = limit_set_sample(en, budget.min_boundary_gap);
                         const BoxCountReport limit_report = dimension_estimate(limit, seed_ladder);

                         r.dim_seed = {seed_report.ls_slope, "estimated: box count of truncated seed"};
                         r.dim_limit_set = {limit_report.ls_slope, "estimated: box count of limit-set sample"};
                         r.exponent = {pe.growth_slope, "estimated: orbit growth slope"};
                         r.predicted = std::max({r.dim_seed.value, r.dim_limit_set.value, r.exponent.value});
                         r.pass = std::abs(r.measured - r.predicted) <= r.tolerance;
                         r.expected_violation = !r.pass && r.measured >= 0.9 && density >= 0.95 &&
                                                r.dim_seed.value <= 0.1 && r.dim_limit_set.value <= 0.1 &&
                                                r.exponent.value <= 0.1;

                         r.metrics.push_back({"cloud_points", static_cast<double>(cloud.size())});
                         r.metrics.push_back({"density_fraction", density});
                         r.metrics.push_back({"seed_points", static_cast<double>(seed.size())});
                         r.metrics.push_back({"limit_set_points", static_cast<double>(limit.size())});
                         r.metrics.push_back({"poincare_series_cliff", pe.series_cliff});
                         r.metrics.push_back({"orbital_max_pair_slope", r.orbital.max_pair_slope});
                         r.metrics.push_back(
                             {"lower_bound_ok",
                              r.measured >= std::max(r.dim_seed.value, r.dim_limit_set.value) - 0.05 ? 1.0 : 0.0});
                         r.metrics.push_back({"orbital_lower_box", r.orbital.min_tail_slope});
                     }});

        for (int k = 1; k <= 2; ++k) {
            e.push_back({"inverted_lattice_" + std::to_string(k),
                         with_common({{"n", k == 1 ? 100000.0 : 500.0}, {"tolerance", k == 1 ? 0.05 : 0.07}}, ladder),
                         [k](const ParamView& p, VerificationReport& r) {
                             const PointCloud cloud = inverted_lattice(k, p.integer("n"));
                             r.orbital = dimension_estimate(cloud, ladder_from(p));
                             r.measured = r.orbital.ls_slope;
                             r.dim_seed = analytic(0.0, "single base point");
                             r.dim_limit_set = analytic(0.0, "single fixed point");
                             r.exponent = analytic(0.5 * k, "rank-k parabolic exponent k/2");
                             r.predicted = 0.5 * k;
                             r.pass = std::abs(r.measured - r.predicted) <= r.tolerance;
                             r.metrics.push_back({"cloud_points", static_cast<double>(cloud.size())});
                             r.metrics.push_back({"orbital_max_pair_slope", r.orbital.max_pair_slope});
                             r.metrics.push_back({"orbital_lower_box", r.orbital.min_tail_slope});
                         }});
        }
        return e;
    }();
    return entries;
}

const Entry& find_entry(const std::string& name) {
    for (const Entry& e : catalog())
        if (e.name == name) return e;
    std::string known;
    for (const Entry& e : catalog()) known += (known.empty() ? "" : ", ") + e.name;
    throw Error(ErrorKind::UnknownScenario, "'" + name + "' (known: " + known + ")");
}

} // namespace

double VerificationReport::metric(const std::string& key) const {
    for (const auto& [k, v] : metrics)
        if (k == key) return v;
    throw Error(ErrorKind::InvalidArgument, "report has no metric " + key);
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const Entry& e : catalog()) out.push_back(e.name);
    return out;
}

std::vector<std::pair<std::string, double>> scenario_parameters(const std::string& name) {
    return find_entry(name).defaults;
}

VerificationReport run_scenario(const std::string& name, const std::map<std::string, double>& overrides) {
    const Entry& entry = find_entry(name);
    Params params = entry.defaults;
    for (const auto& [key, value] : overrides) {
        auto it = std::find_if(params.begin(), params.end(), [&](const auto& kv) { return kv.first == key; });
        if (it == params.end())
            throw Error(ErrorKind::InvalidArgument, "scenario " + name + " has no parameter '" + key + "'");
        it->second = value;
    }
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    r.name = name;
    r.parameters = params;
    const ParamView view(params);
    r.tolerance = view("tolerance");
    entry.run(view, r);
    r.status = r.pass ? "pass" : (r.expected_violation ? "expected-violation" : "fail");
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

DirichletResult best_for_m(double la, double lb, double ly, double y, long m) {
    const double target = (ly - static_cast<double>(m) * la) / lb;
    DirichletResult best{m, 1, std::numeric_limits<double>::infinity()};
    for (double cand : {std::floor(target), std::ceil(target)}) {
        const long n = std::max(1L, static_cast<long>(cand));
        const double err = y * std::abs(std::expm1(static_cast<double>(m) * la + static_cast<double>(n) * lb - ly));
        if (err < best.error) best = {m, n, err};
    }
    return best;
}

void check_dirichlet(double alpha, double beta, double y, long m_bound) {
    if (!(alpha > 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must exceed 1");
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
    if (!(y > 0.0)) throw Error(ErrorKind::InvalidArgument, "target must be positive");
    if (m_bound < 0) throw Error(ErrorKind::InvalidArgument, "m_bound must be >= 0");
}

} // namespace

DirichletResult dirichlet_approximate(double alpha, double beta, double y, long m_bound) {
    check_dirichlet(alpha, beta, y, m_bound);
    const double la = std::log(alpha), lb = std::log(beta), ly = std::log(y);
    DirichletResult best{0, 1, std::numeric_limits<double>::infinity()};
    for (long m = -m_bound; m <= m_bound; ++m) {
        const DirichletResult c = best_for_m(la, lb, ly, y, m);
        if (c.error < best.error) best = c;
    }
    return best;
}

std::vector<DirichletResult> dirichlet_best(double alpha, double beta, double y, long m_bound, std::size_t count) {
    check_dirichlet(alpha, beta, y, m_bound);
    const double la = std::log(alpha), lb = std::log(beta), ly = std::log(y);
    std::vector<DirichletResult> all;
    for (long m = -m_bound; m <= m_bound; ++m) all.push_back(best_for_m(la, lb, ly, y, m));
    std::stable_sort(all.begin(), all.end(),
                     [](const DirichletResult& a, const DirichletResult& b) { return a.error < b.error; });
    if (all.size() > count) all.resize(count);
    return all;
}

double density_fraction(const PointCloud& cloud, double lo, double hi, double delta) {
    if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "density interval needs lo < hi");
    if (!(delta > 0.0 && delta < hi - lo)) throw Error(ErrorKind::InvalidArgument, "density cell must be in (0, hi - lo)");
    const auto first = static_cast<long long>(std::floor(lo / delta));
    const auto last = static_cast<long long>(std::floor(hi / delta));
    std::vector<char> hit(static_cast<std::size_t>(last - first + 1), 0);
    for (const Point& p : cloud.points) {
        const auto k = static_cast<long long>(std::floor(p[0] / delta));
        if (k >= first && k <= last) hit[static_cast<std::size_t>(k - first)] = 1;
    }
    const auto filled = std::count(hit.begin(), hit.end(), 1);
    return static_cast<double>(filled) / static_cast<double>(hit.size());
}

} // namespace orbital
