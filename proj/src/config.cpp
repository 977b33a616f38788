#include "orbital/config.hpp"

#include "orbital/error.hpp"
#include "orbital/report.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace orbital {

namespace {

class Parser {
public:
    Parser(std::string source, std::filesystem::path base) : source_(std::move(source)), base_(std::move(base)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& msg, ErrorKind kind = ErrorKind::Config) const {
        throw Error(kind, where(node) + ": " + msg);
    }

    std::string where(const YAML::Node& node) const {
        const YAML::Mark m = node.Mark();
        if (m.is_null()) return source_;
        return source_ + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
    }

    void require_map(const YAML::Node& node, const std::string& what) const {
        if (!node.IsMap()) fail(node, what + " must be a mapping");
    }

    void only_keys(const YAML::Node& node, std::initializer_list<const char*> allowed) const {
        for (const auto& kv : node) {
            const std::string key = kv.first.as<std::string>();
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                std::string list;
                for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
                fail(kv.first, "unknown key '" + key + "' (allowed: " + list + ")");
            }
        }
    }

    double real(const YAML::Node& node) const {
        if (!node.IsScalar()) fail(node, "expected a number");
        try {
            const double v = node.as<double>();
            if (!std::isfinite(v)) fail(node, "expected a finite number");
            return v;
        } catch (const YAML::BadConversion&) {
            fail(node, "expected a number, got '" + node.Scalar() + "'");
        }
    }

    long integer(const YAML::Node& node) const {
        const double v = real(node);
        if (v != std::floor(v) || std::abs(v) > 1e15) fail(node, "expected an integer");
        return static_cast<long>(v);
    }

    bool boolean(const YAML::Node& node) const {
        try {
            return node.as<bool>();
        } catch (const YAML::BadConversion&) {
            fail(node, "expected true or false");
        }
    }

    std::string text(const YAML::Node& node) const {
        if (!node.IsScalar()) fail(node, "expected a string");
        return node.Scalar();
    }

    Complex complex(const YAML::Node& node) const {
        if (node.IsScalar()) return {real(node), 0.0};
        if (node.IsSequence() && node.size() == 2) return {real(node[0]), real(node[1])};
        fail(node, "expected a number or a [re, im] pair");
    }

    DiskPoint point(const YAML::Node& node) const {
        const Complex z = complex(node);
        return wrap(node, [&] { return DiskPoint(z); });
    }

    // Re-raises library errors with the config location, keeping their kind.
    template <typename F>
    auto wrap(const YAML::Node& node, F&& f) const -> decltype(f()) {
        try {
            return f();
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Config) throw;
            throw Error(e.kind(), where(node) + ": " + e.detail());
        }
    }

    std::filesystem::path path(const YAML::Node& node) const {
        std::filesystem::path p = text(node);
        return p.is_absolute() ? p : base_ / p;
    }

    const std::filesystem::path& base() const { return base_; }

private:
    std::string source_;
    std::filesystem::path base_;
};

GroupSpec parse_group(const Parser& ps, const YAML::Node& g) {
    ps.require_map(g, "group");
    ps.only_keys(g, {"preset", "alpha", "tau", "theta", "lambda", "generators"});
    if (!g["preset"]) ps.fail(g, "group needs a 'preset'");
    const std::string preset = ps.text(g["preset"]);
    auto param = [&](const char* key, double fallback) { return g[key] ? ps.real(g[key]) : fallback; };
    return ps.wrap(g, [&]() -> GroupSpec {
        if (preset == "hyperbolic") return cyclic_group(preset_hyperbolic(param("alpha", 2.0)), "h");
        if (preset == "parabolic") return cyclic_group(preset_parabolic(param("tau", 2.0)), "p");
        if (preset == "rotation") return cyclic_group(preset_rotation(param("theta", 0.0)), "r");
        if (preset == "schottky") return schottky_group(param("lambda", kDefaultSchottkyLambda));
        if (preset == "generators") {
            const YAML::Node list = g["generators"];
            if (!list || !list.IsSequence() || list.size() == 0)
                ps.fail(g, "preset 'generators' needs a non-empty 'generators' list");
            std::vector<MobiusMap> maps;
            std::vector<std::string> labels;
            for (const YAML::Node& item : list) {
                ps.require_map(item, "generator");
                ps.only_keys(item, {"a", "b", "label"});
                if (!item["a"] || !item["b"]) ps.fail(item, "generator needs 'a' and 'b'");
                const Complex a = ps.complex(item["a"]);
                const Complex b = ps.complex(item["b"]);
                maps.push_back(ps.wrap(item, [&] { return make_mobius(a, b); }));
                labels.push_back(item["label"] ? ps.text(item["label"]) : "g" + std::to_string(labels.size()));
            }
            return ps.wrap(list, [&] { return make_group(std::move(maps), std::move(labels)); });
        }
        ps.fail(g["preset"], "unknown group preset '" + preset +
                                 "' (hyperbolic, parabolic, rotation, schottky, generators)");
    });
}

SeedSet parse_seed(const Parser& ps, const YAML::Node& s) {
    ps.require_map(s, "seed");
    ps.only_keys(s, {"type", "points", "from", "to", "center", "radius", "beta", "count", "path"});
    if (!s["type"]) ps.fail(s, "seed needs a 'type'");
    const std::string type = ps.text(s["type"]);
    auto need = [&](const char* key) {
        if (!s[key]) ps.fail(s, "seed type '" + type + "' needs '" + key + "'");
        return s[key];
    };
    SeedSet seed;
    if (type == "points") {
        const YAML::Node list = need("points");
        if (!list.IsSequence() || list.size() == 0) ps.fail(list, "'points' must be a non-empty list");
        FinitePoints f;
        for (const YAML::Node& p : list) f.points.push_back(ps.point(p));
        seed = f;
    } else if (type == "segment") {
        seed = Segment{ps.point(need("from")), ps.point(need("to"))};
    } else if (type == "disk") {
        seed = HyperbolicDisk{ps.point(need("center")), ps.real(need("radius"))};
    } else if (type == "theorem2") {
        Theorem2Seed t;
        t.beta = s["beta"] ? ps.real(s["beta"]) : 1.0 / 3.0;
        if (s["count"]) t.count = ps.integer(s["count"]);
        seed = t;
    } else if (type == "file") {
        const YAML::Node node = need("path");
        const PointCloud cloud = ps.wrap(node, [&] { return read_points_csv(ps.path(node)); });
        if (cloud.empty()) ps.fail(node, "seed file holds no points");
        FinitePoints f;
        for (const Point& p : cloud.points) f.points.push_back(ps.wrap(node, [&] { return DiskPoint(p[0], p[1]); }));
        seed = f;
    } else {
        ps.fail(s["type"], "unknown seed type '" + type + "' (points, segment, disk, theorem2, file)");
    }
    ps.wrap(s, [&] { validate(seed); });
    return seed;
}

CloudSource parse_cloud(const Parser& ps, const YAML::Node& c) {
    ps.require_map(c, "cloud");
    ps.only_keys(c, {"source", "builtin", "n", "k", "level", "path"});
    CloudSource src;
    const std::string kind = c["source"] ? ps.text(c["source"]) : "orbital";
    if (kind == "orbital") {
        src.kind = CloudSource::Kind::Orbital;
    } else if (kind == "file") {
        src.kind = CloudSource::Kind::File;
        if (!c["path"]) ps.fail(c, "cloud source 'file' needs 'path'");
        src.path = ps.path(c["path"]);
    } else if (kind == "builtin") {
        src.kind = CloudSource::Kind::Builtin;
        if (!c["builtin"]) ps.fail(c, "cloud source 'builtin' needs 'builtin'");
        src.builtin = ps.text(c["builtin"]);
        static const char* names[] = {"inverse_integers", "inverted_lattice", "cantor", "point", "interval"};
        if (std::none_of(std::begin(names), std::end(names), [&](const char* n) { return src.builtin == n; }))
            ps.fail(c["builtin"], "unknown builtin cloud '" + src.builtin +
                                      "' (inverse_integers, inverted_lattice, cantor, point, interval)");
    } else {
        ps.fail(c["source"], "unknown cloud source '" + kind + "' (orbital, file, builtin)");
    }
    if (c["n"]) src.n = ps.integer(c["n"]);
    if (c["k"]) src.k = static_cast<int>(ps.integer(c["k"]));
    if (c["level"]) src.level = static_cast<int>(ps.integer(c["level"]));
    return src;
}

} // namespace

RunConfig parse_config(const std::string& text, const std::string& source, const std::filesystem::path& base_dir) {
    const Parser ps(source, base_dir);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorKind::Config, source + ":" + std::to_string(e.mark.line + 1) + ":" +
                                           std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    RunConfig cfg;
    if (root.IsNull()) return cfg;
    ps.require_map(root, "config");
    ps.only_keys(root, {"group", "seed", "budget", "ladder", "cloud", "poincare", "orbital", "orbit", "render", "output"});

    if (root["group"]) cfg.group = parse_group(ps, root["group"]);
    if (root["seed"]) cfg.seed = parse_seed(ps, root["seed"]);

    if (const YAML::Node b = root["budget"]) {
        ps.require_map(b, "budget");
        ps.only_keys(b, {"max_word_length", "max_elements", "min_boundary_gap"});
        if (b["max_word_length"]) cfg.budget.max_word_length = static_cast<int>(ps.integer(b["max_word_length"]));
        if (b["max_elements"]) {
            const long n = ps.integer(b["max_elements"]);
            if (n < 1) ps.fail(b["max_elements"], "max_elements must be positive", ErrorKind::InvalidBudget);
            cfg.budget.max_elements = static_cast<std::size_t>(n);
        }
        if (b["min_boundary_gap"]) cfg.budget.min_boundary_gap = ps.real(b["min_boundary_gap"]);
        ps.wrap(b, [&] { validate(cfg.budget); });
    }

    if (const YAML::Node l = root["ladder"]) {
        ps.require_map(l, "ladder");
        ps.only_keys(l, {"delta_max", "delta_min", "ratio"});
        if (l["delta_max"]) cfg.ladder.delta_max = ps.real(l["delta_max"]);
        if (l["delta_min"]) cfg.ladder.delta_min = ps.real(l["delta_min"]);
        if (l["ratio"]) cfg.ladder.ratio = ps.real(l["ratio"]);
        ps.wrap(l, [&] { (void)cfg.ladder.scales(); });
    }

    if (root["cloud"]) cfg.cloud = parse_cloud(ps, root["cloud"]);

    if (const YAML::Node p = root["poincare"]) {
        ps.require_map(p, "poincare");
        ps.only_keys(p, {"window"});
        if (const YAML::Node w = p["window"]) {
            if (!w.IsSequence() || w.size() != 2) ps.fail(w, "window must be [lo, hi]");
            cfg.window = PoincareWindow{ps.real(w[0]), ps.real(w[1])};
        }
    }

    if (const YAML::Node o = root["orbital"]) {
        ps.require_map(o, "orbital");
        ps.only_keys(o, {"delta_min", "theta", "include_limit_set"});
        if (o["delta_min"]) cfg.orbital_delta_min = ps.real(o["delta_min"]);
        if (o["theta"]) cfg.orbital.theta = ps.real(o["theta"]);
        if (o["include_limit_set"]) cfg.orbital.include_limit_set = ps.boolean(o["include_limit_set"]);
    }

    if (const YAML::Node o = root["orbit"]) {
        ps.require_map(o, "orbit");
        ps.only_keys(o, {"base_point", "count_radius"});
        if (o["base_point"]) cfg.base_point = ps.point(o["base_point"]);
        if (o["count_radius"]) cfg.count_radius = ps.real(o["count_radius"]);
    }

    if (const YAML::Node r = root["render"]) {
        ps.require_map(r, "render");
        ps.only_keys(r, {"size", "point_radius"});
        if (r["size"]) cfg.render.size = static_cast<int>(ps.integer(r["size"]));
        if (r["point_radius"]) cfg.render.point_radius = static_cast<int>(ps.integer(r["point_radius"]));
        if (cfg.render.size < 1 || cfg.render.size > 16384) ps.fail(r, "render size must lie in [1, 16384]");
        if (cfg.render.point_radius < 0 || cfg.render.point_radius > 64)
            ps.fail(r, "point_radius must lie in [0, 64]");
    }

    if (const YAML::Node o = root["output"]) {
        ps.require_map(o, "output");
        ps.only_keys(o, {"dir"});
        if (o["dir"]) cfg.out_dir = ps.path(o["dir"]);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, e.detail());
    }
    return parse_config(text, path.string(), path.has_parent_path() ? path.parent_path() : ".");
}

PointCloud resolve_cloud(const RunConfig& config) {
    const CloudSource src = config.cloud.value_or(CloudSource{});
    switch (src.kind) {
    case CloudSource::Kind::File: {
        try {
            return read_points_csv(src.path);
        } catch (const Error& e) {
            throw Error(ErrorKind::Config, e.detail());
        }
    }
    case CloudSource::Kind::Builtin: {
        if (src.builtin == "inverse_integers") return inverse_integers(src.n);
        if (src.builtin == "inverted_lattice") return inverted_lattice(src.k, src.n);
        if (src.builtin == "cantor") return cantor_sample(src.level);
        if (src.builtin == "point") return cloud_1d(std::vector<double>{0.0});
        if (src.builtin == "interval") {
            if (src.n < 1) throw Error(ErrorKind::Config, "interval needs n >= 1");
            std::vector<double> xs;
            for (long i = 0; i < src.n; ++i) xs.push_back(static_cast<double>(i) / static_cast<double>(src.n));
            return cloud_1d(xs);
        }
        throw Error(ErrorKind::Config, "unknown builtin cloud '" + src.builtin + "'");
    }
    case CloudSource::Kind::Orbital: break;
    }
    if (!config.group) throw Error(ErrorKind::Config, "an orbital cloud needs a 'group' section");
    const SeedSet seed = config.seed.value_or(SeedSet{FinitePoints{{DiskPoint()}}});
    const double delta_min = config.orbital_delta_min.value_or(config.ladder.delta_min);
    return build_orbital_cloud(*config.group, seed, delta_min, config.budget, config.orbital).cloud;
}

} // namespace orbital
