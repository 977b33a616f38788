#pragma once

#include "orbital/dimension.hpp"
#include "orbital/group.hpp"
#include "orbital/orbital.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace orbital {

struct CloudSource {
    enum class Kind { Orbital, File, Builtin };
    Kind kind = Kind::Orbital;
    /// inverse_integers, inverted_lattice, cantor, point or interval.
    std::string builtin;
    long n = 100000;
    int k = 1;
    int level = 12;
    std::filesystem::path path;
};

struct RenderOptions {
    int size = 512;
    int point_radius = 0;
};

struct RunConfig {
    std::optional<GroupSpec> group;
    std::optional<SeedSet> seed;
    EnumerationBudget budget;
    ScaleLadder ladder;
    std::optional<CloudSource> cloud;
    std::optional<PoincareWindow> window;
    /// Defaults to ladder.delta_min.
    std::optional<double> orbital_delta_min;
    OrbitalOptions orbital;
    DiskPoint base_point;
    std::optional<double> count_radius;
    RenderOptions render;
    /// Output directory from the config; the --out flag takes precedence.
    std::optional<std::filesystem::path> out_dir;
};

/// Parses YAML text. Relative paths resolve against base_dir. Errors carry
/// "source:line:column" and keep the kind of the underlying failure
/// (DegenerateMatrix, OutsideDisk, ...) or Config for grammar problems.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>",
                       const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

/// A cloud for box counting or rendering: builtin, file or orbital.
PointCloud resolve_cloud(const RunConfig& config);

} // namespace orbital
