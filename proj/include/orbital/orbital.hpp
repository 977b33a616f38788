#pragma once

#include "orbital/group.hpp"
#include "orbital/point_cloud.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace orbital {

struct FinitePoints {
    std::vector<DiskPoint> points;
};

struct Segment {
    DiskPoint from;
    DiskPoint to;
};

/// Closed hyperbolic ball of the given radius (hyperbolic units) about center.
struct HyperbolicDisk {
    DiskPoint center;
    double radius = 0.0;
};

/// {1 - beta^n : 1 <= n <= count} on the real axis; without a count it
/// stands for the whole sequence, which is not bounded in the disk.
struct Theorem2Seed {
    double beta = 1.0 / 3.0;
    std::optional<long> count;
};

using SeedSet = std::variant<FinitePoints, Segment, HyperbolicDisk, Theorem2Seed>;

/// Throws Error(InvalidArgument) on malformed parameters.
void validate(const SeedSet& seed);

/// Smallest r with the seed inside the closed ball |z| <= r, or nullopt for
/// an untruncated Theorem2Seed.
std::optional<double> seed_bounding_radius(const SeedSet& seed);

inline constexpr std::size_t kDefaultSampleCap = 100'000'000;

/// A cloud in which every point of the seed has a sample within Euclidean eps.
/// Finite seeds and truncated Theorem2Seed are returned exactly.
PointCloud sample_seed(const SeedSet& seed, double eps, std::size_t cap = kDefaultSampleCap);

struct OrbitalOptions {
    /// Elements with 1 - |g(0)| below theta * delta_min (theta * delta_min^2
    /// when the enumeration has no hyperbolic element) are left to the
    /// limit-set sample.
    double theta = 0.25;
    bool include_limit_set = true;
    std::size_t sample_cap = kDefaultSampleCap;
};

struct OrbitalCloud {
    PointCloud cloud;
    std::size_t images_used = 0;
    double near_gap_cut = 0.0;
    /// Every element on the near side of the cut was expanded, so the
    /// truncated union is complete.
    bool near_shell_complete = true;
    bool has_hyperbolic = false;
};

/// Sampling pitch for the image g(C): delta_min / (K_r |g'(0)|).
double image_pitch(double delta_min, double seed_radius, const MobiusMap& g);

OrbitalCloud build_orbital_cloud(const Enumeration& enumeration, const SeedSet& seed, double delta_min,
                                 double limit_gap, const OrbitalOptions& options = {});
OrbitalCloud build_orbital_cloud(const GroupSpec& spec, const SeedSet& seed, double delta_min,
                                 const EnumerationBudget& budget, const OrbitalOptions& options = {});

/// h^{-m}(1 - beta^n) for h = preset_hyperbolic(alpha), in closed form with
/// alpha^m beta^n taken in log space.
double theorem2_point(double alpha, double beta, long m, long n);

/// ceil(log(delta) / log(beta)) + 10.
long theorem2_default_truncation(double delta, double beta);

} // namespace orbital
