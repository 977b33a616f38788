#pragma once

#include "orbital/mobius.hpp"
#include "orbital/point_cloud.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace orbital {

/// A finitely generated group given by generators. Discreteness is trusted.
struct GroupSpec {
    std::vector<MobiusMap> generators;
    std::vector<std::string> labels;
};

/// Validates and returns the spec: non-empty, no identity generator,
/// generators pairwise distinct. Missing labels default to g0, g1, ...
GroupSpec make_group(std::vector<MobiusMap> generators, std::vector<std::string> labels = {});

GroupSpec cyclic_group(const MobiusMap& generator, std::string label = "g");

/// Smallest λ for which the perpendicular-axes preset is a Schottky group.
inline constexpr double kSchottkyThreshold = 3.0 + 2.0 * std::numbers::sqrt2;
inline constexpr double kDefaultSchottkyLambda = 10.0;

/// Generators preset_hyperbolic(λ) and its conjugate by a quarter turn, so the
/// axes are the real and imaginary diameters. The four isometric circles are
/// pairwise disjoint exactly when λ > 3 + 2√2; smaller λ throws.
GroupSpec schottky_group(double lambda = kDefaultSchottkyLambda);

struct EnumerationBudget {
    int max_word_length = 8;
    std::size_t max_elements = 1'000'000;
    /// Stop expanding an element once 1 - |g(0)| falls below this.
    double min_boundary_gap = 1e-300;
};

void validate(const EnumerationBudget& budget);

inline constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

struct OrbitRecord {
    MobiusMap map;
    /// g(0); may round onto the unit circle for very deep elements, so it is
    /// kept as a raw coordinate. Use boundary_gap for 1 - |g(0)|.
    Complex base_image;
    double dist = 0.0;         // d(0, g(0))
    double deriv0 = 1.0;       // |g'(0)|
    double boundary_gap = 1.0; // 1 - |g(0)|
    std::uint32_t parent = kNoParent;
    std::int32_t letter = -1;
    std::int32_t length = 0;
    /// False when the element's children were not generated (frontier).
    bool expanded = false;
};

/// Breadth-first enumeration result, sorted by (word length, lexicographic
/// word). Letters 0..n-1 are the generators, n..2n-1 their inverses.
struct Enumeration {
    std::vector<OrbitRecord> records;
    std::size_t generator_count = 0;
    /// max_elements was hit.
    bool truncated = false;

    std::vector<std::int32_t> word(std::size_t index) const;
    /// Smallest d(0, g(0)) over unexpanded elements; +inf if none.
    double frontier_min_distance() const noexcept;
    /// Number of elements per word length.
    std::vector<std::size_t> shell_sizes() const;
};

Enumeration enumerate_elements(const GroupSpec& spec, const EnumerationBudget& budget);

MobiusMap letter_map(const GroupSpec& spec, std::int32_t letter);
MobiusMap word_to_map(const GroupSpec& spec, std::span<const std::int32_t> word);
std::string word_to_string(const GroupSpec& spec, std::span<const std::int32_t> word);

/// Images g(z0) over the enumeration, duplicates within 1e-12 removed.
PointCloud orbit_points(const GroupSpec& spec, const DiskPoint& z0, const EnumerationBudget& budget);
PointCloud orbit_points(const Enumeration& enumeration, const DiskPoint& z0);

/// #{g : d(0, g(0)) <= R}. Throws Error(IncompleteEnumeration) unless every
/// frontier element lies beyond R.
std::size_t orbit_counting(const GroupSpec& spec, double radius, const EnumerationBudget& budget);
std::size_t orbit_counting(const Enumeration& enumeration, double radius);

struct PoincareSum {
    double exponent = 0.0;
    double total = 0.0;
    /// Sum restricted to each word length (index = length).
    std::vector<double> shell_sums;
};

/// Σ ((1 - |g(0)|) / (1 + |g(0)|))^s over the enumeration.
PoincareSum poincare_partial_sum(const GroupSpec& spec, double s, const EnumerationBudget& budget);
PoincareSum poincare_partial_sum(const Enumeration& enumeration, double s);

/// Poincaré sum restricted to distance shells [lo + j w, lo + (j+1) w).
std::vector<double> distance_shell_sums(const Enumeration& enumeration, double s, double lo, double hi,
                                        double width = 1.0);

} // namespace orbital
