#pragma once

#include "orbital/group.hpp"
#include "orbital/point_cloud.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace orbital {

/// Scales delta_max * ratio^-k for k = 0, 1, ... down to delta_min.
struct ScaleLadder {
    double delta_max = 0x1p-4;
    double delta_min = 0x1p-14;
    double ratio = 2.0;

    /// Throws Error(InsufficientScales) when fewer than 4 scales result and
    /// Error(InvalidArgument) on out-of-range fields.
    std::vector<double> scales() const;
};

/// Number of cells of the origin-anchored grid of side delta that contain a
/// point; cell index is floor(coord / delta) per axis.
std::size_t box_count(const PointCloud& cloud, double delta);

struct BoxCountReport {
    std::vector<double> scales;
    std::vector<std::size_t> counts;
    /// Least-squares slope of log N against log(1/delta).
    double ls_slope = 0.0;
    /// Largest slope between consecutive scales.
    double max_pair_slope = 0.0;
    /// Smallest slope between consecutive scales on the finer half of the ladder.
    double min_tail_slope = 0.0;
    /// Root-mean-square residual of the least-squares fit (natural log units).
    double residual = 0.0;
    int ambient_dim = 2;
    std::size_t point_count = 0;
};

BoxCountReport dimension_estimate(const PointCloud& cloud, const ScaleLadder& ladder);

/// Fits already computed counts; scales must be decreasing.
BoxCountReport fit_counts(std::vector<double> scales, std::vector<std::size_t> counts, int ambient_dim = 2,
                          std::size_t point_count = 0);

struct PoincareWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct PoincareEstimate {
    /// Least-squares slope of log N(R) against R at unit steps over the window.
    double growth_slope = 0.0;
    /// Exponent where the trend of unit-distance-shell sums changes sign.
    double series_cliff = 0.0;
    PoincareWindow window;
    std::size_t elements = 0;
};

/// Without a window, uses [max(1, hi / 4), hi] with hi the largest integer
/// below the frontier distance. Throws Error(IncompleteEnumeration) when the
/// window reaches the frontier.
PoincareEstimate poincare_exponent_estimate(const Enumeration& enumeration,
                                            std::optional<PoincareWindow> window = std::nullopt);
PoincareEstimate poincare_exponent_estimate(const GroupSpec& spec, const EnumerationBudget& budget,
                                            std::optional<PoincareWindow> window = std::nullopt);

/// Fixed points of enumerated hyperbolic and parabolic elements, plus radial
/// projections g(0)/|g(0)| of elements with 1 - |g(0)| < 10 * min_gap.
PointCloud limit_set_sample(const Enumeration& enumeration, double min_gap);
PointCloud limit_set_sample(const GroupSpec& spec, const EnumerationBudget& budget);

/// {x / |x|^2 : x in Z^k, 0 < |x| <= n} for k = 1 or 2.
PointCloud inverted_lattice(int k, long n);

/// {1/j : 1 <= j <= n} on the line.
PointCloud inverse_integers(long n);

/// Left endpoints of the 2^level intervals of the middle-third Cantor construction.
PointCloud cantor_sample(int level);

} // namespace orbital
