#pragma once

#include "orbital/mobius.hpp"

#include <array>
#include <span>
#include <vector>

namespace orbital {

using Point = std::array<double, 2>;

/// Finite point set in ambient dimension 1 (y is always 0) or 2.
struct PointCloud {
    int ambient_dim = 2;
    std::vector<Point> points;
    /// Points closer than this (per grid cell) were merged; 0 = never merged.
    double dedup_tol = 0.0;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

PointCloud cloud_1d(std::span<const double> xs);
PointCloud cloud_2d(std::span<const Complex> zs);

/// Keeps one point (the lexicographically smallest) per cell of the
/// origin-anchored grid of side `tol`. Output is sorted by cell, so it does
/// not depend on input order.
PointCloud deduplicate(PointCloud cloud, double tol);

/// Concatenates clouds of equal ambient dimension.
PointCloud merge(const PointCloud& a, const PointCloud& b);

} // namespace orbital
