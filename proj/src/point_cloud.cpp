#include "orbital/point_cloud.hpp"

#include "orbital/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>

namespace orbital {

PointCloud cloud_1d(std::span<const double> xs) {
    PointCloud cloud{1, {}, 0.0};
    cloud.points.reserve(xs.size());
    for (double x : xs) cloud.points.push_back({x, 0.0});
    return cloud;
}

PointCloud cloud_2d(std::span<const Complex> zs) {
    PointCloud cloud{2, {}, 0.0};
    cloud.points.reserve(zs.size());
    for (const Complex& z : zs) cloud.points.push_back({z.real(), z.imag()});
    return cloud;
}

PointCloud deduplicate(PointCloud cloud, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "dedup tolerance must be positive");
    struct Keyed {
        std::int64_t kx, ky;
        Point p;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(cloud.points.size());
    for (const Point& p : cloud.points) {
        keyed.push_back({static_cast<std::int64_t>(std::floor(p[0] / tol)),
                         static_cast<std::int64_t>(std::floor(p[1] / tol)), p});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& l, const Keyed& r) {
        return std::tie(l.kx, l.ky, l.p) < std::tie(r.kx, r.ky, r.p);
    });
    cloud.points.clear();
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i > 0 && keyed[i].kx == keyed[i - 1].kx && keyed[i].ky == keyed[i - 1].ky) continue;
        cloud.points.push_back(keyed[i].p);
    }
    cloud.dedup_tol = std::max(cloud.dedup_tol, tol);
    return cloud;
}

PointCloud merge(const PointCloud& a, const PointCloud& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw Error(ErrorKind::InvalidArgument, "cannot merge clouds of different ambient dimension");
    PointCloud out = a;
    out.points.insert(out.points.end(), b.points.begin(), b.points.end());
    out.dedup_tol = std::max(a.dedup_tol, b.dedup_tol);
    return out;
}

} // namespace orbital
