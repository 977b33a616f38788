#include "orbital/dimension.hpp"

#include "orbital/error.hpp"
#include "orbital/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace orbital {

namespace {

using CellKey = std::pair<std::int64_t, std::int64_t>;

double ls_fit(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const bool flat = std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); });
    const double slope = sxx > 0.0 && !flat ? sxy / sxx : 0.0;
    if (rms) {
        double ss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (my + slope * (x[i] - mx));
            ss += r * r;
        }
        *rms = std::sqrt(ss / n);
    }
    return slope;
}

} // namespace

std::vector<double> ScaleLadder::scales() const {
    if (!(delta_max > 0.0 && delta_max < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta_max must lie in (0, 1)");
    if (!(delta_min > 0.0 && delta_min < delta_max))
        throw Error(ErrorKind::InvalidArgument, "delta_min must lie in (0, delta_max)");
    if (!(ratio > 1.0)) throw Error(ErrorKind::InvalidArgument, "ladder ratio must exceed 1");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double d = delta_max * std::pow(ratio, -k);
        if (d < delta_min * (1.0 - 1e-12)) break;
        out.push_back(d);
    }
    if (out.size() < 4)
        throw Error(ErrorKind::InsufficientScales, "ladder has " + std::to_string(out.size()) + " scales, need 4");
    return out;
}

std::size_t box_count(const PointCloud& cloud, double delta) {
    if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "cannot box-count an empty cloud");
    if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "box size must be positive");
    const std::size_t n = cloud.size();
    std::vector<std::vector<CellKey>> parts(parallel::chunk_count(n, 1 << 16));
    parallel::for_chunks(
        n,
        [&](std::size_t c, std::size_t begin, std::size_t end) {
            auto& keys = parts[c];
            keys.reserve(end - begin);
            for (std::size_t i = begin; i < end; ++i) {
                const Point& p = cloud.points[i];
                keys.emplace_back(static_cast<std::int64_t>(std::floor(p[0] / delta)),
                                  static_cast<std::int64_t>(std::floor(p[1] / delta)));
            }
            std::sort(keys.begin(), keys.end());
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        },
        1 << 16);
    if (parts.size() == 1) return parts[0].size();
    std::vector<CellKey> all;
    for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

BoxCountReport fit_counts(std::vector<double> scales, std::vector<std::size_t> counts, int ambient_dim,
                          std::size_t point_count) {
    if (scales.size() != counts.size()) throw Error(ErrorKind::InvalidArgument, "scales and counts differ in length");
    if (scales.size() < 4) throw Error(ErrorKind::InsufficientScales, "need at least 4 scales");
    BoxCountReport r;
    r.ambient_dim = ambient_dim;
    r.point_count = point_count;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (counts[i] == 0) throw Error(ErrorKind::InvalidArgument, "box counts must be positive");
        x.push_back(-std::log(scales[i]));
        y.push_back(std::log(static_cast<double>(counts[i])));
    }
    r.ls_slope = ls_fit(x, y, &r.residual);
    r.max_pair_slope = -std::numeric_limits<double>::infinity();
    r.min_tail_slope = std::numeric_limits<double>::infinity();
    const std::size_t tail_start = (x.size() - 1) / 2;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double s = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        r.max_pair_slope = std::max(r.max_pair_slope, s);
        if (i >= tail_start) r.min_tail_slope = std::min(r.min_tail_slope, s);
    }
    r.scales = std::move(scales);
    r.counts = std::move(counts);
    return r;
}

BoxCountReport dimension_estimate(const PointCloud& cloud, const ScaleLadder& ladder) {
    if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "cannot estimate the dimension of an empty cloud");
    std::vector<double> scales = ladder.scales();
    std::vector<std::size_t> counts;
    counts.reserve(scales.size());
    for (double d : scales) counts.push_back(box_count(cloud, d));
    return fit_counts(std::move(scales), std::move(counts), cloud.ambient_dim, cloud.size());
}

PoincareEstimate poincare_exponent_estimate(const Enumeration& enumeration, std::optional<PoincareWindow> window) {
    const double frontier = enumeration.frontier_min_distance();
    std::vector<double> dists;
    dists.reserve(enumeration.records.size());
    for (const OrbitRecord& r : enumeration.records) dists.push_back(r.dist);
    std::sort(dists.begin(), dists.end());

    PoincareWindow w;
    if (window) {
        w = *window;
        if (!(w.lo >= 0.0 && w.hi >= w.lo + 3.0))
            throw Error(ErrorKind::InvalidArgument, "Poincare window needs hi >= lo + 3");
        if (!(w.hi < frontier))
            throw Error(ErrorKind::IncompleteEnumeration,
                        "window end " + std::to_string(w.hi) + " reaches the enumeration frontier at " +
                            std::to_string(frontier));
    } else {
        double hi = std::isfinite(frontier) ? std::ceil(frontier) - 1.0 : std::floor(dists.back());
        w.hi = hi;
        w.lo = std::max(1.0, std::floor(hi / 4.0));
        if (!(w.hi >= w.lo + 3.0))
            throw Error(ErrorKind::IncompleteEnumeration,
                        "enumeration reaches distance " + std::to_string(frontier) + ", too shallow for a window");
    }

    PoincareEstimate est;
    est.window = w;
    est.elements = enumeration.records.size();

    std::vector<double> rs, logn;
    for (double R = w.lo; R <= w.hi + 1e-9; R += 1.0) {
        const auto count = static_cast<double>(std::upper_bound(dists.begin(), dists.end(), R) - dists.begin());
        rs.push_back(R);
        logn.push_back(std::log(count));
    }
    est.growth_slope = ls_fit(rs, logn);

    const auto trend = [&](double s) {
        const std::vector<double> sums = distance_shell_sums(enumeration, s, w.lo, w.hi, 1.0);
        std::vector<double> js, ls;
        for (std::size_t j = 0; j < sums.size(); ++j) {
            if (sums[j] <= 0.0) continue;
            js.push_back(static_cast<double>(j));
            ls.push_back(std::log(sums[j]));
        }
        return js.size() < 2 ? 0.0 : ls_fit(js, ls);
    };
    double lo = 0.0, hi = 2.0;
    if (trend(lo) <= 0.0) {
        est.series_cliff = 0.0;
    } else if (trend(hi) > 0.0) {
        est.series_cliff = hi;
    } else {
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (lo + hi);
            (trend(mid) > 0.0 ? lo : hi) = mid;
        }
        est.series_cliff = 0.5 * (lo + hi);
    }
    return est;
}

PoincareEstimate poincare_exponent_estimate(const GroupSpec& spec, const EnumerationBudget& budget,
                                            std::optional<PoincareWindow> window) {
    return poincare_exponent_estimate(enumerate_elements(spec, budget), window);
}

PointCloud limit_set_sample(const Enumeration& enumeration, double min_gap) {
    const std::size_t n = enumeration.records.size();
    std::vector<std::vector<Complex>> parts(parallel::chunk_count(n));
    parallel::for_chunks(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
        auto& out = parts[c];
        for (std::size_t i = begin; i < end; ++i) {
            const OrbitRecord& r = enumeration.records[i];
            const ElementClass cls = classify(r.map);
            if (cls == ElementClass::Hyperbolic || cls == ElementClass::Parabolic) {
                for (const Complex& z : fixed_points(r.map)) out.push_back(z);
            }
            if (r.boundary_gap < 10.0 * min_gap && std::abs(r.base_image) > 0.0)
                out.push_back(r.base_image / std::abs(r.base_image));
        }
    });
    std::vector<Complex> all;
    for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    PointCloud cloud = cloud_2d(all);
    if (cloud.empty()) return cloud;
    return deduplicate(std::move(cloud), 1e-12);
}

PointCloud limit_set_sample(const GroupSpec& spec, const EnumerationBudget& budget) {
    return limit_set_sample(enumerate_elements(spec, budget), budget.min_boundary_gap);
}

PointCloud inverted_lattice(int k, long n) {
    if (k != 1 && k != 2) throw Error(ErrorKind::InvalidArgument, "inverted lattice supports k = 1 or 2");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "inverted lattice needs N >= 1");
    PointCloud cloud;
    cloud.ambient_dim = k;
    if (k == 1) {
        cloud.points.reserve(2 * static_cast<std::size_t>(n));
        for (long j = n; j >= 1; --j) cloud.points.push_back({-1.0 / static_cast<double>(j), 0.0});
        for (long j = 1; j <= n; ++j) cloud.points.push_back({1.0 / static_cast<double>(j), 0.0});
        return cloud;
    }
    const long long n2 = static_cast<long long>(n) * n;
    for (long x = -n; x <= n; ++x) {
        for (long y = -n; y <= n; ++y) {
            const long long q = static_cast<long long>(x) * x + static_cast<long long>(y) * y;
            if (q == 0 || q > n2) continue;
            const auto qd = static_cast<double>(q);
            cloud.points.push_back({static_cast<double>(x) / qd, static_cast<double>(y) / qd});
        }
    }
    return cloud;
}

PointCloud inverse_integers(long n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 1");
    PointCloud cloud;
    cloud.ambient_dim = 1;
    cloud.points.reserve(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j) cloud.points.push_back({1.0 / static_cast<double>(j), 0.0});
    return cloud;
}

PointCloud cantor_sample(int level) {
    if (level < 0 || level > 24) throw Error(ErrorKind::InvalidArgument, "Cantor level must lie in [0, 24]");
    std::vector<double> xs{0.0};
    double len = 1.0;
    for (int l = 0; l < level; ++l) {
        len /= 3.0;
        std::vector<double> next;
        next.reserve(xs.size() * 2);
        for (double x : xs) {
            next.push_back(x);
            next.push_back(x + 2.0 * len);
        }
        xs = std::move(next);
    }
    return cloud_1d(xs);
}

} // namespace orbital
