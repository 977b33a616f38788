#include "orbital/orbital.hpp"

#include "orbital/dimension.hpp"
#include "orbital/error.hpp"
#include "orbital/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orbital {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Euclidean center and radius of a hyperbolic ball.
std::pair<Complex, double> euclidean_ball(const HyperbolicDisk& d) {
    const double r0 = d.center.abs();
    const Complex dir = r0 > 0.0 ? d.center.value() / r0 : Complex(1.0, 0.0);
    const double d0 = distance_from_origin(r0);
    const double near = radius_at_distance(d0 - d.radius);
    const double far = radius_at_distance(d0 + d.radius);
    return {0.5 * (near + far) * dir, 0.5 * (far - near)};
}

void check_size(double estimate, std::size_t cap) {
    if (estimate > static_cast<double>(cap))
        throw Error(ErrorKind::ExcessiveSampleSize,
                    "seed sample would hold about " + std::to_string(estimate) + " points (cap " +
                        std::to_string(cap) + ")");
}

} // namespace

void validate(const SeedSet& seed) {
    std::visit(overloaded{
                   [](const FinitePoints& f) {
                       if (f.points.empty()) throw Error(ErrorKind::InvalidArgument, "finite seed is empty");
                   },
                   [](const Segment&) {},
                   [](const HyperbolicDisk& d) {
                       if (!(d.radius >= 0.0) || !std::isfinite(d.radius))
                           throw Error(ErrorKind::InvalidArgument, "hyperbolic disk radius must be >= 0");
                   },
                   [](const Theorem2Seed& t) {
                       if (!(t.beta > 0.0 && t.beta < 1.0))
                           throw Error(ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
                       if (t.count && *t.count < 1) throw Error(ErrorKind::InvalidArgument, "seed count must be >= 1");
                   },
               },
               seed);
}

std::optional<double> seed_bounding_radius(const SeedSet& seed) {
    validate(seed);
    return std::visit(overloaded{
                          [](const FinitePoints& f) -> std::optional<double> {
                              double r = 0.0;
                              for (const DiskPoint& p : f.points) r = std::max(r, p.abs());
                              return r;
                          },
                          [](const Segment& s) -> std::optional<double> {
                              return std::max(s.from.abs(), s.to.abs());
                          },
                          [](const HyperbolicDisk& d) -> std::optional<double> {
                              return radius_at_distance(distance_from_origin(d.center.abs()) + d.radius);
                          },
                          [](const Theorem2Seed& t) -> std::optional<double> {
                              if (!t.count) return std::nullopt;
                              return -std::expm1(static_cast<double>(*t.count) * std::log(t.beta));
                          },
                      },
                      seed);
}

PointCloud sample_seed(const SeedSet& seed, double eps, std::size_t cap) {
    validate(seed);
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "sampling pitch must be positive");
    std::vector<Complex> zs;
    std::visit(overloaded{
                   [&](const FinitePoints& f) {
                       check_size(static_cast<double>(f.points.size()), cap);
                       for (const DiskPoint& p : f.points) zs.push_back(p.value());
                   },
                   [&](const Segment& s) {
                       const Complex a = s.from.value();
                       const Complex b = s.to.value();
                       const double len = std::abs(b - a);
                       const double k = std::max(1.0, std::ceil(len / eps - 1e-9));
                       check_size(k + 1.0, cap);
                       const auto steps = static_cast<std::size_t>(k);
                       zs.reserve(steps + 1);
                       for (std::size_t i = 0; i <= steps; ++i) {
                           const double t = static_cast<double>(i) / k;
                           zs.push_back(a + t * (b - a));
                       }
                   },
                   [&](const HyperbolicDisk& d) {
                       const auto [c, rad] = euclidean_ball(d);
                       const double row = eps * std::numbers::sqrt3 / 2.0;
                       const double ring = std::max(8.0, std::ceil(2.0 * std::numbers::pi * rad / (0.5 * eps)));
                       check_size(std::numbers::pi * (rad + eps) * (rad + eps) / (eps * row) + ring, cap);
                       const auto rows = static_cast<long>(std::ceil(rad / row));
                       for (long j = -rows; j <= rows; ++j) {
                           const double y = static_cast<double>(j) * row;
                           const double shift = (j & 1) ? 0.5 * eps : 0.0;
                           const auto cols = static_cast<long>(std::ceil(rad / eps)) + 1;
                           for (long i = -cols; i <= cols; ++i) {
                               const double x = static_cast<double>(i) * eps + shift;
                               if (x * x + y * y <= rad * rad) zs.push_back(c + Complex(x, y));
                           }
                       }
                       if (rad > 0.0) {
                           const auto m = static_cast<long>(ring);
                           for (long i = 0; i < m; ++i)
                               zs.push_back(c + std::polar(rad, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                                                     static_cast<double>(m)));
                       }
                   },
                   [&](const Theorem2Seed& t) {
                       if (!t.count)
                           throw Error(ErrorKind::UnboundedSeedRequiresTruncation,
                                       "the full sequence 1 - beta^n needs a finite count");
                       check_size(static_cast<double>(*t.count), cap);
                       const double lb = std::log(t.beta);
                       for (long n = 1; n <= *t.count; ++n) zs.push_back(-std::expm1(static_cast<double>(n) * lb));
                   },
               },
               seed);
    // Points rounded onto the circle are pulled back inside.
    for (Complex& z : zs) {
        const double r = std::abs(z);
        if (r >= 1.0) z *= std::nextafter(1.0, 0.0) / r;
    }
    PointCloud cloud = cloud_2d(zs);
    return cloud;
}

double image_pitch(double delta_min, double seed_radius, const MobiusMap& g) {
    return delta_min / (distortion_constant(seed_radius) * g.derivative_at_origin());
}

OrbitalCloud build_orbital_cloud(const Enumeration& enumeration, const SeedSet& seed, double delta_min,
                                 double limit_gap, const OrbitalOptions& options) {
    if (!(delta_min > 0.0 && delta_min < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta_min must lie in (0, 1)");
    if (!(options.theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "theta must be positive");
    const std::optional<double> radius = seed_bounding_radius(seed);
    if (!radius)
        throw Error(ErrorKind::UnboundedSeedRequiresTruncation,
                    "orbital clouds need a bounded seed; give the sequence a finite count");

    OrbitalCloud out;
    for (const OrbitRecord& r : enumeration.records) {
        if (classify(r.map) == ElementClass::Hyperbolic) {
            out.has_hyperbolic = true;
            break;
        }
    }
    out.near_gap_cut = out.has_hyperbolic ? options.theta * delta_min : options.theta * delta_min * delta_min;

    std::vector<std::uint32_t> used;
    for (std::size_t i = 0; i < enumeration.records.size(); ++i) {
        const OrbitRecord& r = enumeration.records[i];
        if (r.boundary_gap < out.near_gap_cut) continue;
        used.push_back(static_cast<std::uint32_t>(i));
        if (!r.expanded) out.near_shell_complete = false;
    }
    out.images_used = used.size();

    const bool exact = std::holds_alternative<FinitePoints>(seed) || std::holds_alternative<Theorem2Seed>(seed);
    const double keep = delta_min / 10.0;
    const std::size_t chunk = 64;
    std::vector<PointCloud> parts(parallel::chunk_count(used.size(), chunk));
    parallel::for_chunks(
        used.size(),
        [&](std::size_t c, std::size_t begin, std::size_t end) {
            std::vector<Complex> zs;
            for (std::size_t k = begin; k < end; ++k) {
                const MobiusMap& g = enumeration.records[used[k]].map;
                const double eps = exact ? delta_min : image_pitch(delta_min, *radius, g);
                const PointCloud sample = sample_seed(seed, eps, options.sample_cap);
                for (const Point& p : sample.points) zs.push_back(apply(g, Complex(p[0], p[1])));
            }
            parts[c] = zs.empty() ? PointCloud{} : deduplicate(cloud_2d(zs), keep);
        },
        chunk);

    PointCloud all{2, {}, 0.0};
    for (const PointCloud& p : parts) all.points.insert(all.points.end(), p.points.begin(), p.points.end());
    if (options.include_limit_set) {
        const PointCloud limit = limit_set_sample(enumeration, limit_gap);
        all.points.insert(all.points.end(), limit.points.begin(), limit.points.end());
    }
    out.cloud = all.empty() ? all : deduplicate(std::move(all), keep);
    return out;
}

OrbitalCloud build_orbital_cloud(const GroupSpec& spec, const SeedSet& seed, double delta_min,
                                 const EnumerationBudget& budget, const OrbitalOptions& options) {
    if (!seed_bounding_radius(seed))
        throw Error(ErrorKind::UnboundedSeedRequiresTruncation,
                    "orbital clouds need a bounded seed; give the sequence a finite count");
    return build_orbital_cloud(enumerate_elements(spec, budget), seed, delta_min, budget.min_boundary_gap, options);
}

double theorem2_point(double alpha, double beta, long m, long n) {
    if (!(alpha > 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must exceed 1");
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    const double log_bn = static_cast<double>(n) * std::log(beta);
    const double log_y = static_cast<double>(m) * std::log(alpha) + log_bn;
    const double bn = std::exp(log_bn);
    if (log_y <= 0.0) {
        const double y = std::exp(log_y);
        return (2.0 - y - bn) / (2.0 + y - bn);
    }
    // Divide through by y so huge alpha^m never materializes.
    const double inv = std::exp(-log_y);
    const double bn_y = std::exp(log_bn - log_y);
    return (2.0 * inv - 1.0 - bn_y) / (2.0 * inv + 1.0 - bn_y);
}

long theorem2_default_truncation(double delta, double beta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
    return static_cast<long>(std::ceil(std::log(delta) / std::log(beta))) + 10;
}

} // namespace orbital
