#include "orbital/dimension.hpp"
#include "orbital/error.hpp"
#include "orbital/group.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace orbital;

namespace {

// Occupied cells of {1/j : j <= n} at scale delta, walking cells instead of points:
// cell c holds some 1/j exactly when an integer j lies in (1/((c+1) delta), 1/(c delta)].
std::size_t inverse_integer_cells(long n, double delta) {
    std::size_t cells = 0;
    const auto top = static_cast<long>(std::floor(1.0 / delta));
    for (long c = 0; c <= top; ++c) {
        const double jmax = c == 0 ? static_cast<double>(n) : std::min<double>(n, std::floor(1.0 / (c * delta)));
        const double jmin = std::floor(1.0 / ((c + 1) * delta)) + 1.0;
        if (jmin <= jmax) ++cells;
    }
    return cells;
}

PointCloud random_cloud(std::mt19937_64& rng, int dim, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointCloud c;
    c.ambient_dim = dim;
    for (std::size_t i = 0; i < n; ++i) c.points.push_back({u(rng), dim == 2 ? u(rng) : 0.0});
    return c;
}

EnumerationBudget depth(int k, std::size_t max_elements = 1'000'000) {
    EnumerationBudget b;
    b.max_word_length = k;
    b.max_elements = max_elements;
    return b;
}

const Enumeration& schottky_depth12() {
    static const Enumeration en = enumerate_elements(schottky_group(), depth(12, 2'000'000));
    return en;
}

} // namespace

TEST(BoxCount, SmallExamples) {
    const std::vector<double> xs{0.0, 0.3, 0.6};
    const PointCloud c = cloud_1d(xs);
    EXPECT_EQ(box_count(c, 0.25), 3u);
    EXPECT_EQ(box_count(c, 0.5), 2u);
    const std::vector<double> one{0.123};
    for (double d : {1e-9, 1e-3, 0.5, 10.0}) EXPECT_EQ(box_count(cloud_1d(one), d), 1u);
}

TEST(BoxCount, NegativeCoordinatesUseFloor) {
    const std::vector<double> xs{-0.1, 0.1};
    EXPECT_EQ(box_count(cloud_1d(xs), 1.0), 2u);
}

TEST(BoxCount, Errors) {
    EXPECT_THROW(box_count(PointCloud{}, 0.1), Error);
    const std::vector<double> xs{0.0};
    EXPECT_THROW(box_count(cloud_1d(xs), 0.0), Error);
}

TEST(BoxCount, InverseIntegersMatchCellWalk) {
    const PointCloud c = inverse_integers(100000);
    for (double d : ScaleLadder{}.scales()) EXPECT_EQ(box_count(c, d), inverse_integer_cells(100000, d)) << d;
}

TEST(BoxCount, IndependentOfChunking) {
    std::mt19937_64 rng(11);
    const PointCloud c = random_cloud(rng, 2, 300000);
    std::set<std::pair<long, long>> cells;
    for (const auto& p : c.points)
        cells.emplace(static_cast<long>(std::floor(p[0] / 0.01)), static_cast<long>(std::floor(p[1] / 0.01)));
    EXPECT_EQ(box_count(c, 0.01), cells.size());
}

TEST(Ladder, Scales) {
    const auto s = ScaleLadder{}.scales();
    ASSERT_EQ(s.size(), 11u);
    EXPECT_EQ(s.front(), 0x1p-4);
    EXPECT_EQ(s.back(), 0x1p-14);
    try {
        (void)ScaleLadder{0.1, 0.02, 2.0}.scales();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientScales);
    }
    EXPECT_THROW((void)ScaleLadder({0.1, 0.2, 2.0}).scales(), Error);
    EXPECT_THROW((void)ScaleLadder({0.1, 0.001, 1.0}).scales(), Error);
}

TEST(Dimension, InverseIntegersNearOneHalf) {
    const BoxCountReport r = dimension_estimate(inverse_integers(100000), ScaleLadder{});
    EXPECT_NEAR(r.ls_slope, 0.5, 0.05);
    // Frozen from the cell-walk oracle.
    std::vector<std::size_t> oracle;
    for (double d : r.scales) oracle.push_back(inverse_integer_cells(100000, d));
    EXPECT_EQ(r.counts, oracle);
    EXPECT_NEAR(r.ls_slope, 0.502059091, 1e-8);
}

TEST(Dimension, UniformGridIsOne) {
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) xs.push_back((i + 0.5) / 10000.0);
    const BoxCountReport r = dimension_estimate(cloud_1d(xs), ScaleLadder{0x1p-2, 0x1p-8, 2.0});
    EXPECT_NEAR(r.ls_slope, 1.0, 0.05);
    EXPECT_NEAR(r.max_pair_slope, 1.0, 0.05);
}

TEST(Dimension, SinglePointIsZero) {
    const std::vector<double> xs{0.3};
    const BoxCountReport r = dimension_estimate(cloud_1d(xs), ScaleLadder{});
    EXPECT_EQ(r.ls_slope, 0.0);
    EXPECT_EQ(r.max_pair_slope, 0.0);
    EXPECT_EQ(r.residual, 0.0);
}

TEST(Dimension, CantorCalibration) {
    const BoxCountReport r = dimension_estimate(cantor_sample(12), ScaleLadder{});
    EXPECT_NEAR(r.ls_slope, std::log(2.0) / std::log(3.0), 0.03);
}

TEST(Dimension, EmptyCloudThrows) {
    EXPECT_THROW(dimension_estimate(PointCloud{}, ScaleLadder{}), Error);
}

TEST(Dimension, FitCountsValidation) {
    EXPECT_THROW(fit_counts({0.1, 0.05, 0.025}, {1, 2, 3}), Error);
    EXPECT_THROW(fit_counts({0.1, 0.05, 0.025, 0.0125}, {1, 2, 3}), Error);
    const BoxCountReport r = fit_counts({0.1, 0.05, 0.025, 0.0125}, {1, 2, 4, 8});
    EXPECT_NEAR(r.ls_slope, 1.0, 1e-12);
    EXPECT_NEAR(r.min_tail_slope, 1.0, 1e-12);
}

TEST(Property, GridCountSandwich) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ud(1e-3, 0.2);
    for (int t = 0; t < 200; ++t) {
        const int dim = 1 + t % 2;
        const PointCloud c = random_cloud(rng, dim, 50 + t * 10);
        const double d = ud(rng);
        const std::size_t fine = box_count(c, d), coarse = box_count(c, 2.0 * d);
        EXPECT_LE(coarse, fine);
        EXPECT_LE(fine, static_cast<std::size_t>(std::pow(6.0, dim)) * coarse);
    }
}

TEST(Property, TranslationRobustness) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> shift(-0.5, 0.5), ud(1e-3, 0.2);
    for (int t = 0; t < 200; ++t) {
        const int dim = 1 + t % 2;
        PointCloud c = random_cloud(rng, dim, 20 + t * 5);
        const double d = ud(rng);
        const double before = std::log2(static_cast<double>(box_count(c, d)));
        const double sx = shift(rng), sy = dim == 2 ? shift(rng) : 0.0;
        for (auto& p : c.points) {
            p[0] += sx;
            p[1] += sy;
        }
        const double after = std::log2(static_cast<double>(box_count(c, d)));
        EXPECT_LE(std::abs(after - before), dim + 1e-12);
    }
}

TEST(Property, SlopeBoundsAndMonotoneCounts) {
    std::mt19937_64 rng(23);
    std::vector<PointCloud> clouds{inverse_integers(50000), cantor_sample(10), inverted_lattice(2, 200),
                                   random_cloud(rng, 2, 100000), random_cloud(rng, 1, 5000)};
    for (const PointCloud& c : clouds) {
        const BoxCountReport r = dimension_estimate(c, ScaleLadder{});
        EXPECT_GE(r.ls_slope, 0.0);
        EXPECT_LE(r.ls_slope, c.ambient_dim + 0.1);
        EXPECT_LE(r.max_pair_slope, c.ambient_dim + 0.1);
        for (std::size_t i = 1; i < r.counts.size(); ++i) EXPECT_GE(r.counts[i], r.counts[i - 1]);
    }
}

TEST(Poincare, CyclicHyperbolicIsNearZero) {
    const PoincareEstimate e = poincare_exponent_estimate(cyclic_group(preset_hyperbolic(2.0)), depth(200));
    EXPECT_LE(e.growth_slope, 0.05);
    EXPECT_GE(e.growth_slope, 0.0);
    EXPECT_LE(e.series_cliff, 0.05);
    EXPECT_NEAR(e.growth_slope, 0.012667, 1e-5);
}

TEST(Poincare, CyclicParabolicIsOneHalf) {
    const PoincareEstimate e = poincare_exponent_estimate(cyclic_group(preset_parabolic(2.0)), depth(100000));
    EXPECT_NEAR(e.growth_slope, 0.5, 0.05);
    EXPECT_NEAR(e.series_cliff, 0.5, 0.05);
    EXPECT_GE(e.window.hi, e.window.lo + 3.0);
}

TEST(Poincare, SchottkyEstimatorsAgree) {
    const PoincareEstimate e = poincare_exponent_estimate(schottky_depth12());
    EXPECT_GT(e.growth_slope, 0.0);
    EXPECT_LT(e.growth_slope, 1.0);
    EXPECT_NEAR(e.growth_slope, e.series_cliff, 0.05);
}

TEST(Poincare, WindowChecks) {
    const Enumeration en = enumerate_elements(cyclic_group(preset_parabolic(2.0)), depth(1000));
    try {
        poincare_exponent_estimate(en, PoincareWindow{1.0, 50.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteEnumeration);
    }
    EXPECT_THROW(poincare_exponent_estimate(en, PoincareWindow{2.0, 3.0}), Error);
    const PoincareEstimate e = poincare_exponent_estimate(en, PoincareWindow{2.0, 10.0});
    EXPECT_EQ(e.window.lo, 2.0);
    EXPECT_EQ(e.window.hi, 10.0);
    try {
        poincare_exponent_estimate(cyclic_group(preset_hyperbolic(2.0)), depth(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteEnumeration);
    }
}

TEST(LimitSet, CyclicHyperbolicIsTwoPoints) {
    const PointCloud c = limit_set_sample(cyclic_group(preset_hyperbolic(2.0)), depth(20));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_NEAR(c.points[0][0], -1.0, 1e-12);
    EXPECT_NEAR(c.points[1][0], 1.0, 1e-12);
}

TEST(LimitSet, CyclicParabolicIsOnePoint) {
    const PointCloud c = limit_set_sample(cyclic_group(preset_parabolic(2.0)), depth(20));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c.points[0][0], 1.0, 1e-12);
    EXPECT_NEAR(c.points[0][1], 0.0, 1e-12);
}

TEST(LimitSet, PointsLieOnTheCircle) {
    const PointCloud c = limit_set_sample(schottky_group(), depth(6));
    for (const auto& p : c.points) EXPECT_NEAR(std::hypot(p[0], p[1]), 1.0, 1e-12);
}

TEST(LimitSet, SchottkyDimensionMatchesGrowth) {
    EnumerationBudget b = depth(10);
    const PointCloud ls = limit_set_sample(schottky_group(), b);
    const double dim_ls = dimension_estimate(ls, ScaleLadder{}).ls_slope;
    const double growth = poincare_exponent_estimate(schottky_depth12()).growth_slope;
    EXPECT_NEAR(dim_ls, growth, 0.07);
}

TEST(InvertedLattice, SmallExample) {
    const PointCloud c = inverted_lattice(1, 5);
    ASSERT_EQ(c.size(), 10u);
    std::vector<double> xs;
    for (const auto& p : c.points) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    const std::vector<double> expected{-1.0, -1.0 / 2, -1.0 / 3, -1.0 / 4, -1.0 / 5,
                                       1.0 / 5,  1.0 / 4,  1.0 / 3,  1.0 / 2,  1.0};
    std::vector<double> sorted = expected;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(xs, sorted);
}

TEST(InvertedLattice, TwoDimensionalCount) {
    // Lattice points with 0 < |x| <= 3: 28.
    EXPECT_EQ(inverted_lattice(2, 3).size(), 28u);
    EXPECT_THROW(inverted_lattice(3, 3), Error);
    EXPECT_THROW(inverted_lattice(1, 0), Error);
}

TEST(InvertedLattice, DimensionIsHalfTheRank) {
    EXPECT_NEAR(dimension_estimate(inverted_lattice(1, 100000), ScaleLadder{}).ls_slope, 0.5, 0.05);
    EXPECT_NEAR(dimension_estimate(inverted_lattice(2, 500), ScaleLadder{}).ls_slope, 1.0, 0.07);
}

TEST(Cantor, Construction) {
    const PointCloud c = cantor_sample(2);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_NEAR(c.points[1][0], 2.0 / 9.0, 1e-15);
    EXPECT_NEAR(c.points[3][0], 8.0 / 9.0, 1e-15);
    EXPECT_THROW(cantor_sample(25), Error);
}
