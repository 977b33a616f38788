#include "orbital/error.hpp"
#include "orbital/group.hpp"
#include "orbital/parallel.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

using namespace orbital;

namespace {

// Plain 2x2 complex matrices for the reduced-word oracle.
struct M2 {
    Complex p, q, r, s;
};

M2 mul(const M2& x, const M2& y) {
    return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

M2 from(const MobiusMap& g) { return {g.a(), g.b(), std::conj(g.b()), std::conj(g.a())}; }

double dist0(const M2& m) {
    const double r = std::abs(m.q) / std::abs(m.s);
    return std::log((1.0 + r) / (1.0 - r));
}

// Visits every reduced word of length <= depth over generators and inverses.
void reduced_words(const std::vector<M2>& letters, int depth, const std::function<void(const M2&, int)>& visit) {
    const int n = static_cast<int>(letters.size()) / 2;
    std::function<void(const M2&, int, int)> rec = [&](const M2& m, int last, int len) {
        visit(m, len);
        if (len == depth) return;
        for (int l = 0; l < 2 * n; ++l) {
            if (last >= 0 && l == (last + n) % (2 * n)) continue;
            rec(mul(m, letters[l]), l, len + 1);
        }
    };
    rec({1.0, 0.0, 0.0, 1.0}, -1, 0);
}

std::vector<M2> schottky_letters(double lambda) {
    const GroupSpec s = schottky_group(lambda);
    return {from(s.generators[0]), from(s.generators[1]), from(inverse(s.generators[0])),
            from(inverse(s.generators[1]))};
}

EnumerationBudget depth(int k) {
    EnumerationBudget b;
    b.max_word_length = k;
    return b;
}

} // namespace

TEST(GroupSpec, RejectsIdentityAndDuplicates) {
    EXPECT_THROW(make_group({}), Error);
    EXPECT_THROW(make_group({identity()}), Error);
    EXPECT_THROW(make_group({preset_hyperbolic(2.0), preset_hyperbolic(2.0)}), Error);
    EXPECT_THROW(make_group({preset_hyperbolic(2.0)}, {"a", "b"}), Error);
    const GroupSpec g = make_group({preset_hyperbolic(2.0), preset_parabolic(1.0)});
    EXPECT_EQ(g.labels, (std::vector<std::string>{"g0", "g1"}));
}

TEST(GroupSpec, SchottkyPresetNeedsSeparatedCircles) {
    EXPECT_THROW(schottky_group(4.0), Error);
    EXPECT_THROW(schottky_group(kSchottkyThreshold), Error);
    EXPECT_NO_THROW(schottky_group(6.0));
    const GroupSpec s = schottky_group();
    const auto fa = fixed_points(s.generators[0]);
    const auto fb = fixed_points(s.generators[1]);
    EXPECT_NEAR(std::abs(fa[1] - Complex(1.0, 0.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(std::abs(fb[0].imag()) - 1.0), 0.0, 1e-14);
}

TEST(Budget, Validation) {
    EnumerationBudget b;
    b.min_boundary_gap = 1.0;
    EXPECT_THROW(validate(b), Error);
    b = {};
    b.max_word_length = -1;
    EXPECT_THROW(validate(b), Error);
    b = {};
    b.max_elements = 0;
    EXPECT_THROW(validate(b), Error);
    EXPECT_NO_THROW(validate(EnumerationBudget{}));
}

TEST(Enumerate, CyclicHyperbolicDepthFour) {
    EnumerationBudget b = depth(4);
    b.min_boundary_gap = 1e-12;
    const Enumeration en = enumerate_elements(cyclic_group(preset_hyperbolic(2.0)), b);
    ASSERT_EQ(en.records.size(), 9u);
    std::vector<double> dists;
    for (const auto& r : en.records) dists.push_back(r.dist);
    std::sort(dists.begin(), dists.end());
    for (int m = 0; m <= 4; ++m) {
        const auto c = std::count_if(dists.begin(), dists.end(),
                                     [&](double d) { return std::abs(d - m * std::log(2.0)) < 1e-12; });
        EXPECT_EQ(c, m == 0 ? 1 : 2);
    }
    EXPECT_FALSE(en.truncated);
}

TEST(Enumerate, SchottkyDepthThreeHas53Elements) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(3));
    EXPECT_EQ(en.records.size(), 53u);
}

TEST(Enumerate, SchottkyShellsMatchReducedWordCount) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(6));
    std::vector<std::size_t> oracle(7, 0);
    reduced_words(schottky_letters(kDefaultSchottkyLambda), 6, [&](const M2&, int len) { ++oracle[len]; });
    const auto shells = en.shell_sizes();
    ASSERT_EQ(shells.size(), 7u);
    for (int k = 0; k <= 6; ++k) {
        EXPECT_EQ(shells[k], oracle[k]);
        EXPECT_EQ(shells[k], k == 0 ? 1u : static_cast<std::size_t>(4 * std::pow(3, k - 1)));
    }
}

TEST(Enumerate, ListingInverseAsGeneratorCollapses) {
    const MobiusMap h = preset_hyperbolic(2.0);
    EnumerationBudget b = depth(5);
    const Enumeration one = enumerate_elements(cyclic_group(h), b);
    const Enumeration two = enumerate_elements(make_group({h, inverse(h)}), b);
    ASSERT_EQ(one.records.size(), two.records.size());
    auto key = [](const Enumeration& en) {
        std::vector<double> v;
        for (const auto& r : en.records) v.push_back(std::round(r.base_image.real() * 1e12));
        std::sort(v.begin(), v.end());
        return v;
    };
    EXPECT_EQ(key(one), key(two));
}

TEST(Enumerate, OrderedByLengthThenWord) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(4));
    for (std::size_t i = 1; i < en.records.size(); ++i) {
        const auto w0 = en.word(i - 1), w1 = en.word(i);
        ASSERT_TRUE(w0.size() < w1.size() || (w0.size() == w1.size() && w0 < w1)) << i;
    }
}

TEST(Enumerate, FiniteGroupTerminates) {
    const Enumeration en = enumerate_elements(cyclic_group(preset_rotation(2.0 * std::numbers::pi / 5.0)), depth(50));
    EXPECT_EQ(en.records.size(), 5u);
    EXPECT_TRUE(std::isinf(en.frontier_min_distance()));
}

TEST(Enumerate, TruncationIsFlagged) {
    EnumerationBudget b = depth(8);
    b.max_elements = 100;
    const Enumeration en = enumerate_elements(schottky_group(), b);
    EXPECT_TRUE(en.truncated);
    EXPECT_EQ(en.records.size(), 100u);
    // 1 + 4 + 12 + 36 = 53 complete; the length-3 parents stay on the frontier.
    EXPECT_LT(en.frontier_min_distance(), 3.0 * std::log(kDefaultSchottkyLambda) + 1e-9);
    EXPECT_THROW(orbit_counting(en, 8.0), Error);
}

TEST(Enumerate, GapStopsExpansion) {
    EnumerationBudget b = depth(100);
    b.min_boundary_gap = 1e-6;
    const Enumeration en = enumerate_elements(cyclic_group(preset_hyperbolic(2.0)), b);
    for (const auto& r : en.records) {
        if (r.expanded) {
            EXPECT_GE(r.boundary_gap, 1e-6);
        }
    }
    EXPECT_LT(en.records.size(), 60u);
}

TEST(Enumerate, WordsReproduceMatrices) {
    const GroupSpec s = schottky_group();
    const Enumeration en = enumerate_elements(s, depth(7));
    for (std::size_t i = 0; i < en.records.size(); ++i) {
        const auto w = en.word(i);
        const MobiusMap g = word_to_map(s, w);
        const double scale = std::max(1.0, std::abs(g.a()));
        ASSERT_LT(entry_distance(g, en.records[i].map), 1e-10 * scale) << word_to_string(s, w);
    }
}

TEST(Enumerate, RecordInvariants) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(5));
    for (const auto& r : en.records) {
        const double rad = std::abs(r.base_image);
        EXPECT_NEAR(r.deriv0, 1.0 - rad * rad, 1e-12);
        EXPECT_NEAR(std::exp(-r.dist), (1.0 - rad) / (1.0 + rad), 1e-10);
    }
}

TEST(Enumerate, WordStrings) {
    const GroupSpec s = schottky_group();
    const std::vector<std::int32_t> w{0, 3, 1};
    EXPECT_EQ(word_to_string(s, w), "a.b^-1.b");
    EXPECT_EQ(word_to_string(s, {}), "e");
}

TEST(Enumerate, IndependentOfThreadCount) {
    const GroupSpec s = schottky_group();
    parallel::set_threads(1);
    const Enumeration one = enumerate_elements(s, depth(8));
    parallel::set_threads(8);
    const Enumeration eight = enumerate_elements(s, depth(8));
    parallel::set_threads(0);
    ASSERT_EQ(one.records.size(), eight.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        ASSERT_EQ(one.records[i].map, eight.records[i].map);
        ASSERT_EQ(one.records[i].parent, eight.records[i].parent);
        ASSERT_EQ(one.records[i].letter, eight.records[i].letter);
    }
}

TEST(OrbitPoints, ParabolicModuli) {
    const PointCloud pts = orbit_points(cyclic_group(preset_parabolic(2.0)), DiskPoint(), depth(3));
    ASSERT_EQ(pts.size(), 7u);
    std::vector<double> radii;
    for (const auto& p : pts.points) radii.push_back(std::hypot(p[0], p[1]));
    std::sort(radii.begin(), radii.end());
    const double expected[] = {0.0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 2 / std::sqrt(5.0),
                               2 / std::sqrt(5.0), 3 / std::sqrt(10.0), 3 / std::sqrt(10.0)};
    for (int i = 0; i < 7; ++i) EXPECT_NEAR(radii[i], expected[i], 1e-15);
}

TEST(OrbitPoints, DepthZeroIsTheBasePoint) {
    const PointCloud pts = orbit_points(schottky_group(), DiskPoint(0.2, 0.3), depth(0));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts.points[0][0], 0.2);
    EXPECT_EQ(pts.points[0][1], 0.3);
}

TEST(OrbitPoints, CyclicHyperbolicClosedForm) {
    const int k = 10;
    const PointCloud pts = orbit_points(cyclic_group(preset_hyperbolic(2.0)), DiskPoint(), depth(k));
    ASSERT_EQ(pts.size(), 2u * k + 1);
    std::vector<double> xs;
    for (const auto& p : pts.points) {
        EXPECT_EQ(p[1], 0.0);
        xs.push_back(p[0]);
    }
    std::sort(xs.begin(), xs.end());
    for (int m = -k; m <= k; ++m) {
        const double t = std::ldexp(1.0, m);
        EXPECT_NEAR(xs[m + k], (t - 1.0) / (t + 1.0), 1e-15);
    }
}

TEST(OrbitCounting, CyclicHyperbolic) {
    EXPECT_EQ(orbit_counting(cyclic_group(preset_hyperbolic(2.0)), 3.0, depth(20)), 9u);
}

TEST(OrbitCounting, SmallRadiusCountsIdentityOnly) {
    EXPECT_EQ(orbit_counting(schottky_group(), 1e-9, depth(2)), 1u);
    EXPECT_EQ(orbit_counting(cyclic_group(preset_parabolic(2.0)), 1e-9, depth(2)), 1u);
}

TEST(OrbitCounting, SchottkyMatchesReducedWordOracle) {
    const double R = 8.0;
    std::size_t oracle = 0;
    double deepest = std::numeric_limits<double>::infinity();
    reduced_words(schottky_letters(kDefaultSchottkyLambda), 8, [&](const M2& m, int len) {
        const double d = dist0(m);
        if (d <= R) ++oracle;
        if (len == 8) deepest = std::min(deepest, d);
    });
    ASSERT_GT(deepest, R);
    EXPECT_EQ(orbit_counting(schottky_group(), R, depth(8)), oracle);
}

TEST(OrbitCounting, IncompleteEnumerationThrows) {
    try {
        orbit_counting(cyclic_group(preset_hyperbolic(2.0)), 10.0, depth(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteEnumeration);
    }
}

TEST(OrbitCounting, MonotoneInRadius) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(8));
    std::size_t prev = 0;
    for (double R = 0.5; R < en.frontier_min_distance(); R += 0.5) {
        const std::size_t n = orbit_counting(en, R);
        EXPECT_GE(n, prev);
        prev = n;
    }
}

TEST(Poincare, ExponentZeroCountsElements) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(4));
    const PoincareSum ps = poincare_partial_sum(en, 0.0);
    EXPECT_DOUBLE_EQ(ps.total, static_cast<double>(en.records.size()));
    ASSERT_EQ(ps.shell_sums.size(), 5u);
    EXPECT_DOUBLE_EQ(ps.shell_sums[4], 108.0);
}

TEST(Poincare, ParabolicExponentOneClosedForm) {
    // exp(-d(0, p^n(0))) = (sqrt(1+n^2) - n)^2 for tau = 2, each n counted for p^n and p^-n.
    const int N = 200;
    double oracle = 1.0;
    for (int n = 1; n <= N; ++n) oracle += 2.0 * std::pow(std::sqrt(1.0 + n * n) - n, 2);
    const PoincareSum ps = poincare_partial_sum(cyclic_group(preset_parabolic(2.0)), 1.0, depth(N));
    EXPECT_LT(std::abs(ps.total - oracle) / oracle, 1e-12);
    for (int n = 1; n <= N; ++n)
        EXPECT_NEAR(ps.shell_sums[n], 2.0 * std::pow(std::sqrt(1.0 + n * n) - n, 2), 1e-15);
}

TEST(Poincare, ParabolicDivergesBelowOneHalf) {
    const GroupSpec p = cyclic_group(preset_parabolic(2.0));
    const Enumeration en = enumerate_elements(p, depth(20000));
    const std::vector<double> shells = distance_shell_sums(en, 0.4, 2.0, 20.0);
    // Distance shells grow like exp((1/2 - s) j).
    for (std::size_t j = 4; j < shells.size(); ++j) EXPECT_GT(shells[j], shells[j - 4]);
    const double small = poincare_partial_sum(enumerate_elements(p, depth(2000)), 0.4).total;
    const double large = poincare_partial_sum(en, 0.4).total;
    EXPECT_GT(large, 1.5 * small);
}

TEST(Poincare, SummandMatchesExponentialForm) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(4));
    for (const auto& r : en.records) {
        const double rad = std::abs(r.base_image);
        EXPECT_NEAR(std::pow((1.0 - rad) / (1.0 + rad), 0.7), std::exp(-0.7 * r.dist), 1e-10);
    }
}

TEST(Poincare, NonIncreasingInExponent) {
    const Enumeration en = enumerate_elements(schottky_group(), depth(6));
    double prev = std::numeric_limits<double>::infinity();
    for (double s = 0.0; s <= 2.0; s += 0.1) {
        const double t = poincare_partial_sum(en, s).total;
        EXPECT_LE(t, prev);
        prev = t;
    }
}
