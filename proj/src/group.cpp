#include "orbital/group.hpp"

#include "orbital/error.hpp"
#include "orbital/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace orbital {

namespace {

constexpr double kDedupTolerance = 1e-9;

bool same_element(const MobiusMap& g, const MobiusMap& h) noexcept {
    return entry_distance(g, h) <= kDedupTolerance * std::max(1.0, std::abs(g.a()));
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    return h;
}

// Tolerance index over canonical matrices. Entries are quantized on a grid
// whose step scales with |a| (bucketed by binary exponent), so the relative
// dedup tolerance maps onto a bounded number of neighbouring cells.
class ElementIndex {
public:
    explicit ElementIndex(const std::vector<OrbitRecord>& records) : records_(records) {}

    std::uint32_t find(const MobiusMap& g) const {
        std::uint32_t hit = kNoParent;
        visit_candidates(g, [&](std::uint32_t idx) {
            if (hit == kNoParent && same_element(records_[idx].map, g)) hit = idx;
        });
        return hit;
    }

    void insert(std::uint32_t idx) {
        const MobiusMap& g = records_[idx].map;
        const int e = exponent(g);
        const Cell c = cell(g.a(), g.b(), e);
        const std::uint64_t key = hash(e, c.q);
        if (next_.size() <= idx) next_.resize(idx + 1, kNoParent);
        auto [it, inserted] = heads_.try_emplace(key, idx);
        if (!inserted) {
            next_[idx] = it->second;
            it->second = idx;
        }
    }

private:
    static constexpr double kStep = 0x1p-20;

    struct Cell {
        std::int64_t q[4];
        bool upper[4];
    };

    static int exponent(const MobiusMap& g) noexcept { return std::ilogb(std::max(1.0, std::abs(g.a()))); }

    static Cell cell(Complex a, Complex b, int e) noexcept {
        const double step = std::ldexp(kStep, e);
        const double xs[4] = {a.real(), a.imag(), b.real(), b.imag()};
        Cell c{};
        for (int i = 0; i < 4; ++i) {
            const double t = xs[i] / step;
            const double f = std::floor(t);
            c.q[i] = static_cast<std::int64_t>(f);
            c.upper[i] = (t - f) >= 0.5;
        }
        return c;
    }

    static std::uint64_t hash(int e, const std::int64_t (&q)[4]) noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(e) * 0x100000001b3ULL;
        for (std::int64_t v : q) h = mix(h, static_cast<std::uint64_t>(v));
        return h;
    }

    template <typename F>
    void visit_cells(Complex a, Complex b, int e, F&& f) const {
        const Cell c = cell(a, b, e);
        for (int mask = 0; mask < 16; ++mask) {
            std::int64_t q[4];
            for (int i = 0; i < 4; ++i) q[i] = c.q[i] + (((mask >> i) & 1) ? (c.upper[i] ? 1 : -1) : 0);
            auto it = heads_.find(hash(e, q));
            if (it == heads_.end()) continue;
            for (std::uint32_t idx = it->second; idx != kNoParent; idx = next_[idx]) f(idx);
        }
    }

    template <typename F>
    void visit_candidates(const MobiusMap& g, F&& f) const {
        const double mod = std::max(1.0, std::abs(g.a()));
        const int e = exponent(g);
        int exps[3] = {e, e, e};
        int n = 1;
        const double frac = mod / std::ldexp(1.0, e);
        if (frac < 1.0 + 1e-7 && e > 0) exps[n++] = e - 1;
        if (frac > 2.0 - 1e-7) exps[n++] = e + 1;
        const bool near_axis = std::abs(g.a().real()) <= 1e-7 * mod;
        for (int k = 0; k < n; ++k) {
            visit_cells(g.a(), g.b(), exps[k], f);
            if (near_axis) visit_cells(-g.a(), -g.b(), exps[k], f);
        }
    }

    const std::vector<OrbitRecord>& records_;
    std::unordered_map<std::uint64_t, std::uint32_t> heads_;
    std::vector<std::uint32_t> next_;
};

OrbitRecord make_record(const MobiusMap& g, std::uint32_t parent, std::int32_t letter, std::int32_t length) {
    OrbitRecord r;
    r.map = g;
    r.base_image = g.b() / std::conj(g.a());
    r.dist = g.base_distance();
    r.deriv0 = g.derivative_at_origin();
    r.boundary_gap = g.boundary_gap();
    r.parent = parent;
    r.letter = letter;
    r.length = length;
    return r;
}

} // namespace

GroupSpec make_group(std::vector<MobiusMap> generators, std::vector<std::string> labels) {
    if (generators.empty()) throw Error(ErrorKind::InvalidGroup, "a group needs at least one generator");
    if (!labels.empty() && labels.size() != generators.size())
        throw Error(ErrorKind::InvalidGroup, "one label per generator expected");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (is_identity(generators[i]))
            throw Error(ErrorKind::InvalidGroup, "generator " + std::to_string(i) + " is the identity");
        for (std::size_t j = 0; j < i; ++j) {
            if (same_element(generators[i], generators[j]))
                throw Error(ErrorKind::InvalidGroup,
                            "generators " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
        }
    }
    if (labels.empty()) {
        for (std::size_t i = 0; i < generators.size(); ++i) labels.push_back("g" + std::to_string(i));
    }
    return GroupSpec{std::move(generators), std::move(labels)};
}

GroupSpec cyclic_group(const MobiusMap& generator, std::string label) {
    return make_group({generator}, {std::move(label)});
}

GroupSpec schottky_group(double lambda) {
    if (!(lambda > kSchottkyThreshold))
        throw Error(ErrorKind::InvalidArgument,
                    "Schottky preset needs lambda > 3 + 2*sqrt(2) for disjoint isometric circles");
    const MobiusMap h = preset_hyperbolic(lambda);
    const MobiusMap quarter = preset_rotation(std::numbers::pi / 2.0);
    const MobiusMap k = quarter * h * inverse(quarter);
    return make_group({h, k}, {"a", "b"});
}

void validate(const EnumerationBudget& budget) {
    if (budget.max_word_length < 0) throw Error(ErrorKind::InvalidBudget, "max_word_length must be >= 0");
    if (budget.max_elements == 0) throw Error(ErrorKind::InvalidBudget, "max_elements must be positive");
    if (budget.max_elements > kNoParent) throw Error(ErrorKind::InvalidBudget, "max_elements too large");
    if (!(budget.min_boundary_gap > 0.0 && budget.min_boundary_gap < 1.0))
        throw Error(ErrorKind::InvalidBudget, "min_boundary_gap must lie in (0, 1)");
}

MobiusMap letter_map(const GroupSpec& spec, std::int32_t letter) {
    const auto n = static_cast<std::int32_t>(spec.generators.size());
    if (letter < 0 || letter >= 2 * n) throw Error(ErrorKind::InvalidArgument, "letter out of range");
    return letter < n ? spec.generators[letter] : inverse(spec.generators[letter - n]);
}

MobiusMap word_to_map(const GroupSpec& spec, std::span<const std::int32_t> word) {
    MobiusMap g = identity();
    for (std::int32_t l : word) g = g * letter_map(spec, l);
    return g;
}

std::string word_to_string(const GroupSpec& spec, std::span<const std::int32_t> word) {
    if (word.empty()) return "e";
    const auto n = static_cast<std::int32_t>(spec.generators.size());
    std::string out;
    for (std::int32_t l : word) {
        if (!out.empty()) out += '.';
        out += l < n ? spec.labels[l] : spec.labels[l - n] + "^-1";
    }
    return out;
}

std::vector<std::int32_t> Enumeration::word(std::size_t index) const {
    std::vector<std::int32_t> w;
    for (std::uint32_t i = static_cast<std::uint32_t>(index); records[i].parent != kNoParent; i = records[i].parent)
        w.push_back(records[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
}

double Enumeration::frontier_min_distance() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (const OrbitRecord& r : records)
        if (!r.expanded) m = std::min(m, r.dist);
    return m;
}

std::vector<std::size_t> Enumeration::shell_sizes() const {
    std::vector<std::size_t> sizes;
    for (const OrbitRecord& r : records) {
        if (sizes.size() <= static_cast<std::size_t>(r.length)) sizes.resize(r.length + 1, 0);
        ++sizes[r.length];
    }
    return sizes;
}

Enumeration enumerate_elements(const GroupSpec& spec, const EnumerationBudget& budget) {
    validate(budget);
    const auto n = static_cast<std::int32_t>(spec.generators.size());
    if (n == 0) throw Error(ErrorKind::InvalidGroup, "a group needs at least one generator");
    std::vector<MobiusMap> letters;
    for (std::int32_t l = 0; l < 2 * n; ++l) letters.push_back(letter_map(spec, l));

    Enumeration out;
    out.generator_count = static_cast<std::size_t>(n);
    out.records.push_back(make_record(identity(), kNoParent, -1, 0));
    ElementIndex index(out.records);
    index.insert(0);

    struct Candidate {
        MobiusMap map;
        std::uint32_t parent;
        std::int32_t letter;
    };

    std::size_t level_begin = 0;
    std::size_t level_end = 1;
    for (int length = 1; length <= budget.max_word_length && level_begin < level_end; ++length) {
        std::vector<std::uint32_t> parents;
        for (std::size_t i = level_begin; i < level_end; ++i)
            if (out.records[i].boundary_gap >= budget.min_boundary_gap) parents.push_back(static_cast<std::uint32_t>(i));

        const std::size_t chunk = 1024;
        std::vector<std::vector<Candidate>> per_chunk(parallel::chunk_count(parents.size(), chunk));
        parallel::for_chunks(
            parents.size(),
            [&](std::size_t c, std::size_t begin, std::size_t end) {
                auto& local = per_chunk[c];
                local.reserve((end - begin) * letters.size());
                for (std::size_t p = begin; p < end; ++p) {
                    const OrbitRecord& parent = out.records[parents[p]];
                    for (std::int32_t l = 0; l < 2 * n; ++l) {
                        // g s s^-1 = g is already known one level up.
                        if (parent.letter >= 0 && l == (parent.letter + n) % (2 * n)) continue;
                        local.push_back({parent.map * letters[l], parents[p], l});
                    }
                }
            },
            chunk);

        for (std::uint32_t p : parents) out.records[p].expanded = true;

        bool full = false;
        for (const auto& local : per_chunk) {
            for (const Candidate& cand : local) {
                if (index.find(cand.map) != kNoParent) continue;
                if (out.records.size() >= budget.max_elements) {
                    full = true;
                    break;
                }
                out.records.push_back(make_record(cand.map, cand.parent, cand.letter, length));
                index.insert(static_cast<std::uint32_t>(out.records.size() - 1));
            }
            if (full) break;
        }
        if (full) {
            // Some children of this level's parents are missing.
            out.truncated = true;
            for (std::uint32_t p : parents) out.records[p].expanded = false;
            break;
        }
        level_begin = level_end;
        level_end = out.records.size();
    }
    return out;
}

PointCloud orbit_points(const Enumeration& enumeration, const DiskPoint& z0) {
    std::vector<Complex> zs;
    zs.reserve(enumeration.records.size());
    for (const OrbitRecord& r : enumeration.records) zs.push_back(apply(r.map, z0.value()));
    return deduplicate(cloud_2d(zs), 1e-12);
}

PointCloud orbit_points(const GroupSpec& spec, const DiskPoint& z0, const EnumerationBudget& budget) {
    return orbit_points(enumerate_elements(spec, budget), z0);
}

std::size_t orbit_counting(const Enumeration& enumeration, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "orbit counting radius must be positive");
    const double frontier = enumeration.frontier_min_distance();
    if (!(frontier > radius))
        throw Error(ErrorKind::IncompleteEnumeration,
                    "frontier element at distance " + std::to_string(frontier) + " does not exceed R = " +
                        std::to_string(radius));
    return static_cast<std::size_t>(std::count_if(enumeration.records.begin(), enumeration.records.end(),
                                                  [&](const OrbitRecord& r) { return r.dist <= radius; }));
}

std::size_t orbit_counting(const GroupSpec& spec, double radius, const EnumerationBudget& budget) {
    return orbit_counting(enumerate_elements(spec, budget), radius);
}

PoincareSum poincare_partial_sum(const Enumeration& enumeration, double s) {
    if (!(s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Poincare exponent must be >= 0");
    PoincareSum out;
    out.exponent = s;
    for (const OrbitRecord& r : enumeration.records) {
        if (out.shell_sums.size() <= static_cast<std::size_t>(r.length)) out.shell_sums.resize(r.length + 1, 0.0);
        const double term = std::exp(-s * r.dist);
        out.shell_sums[r.length] += term;
    }
    for (double v : out.shell_sums) out.total += v;
    return out;
}

PoincareSum poincare_partial_sum(const GroupSpec& spec, double s, const EnumerationBudget& budget) {
    return poincare_partial_sum(enumerate_elements(spec, budget), s);
}

std::vector<double> distance_shell_sums(const Enumeration& enumeration, double s, double lo, double hi,
                                        double width) {
    if (!(hi > lo) || !(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "invalid distance shell range");
    const auto shells = static_cast<std::size_t>(std::floor((hi - lo) / width + 1e-9));
    std::vector<double> sums(shells, 0.0);
    for (const OrbitRecord& r : enumeration.records) {
        if (r.dist < lo) continue;
        const auto j = static_cast<std::size_t>(std::floor((r.dist - lo) / width));
        if (j < shells) sums[j] += std::exp(-s * r.dist);
    }
    return sums;
}

} // namespace orbital
