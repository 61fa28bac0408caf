#include "addcomb/constructions.hpp"

#include <algorithm>
#include <set>

#include "addcomb/errors.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

PointSet simplex_line(int d, Coord n_height) {
    if (d < 1 || n_height < 1) throw Error("simplex_line: d >= 1 and N >= 1 required");
    std::vector<Coord> sizes(static_cast<std::size_t>(d), n_height);
    return simplex_lines(d, sizes);
}

PointSet simplex_lines(int d, std::span<const Coord> sizes) {
    if (d < 1) throw Error("simplex_lines: d >= 1 required");
    if (static_cast<int>(sizes.size()) != d) throw Error("simplex_lines: need exactly d sizes");
    for (Coord s : sizes)
        if (s < 1) throw Error("simplex_lines: every size must be >= 1");
    std::vector<Point> pts;
    for (int i = 0; i < d; ++i) {
        Point base = i == 0 ? zero_point(d) : unit_point(d, i - 1);
        for (Coord n = 1; n <= sizes[static_cast<std::size_t>(i)]; ++n) {
            Point p = base;
            p[static_cast<std::size_t>(d - 1)] = checked_add(p[static_cast<std::size_t>(d - 1)], n);
            pts.push_back(std::move(p));
        }
    }
    return PointSet::of(d, std::move(pts));
}

std::uint64_t box_size(int d, Coord m) {
    if (d < 1 || m < 0) throw Error("box: d >= 1 and m >= 0 required");
    unsigned __int128 total = 1;
    for (int i = 0; i < d; ++i) {
        total *= static_cast<unsigned __int128>(m) + 1;
        if (total > UINT64_MAX) throw BudgetError("box too large to index");
    }
    return static_cast<std::uint64_t>(total);
}

Point box_point_at(int d, Coord m, std::uint64_t index) {
    Point p(static_cast<std::size_t>(d));
    const std::uint64_t base = static_cast<std::uint64_t>(m) + 1;
    for (int i = d - 1; i >= 0; --i) {
        p[static_cast<std::size_t>(i)] = static_cast<Coord>(index % base);
        index /= base;
    }
    return p;
}

PointSet box(int d, Coord m) {
    std::uint64_t total = box_size(d, m);
    if (total > 100'000'000ULL) throw BudgetError("box too large to materialize");
    std::vector<Point> pts;
    pts.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) pts.push_back(box_point_at(d, m, i));
    // lexicographic by construction
    return PointSet::from_sorted_unique(d, std::move(pts));
}

PointSet random_subset(int d, std::size_t n, Coord m, std::uint64_t seed) {
    std::uint64_t total = box_size(d, m);
    if (n > total) throw Error("random_subset: n exceeds the box size");
    // Floyd's sampler: uniform without materializing the universe
    SplitMix64 rng(seed);
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = total - n; j < total; ++j) {
        std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::uint64_t idx : chosen) pts.push_back(box_point_at(d, m, idx));
    return PointSet::from_sorted_unique(d, std::move(pts));
}

} // namespace addcomb
