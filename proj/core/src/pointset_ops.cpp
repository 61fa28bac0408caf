#include "addcomb/pointset_ops.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "addcomb/errors.hpp"
#include "addcomb/linalg.hpp"

namespace addcomb {

namespace {

void check_binary_operands(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
    if (a.empty() || b.empty()) throw Error("empty operand");
}

} // namespace

PointSet sumset(const PointSet& a, const PointSet& b) {
    check_binary_operands(a, b);
    std::vector<Point> pts;
    pts.reserve(a.size() * b.size());
    for (const Point& p : a)
        for (const Point& q : b) pts.push_back(point_add(p, q));
    return PointSet::of(a.dim(), std::move(pts));
}

PointSet difference_set(const PointSet& a, const PointSet& b) {
    check_binary_operands(a, b);
    std::vector<Point> pts;
    pts.reserve(a.size() * b.size());
    for (const Point& p : a)
        for (const Point& q : b) pts.push_back(point_sub(p, q));
    return PointSet::of(a.dim(), std::move(pts));
}

PointSet restricted_difference(const PointSet& a, const PointSet& b, const Direction& v) {
    check_binary_operands(a, b);
    if (v.dim() != a.dim()) throw DimensionError("dimension mismatch");
    std::vector<Point> pts;
    for (const Point& p : a)
        for (const Point& q : b) {
            Point x = point_sub(p, q);
            if (!point_is_zero(fiber_key(x, v))) pts.push_back(std::move(x));
        }
    return PointSet::of(a.dim(), std::move(pts));
}

int affine_dim(const PointSet& a) {
    if (a.empty()) throw Error("empty operand");
    const Point& a0 = a.points().front();
    std::vector<std::vector<Coord>> rows;
    rows.reserve(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) rows.push_back(point_sub(a.points()[i], a0));
    return integer_rank(std::move(rows));
}

Point fiber_key(const Point& a, const Direction& v) {
    const Point& w = v.vec();
    Coord vv = point_dot(w, w);
    Coord av = point_dot(a, w);
    Point k(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        k[i] = checked_sub(checked_mul(a[i], vv), checked_mul(av, w[i]));
    return k;
}

FiberPartition fiber_partition(const PointSet& a, const Direction& v) {
    if (a.empty()) throw Error("empty operand");
    if (v.dim() != a.dim()) throw DimensionError("dimension mismatch");
    std::map<Point, std::vector<Point>> groups;
    for (const Point& p : a) groups[fiber_key(p, v)].push_back(p);
    FiberPartition part{v, {}};
    part.fibers.reserve(groups.size());
    for (auto& [key, members] : groups)
        part.fibers.push_back(Fiber{key, PointSet::from_sorted_unique(a.dim(), std::move(members))});
    return part;
}

std::size_t fiber_count(const PointSet& a, const Direction& v) {
    if (a.empty()) throw Error("empty operand");
    if (v.dim() != a.dim()) throw DimensionError("dimension mismatch");
    std::vector<Point> keys;
    keys.reserve(a.size());
    for (const Point& p : a) keys.push_back(fiber_key(p, v));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys.size();
}

LineCover min_line_cover(const PointSet& a) {
    if (a.size() < 2) throw Error("line cover needs at least two points");
    std::set<Point> dirs;
    const auto& pts = a.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            dirs.insert(Direction(point_sub(pts[j], pts[i])).vec());

    bool have = false;
    LineCover best{Direction(unit_point(a.dim(), 0)), 0};
    for (const Point& d : dirs) {
        Direction v(d);
        std::size_t c = fiber_count(a, v);
        if (!have || c < best.lines) {  // set iteration is lex order, so first win is the tie-break
            best = LineCover{v, c};
            have = true;
        }
    }
    return best;
}

bool is_down_set(const PointSet& a) {
    if (a.empty()) throw Error("empty operand");
    for (const Point& p : a)
        for (Coord c : p)
            if (c < 0) throw HypothesisError("set contained in the nonnegative orthant");
    for (const Point& p : a) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            Point q = p;
            --q[i];
            if (!a.contains(q)) return false;
        }
    }
    return true;
}

} // namespace addcomb
