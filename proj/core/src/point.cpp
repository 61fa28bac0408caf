#include "addcomb/point.hpp"

#include <algorithm>
#include <numeric>

#include "addcomb/errors.hpp"

namespace addcomb {

Point point_add(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw DimensionError("dimension mismatch");
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

Point point_sub(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw DimensionError("dimension mismatch");
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
    return r;
}

Point point_scale(Coord k, const Point& a) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(k, a[i]);
    return r;
}

Coord point_dot(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw DimensionError("dimension mismatch");
    Coord s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

bool point_is_zero(const Point& a) {
    return std::all_of(a.begin(), a.end(), [](Coord c) { return c == 0; });
}

Point zero_point(int dim) { return Point(static_cast<std::size_t>(dim), 0); }

Point unit_point(int dim, int axis) {
    Point p = zero_point(dim);
    p[static_cast<std::size_t>(axis)] = 1;
    return p;
}

PointSet::PointSet(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("point set dimension must be >= 1");
}

PointSet PointSet::of(int dim, std::vector<Point> pts) {
    PointSet s(dim);
    for (const Point& p : pts)
        if (static_cast<int>(p.size()) != dim) throw DimensionError("dimension mismatch");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    s.pts_ = std::move(pts);
    return s;
}

PointSet PointSet::from_sorted_unique(int dim, std::vector<Point> pts) {
    PointSet s(dim);
    s.pts_ = std::move(pts);
    return s;
}

bool PointSet::contains(const Point& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
}

PointSet translate(const PointSet& a, const Point& t) {
    if (static_cast<int>(t.size()) != a.dim()) throw DimensionError("dimension mismatch");
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const Point& p : a) pts.push_back(point_add(p, t));
    // translation preserves the lexicographic order
    return PointSet::from_sorted_unique(a.dim(), std::move(pts));
}

Direction::Direction(Point v) : v_(std::move(v)) {
    if (v_.empty()) throw DimensionError("direction dimension must be >= 1");
    Coord g = 0;
    for (Coord c : v_) g = std::gcd(g, c < 0 ? checked_neg(c) : c);
    if (g == 0) throw Error("zero vector is not a direction");
    for (Coord& c : v_) c /= g;
    for (Coord c : v_) {
        if (c != 0) {
            if (c < 0)
                for (Coord& x : v_) x = checked_neg(x);
            break;
        }
    }
}

} // namespace addcomb
