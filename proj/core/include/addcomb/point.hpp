#pragma once

#include <cstddef>
#include <vector>

#include "addcomb/checked.hpp"

namespace addcomb {

/// A lattice point. Lexicographic vector order is the canonical point order.
using Point = std::vector<Coord>;

Point point_add(const Point& a, const Point& b);
Point point_sub(const Point& a, const Point& b);
Point point_scale(Coord k, const Point& a);
Coord point_dot(const Point& a, const Point& b);
bool point_is_zero(const Point& a);

Point zero_point(int dim);
/// Standard basis vector e_{axis+1} (axis is 0-based).
Point unit_point(int dim, int axis);

/// Finite, duplicate-free set of lattice points of one common dimension,
/// stored in ascending lexicographic order.
class PointSet {
public:
    explicit PointSet(int dim);
    /// Sorts and deduplicates. Throws DimensionError on mixed dimensions.
    static PointSet of(int dim, std::vector<Point> pts);
    /// Trusted fast path: `pts` must already be sorted, unique and of dim `dim`.
    static PointSet from_sorted_unique(int dim, std::vector<Point> pts);

    int dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<Point>& points() const { return pts_; }
    bool contains(const Point& p) const;

    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.dim_ == b.dim_ && a.pts_ == b.pts_;
    }

private:
    int dim_;
    std::vector<Point> pts_;
};

PointSet translate(const PointSet& a, const Point& t);

/// Nonzero integer vector in primitive form: the entries have gcd 1 and the
/// first nonzero entry is positive. Normalization is idempotent, so a
/// direction and all its nonzero multiples compare equal.
class Direction {
public:
    explicit Direction(Point v);

    const Point& vec() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }

    friend bool operator==(const Direction& a, const Direction& b) { return a.v_ == b.v_; }
    friend bool operator<(const Direction& a, const Direction& b) { return a.v_ < b.v_; }

private:
    Point v_;
};

} // namespace addcomb
