#pragma once

#include <cstddef>
#include <vector>

#include "addcomb/point.hpp"

namespace addcomb {

/// Minkowski sum { a + b : a in A, b in B }. Operands must be non-empty and
/// of equal dimension.
PointSet sumset(const PointSet& a, const PointSet& b);

/// Difference set { a - b : a in A, b in B }.
PointSet difference_set(const PointSet& a, const PointSet& b);

/// (A - B) with every point parallel to v removed. Membership in the line
/// through v is decided exactly via the fiber key.
PointSet restricted_difference(const PointSet& a, const PointSet& b, const Direction& v);

/// Dimension of the affine subspace spanned by A: the rank over Q of
/// { a - a0 : a in A }. 0 for singletons.
int affine_dim(const PointSet& a);

/// Integer vector constant exactly on fibers of the projection along v:
/// key(a) = a*(v.v) - (a.v)*v. key(a) = key(b) iff a - b is parallel to v,
/// and key(x) = 0 iff x lies on the line through v. Avoids any rational
/// projection arithmetic.
Point fiber_key(const Point& a, const Direction& v);

struct Fiber {
    Point key;
    PointSet members;
};

/// Partition of A into translates of the line through v; the number of
/// fibers equals |pi_v(A)| exactly. Fibers are ordered by key.
struct FiberPartition {
    Direction direction;
    std::vector<Fiber> fibers;
};

FiberPartition fiber_partition(const PointSet& a, const Direction& v);

/// |pi_v(A)| without materializing the partition.
std::size_t fiber_count(const PointSet& a, const Direction& v);

struct LineCover {
    Direction direction;
    std::size_t lines;
};

/// Among all primitive directions arising as differences of pairs of points
/// of A, the one minimizing the fiber count (ties broken by lexicographically
/// least direction). A heuristic cover: lines holding a single point of A are
/// never probed directly, but any line through two points of A is.
LineCover min_line_cover(const PointSet& a);

/// True iff A lies in the nonnegative orthant and is closed under
/// decrementing any positive coordinate.
bool is_down_set(const PointSet& a);

} // namespace addcomb
