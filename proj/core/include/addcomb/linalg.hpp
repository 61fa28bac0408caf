#pragma once

#include <optional>
#include <vector>

#include "addcomb/point.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

/// Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination.
/// All intermediate products are minors of the input, kept exact by checked
/// 64-bit arithmetic.
int integer_rank(std::vector<std::vector<Coord>> m);

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// Exact inverse of a square rational matrix. Throws on singular input.
RatMat rat_inverse(RatMat m);

RatVec rat_mat_vec(const RatMat& m, const RatVec& x);

/// Incremental row space over Q; used to pick greedy lattice bases.
class RatRowSpace {
public:
    explicit RatRowSpace(int cols) : cols_(cols) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    bool contains(RatVec v) const;
    /// Adds v to the span; returns false (and leaves the span unchanged)
    /// if v was already dependent.
    bool add(RatVec v);

private:
    RatVec reduce(RatVec v) const;

    int cols_;
    std::vector<RatVec> rows_;    // echelon rows
    std::vector<int> pivot_col_;  // pivot column of each row
};

/// A primitive integer vector orthogonal to all given rows, when the row
/// space has corank exactly one; nullopt otherwise.
std::optional<Point> integer_kernel_vector(const std::vector<Point>& rows, int dim);

} // namespace addcomb
