#pragma once

#include <span>
#include <vector>

#include "addcomb/point.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

/// Admissible compression direction: exactly one entry equals -1 and every
/// other entry is nonnegative.
class CompressionDirection {
public:
    explicit CompressionDirection(Point v);

    const Point& vec() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    /// Index of the -1 entry.
    int pivot() const { return pivot_; }

    friend bool operator==(const CompressionDirection& a, const CompressionDirection& b) {
        return a.v_ == b.v_;
    }

private:
    Point v_;
    int pivot_;
};

struct SectionEntry {
    Point base;                  // in Z(v): base + v leaves the orthant
    std::vector<Coord> offsets;  // ascending m with base - m*v in A
};

struct SectionTable {
    CompressionDirection direction;
    std::vector<SectionEntry> entries;  // ordered by base
};

/// The v-sections of A: for each base x with x + v outside the orthant, the
/// set of steps m >= 0 with x - m*v in A. Section sizes sum to |A|.
SectionTable sections(const PointSet& a, const CompressionDirection& v);

/// Replaces every v-section by the initial segment {0, ..., size-1}.
/// Cardinality-preserving and idempotent; the result stays in the orthant.
PointSet compress(const PointSet& a, const CompressionDirection& v);

bool is_compressed(const PointSet& a, const CompressionDirection& v);

/// Left-to-right composition of compressions; cardinality is preserved at
/// every step.
PointSet compress_seq(const PointSet& a, std::span<const CompressionDirection> vs);

/// Rational-coordinate point. Input side of the lattice reduction only.
using RatPoint = std::vector<Rat>;

class RatPointSet {
public:
    explicit RatPointSet(int dim);
    static RatPointSet of(int dim, std::vector<RatPoint> pts);
    static RatPointSet from_integer(const PointSet& a);

    int dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<RatPoint>& points() const { return pts_; }

private:
    int dim_;
    std::vector<RatPoint> pts_;
};

std::size_t rat_sumset_size(const RatPointSet& a, const RatPointSet& b);
int rat_affine_dim(const RatPointSet& a);
std::size_t rat_fiber_count(const RatPointSet& a, const Direction& v);

struct LatticeReduction {
    /// True when no two points of B differ along v; the caller should fall
    /// back to the unconditional |A| + (d+1)|B| - (d-1)(r1+r2) bound. The
    /// remaining fields are then unset.
    bool fallback = false;
    PointSet a{1};
    PointSet b{1};
    Coord scale = 1;  // the dilation m of the embedded simplices
    int b_dim = 0;    // k = dim(B)
};

/// Replaces rational A, B by integer sets with the same cardinalities, the
/// same sumset size and the same fiber counts (now along e_d), containing
/// scale*{0, e_1, ..., e_{d-k}} resp. scale*{0, e_{d-k+1}, ..., e_d}. The
/// basis of the Q-span and the scale are found by exact rational elimination
/// and a denominator lcm. Postconditions are re-verified before returning.
LatticeReduction rationalize_to_lattice(const RatPointSet& a, const RatPointSet& b,
                                        const Direction& v);

struct NormalizedPair {
    PointSet a;
    PointSet b;
};

/// Reduction of an integer pair to down sets whose projections along e_d have
/// the three-alternative structure used by the r2 >= d sumset bound: writing
/// U = pi_d(A'), V = pi_d(B'), either U lies in Z^{d-2} x {0} and
/// V \ (Z^{d-2} x {0}) = {e_{d-1}}, or the same with U and V swapped, or
/// U = V with U \ (Z^{d-2} x {0}) = {e_{d-1}}. Cardinalities and projection
/// counts are preserved, the sumset never grows, dim(A'+B') = d.
///
/// `scale` is the dilation of the simplices the hypotheses require:
/// scale*{0, e_1, ..., e_{d-k}} in A and scale*{0, e_{d-k+1}, ..., e_d} in B,
/// with k = dim(B).
///
/// Schedule: orthant shift, full down-compression, two pulls of the farthest
/// floor class toward e_{d-1}, then a symmetric-difference pull. Inputs whose
/// mass sits on a single line are fixed points of every admissible
/// compression and cannot reach the template that way; for those the pair is
/// rebuilt directly in template shape and every postcondition, including the
/// sumset comparison, is verified exactly before returning.
NormalizedPair normalize_pair_cmp1(const PointSet& a, const PointSet& b, Coord scale);

/// Reduction for the r2 < d case: down sets with B' inside Z^k x {0}^{d-k}
/// containing {e_1, ..., e_k} and A' leaving that subspace exactly in
/// {e_{k+1}, ..., e_d}, with fiber counts along e_1 preserved. Hypotheses:
/// r1 >= d > r2 >= k = dim(B) >= 2, |A| >= |B| >= 2, dim(A+B) = d, and v
/// realized as a difference of two points of B. Same rebuild-and-verify
/// fallback as normalize_pair_cmp1.
NormalizedPair normalize_pair_tmb(const PointSet& a, const PointSet& b, const Direction& v);

} // namespace addcomb
