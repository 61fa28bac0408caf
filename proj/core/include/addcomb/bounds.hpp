#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addcomb/point.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

enum class BoundKind {
    freiman_sumset,
    fhu_difference,
    ruzsa_asymmetric,
    stanchescu_3d,
    diffln,
    lines_out5,
    lines_out4,
    mn2,
    conjecture,
    gs_planar,
    ruzsa_triangle,
    d12,
    rszgn,
    rszgn2,
    trivial_sum,
};

const std::vector<BoundKind>& all_bound_kinds();
std::string to_string(BoundKind kind);
std::optional<BoundKind> bound_kind_from_string(const std::string& name);

/// False only for the conjectured bound; a negative slack on a proven kind is
/// either an implementation bug or a discovery, never routine.
bool is_proven(BoundKind kind);
bool needs_b(BoundKind kind);
bool needs_direction(BoundKind kind);

/// Exact record of one inequality evaluation. For lower bounds, slack is
/// lhs - rhs; for the one upper bound (ruzsa_triangle) it is rhs - lhs. In
/// both cases the bound holds iff slack >= 0, and every comparison is done
/// by integer cross-multiplication.
struct BoundReport {
    BoundKind kind;
    std::int64_t lhs;  // the cardinality side
    Rat rhs;
    Rat slack;
    bool holds;
    std::vector<std::pair<std::string, std::int64_t>> params;
};

/// Evaluates one named bound. Hypothesis violations throw HypothesisError
/// (with the failed hypothesis named) rather than returning holds = false.
BoundReport evaluate_bound(BoundKind kind, const PointSet& a, const PointSet* b = nullptr,
                           const Direction* v = nullptr);

struct StructureWitness {
    Direction direction;
    std::string classification;  // "projection_profile" or "bounded_by_projections"
};

/// When |A+B| <= |A| + (d + 1/7)|B| - threshold, scans the primitive
/// difference directions of A and B for a v with |pi_v(A)| = d and
/// |pi_v(B)| in {d, dim B}, or with |B| <= c_d * (|pi_v(A)| + |pi_v(B)|).
/// Returns the first witness in direction order, or nothing (also when the
/// sumset hypothesis itself is not met).
std::optional<StructureWitness> structure_witness(const PointSet& a, const PointSet& b,
                                                  const Rat& threshold, std::int64_t c_d = 1);

/// Checks a claimed two-hyperplane decomposition A = A1 u A2 u E: A1 and A2
/// must lie in translates of one common hyperplane, have affine dimension
/// d-1 and d-1 fibers along v each, and |E| <= epsilon_bound. The caller
/// chooses the epsilon budget for the exceptional part.
bool dbdg_witness_check(const PointSet& a, const PointSet& a1, const PointSet& a2,
                        const PointSet& e, const Direction& v, std::int64_t epsilon_bound);

} // namespace addcomb
