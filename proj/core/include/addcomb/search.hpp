#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomb/bounds.hpp"
#include "addcomb/point.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

/// Canonical representative of A under translations and the symmetry group
/// of its bounding box (coordinate permutations and per-axis reflections):
/// shift every coordinate minimum to 0, then take the lexicographically
/// least normalized image over the group. Idempotent; all the objectives
/// used by the search are invariant under this group.
PointSet canonical_form(const PointSet& a);

/// What a scan minimizes: the slack of a unary bound kind, or the raw
/// difference-set cardinality.
struct Objective {
    bool raw_diff = true;
    BoundKind kind = BoundKind::fhu_difference;

    static Objective raw() { return Objective{}; }
    static Objective bound(BoundKind k) { return Objective{false, k}; }
};

std::string to_string(const Objective& o);

struct SearchSpace {
    int dim = 2;
    Coord extent = 1;  // universe is the box {0, ..., extent}^dim
    std::size_t n_lo = 3;
    std::size_t n_hi = 3;
    bool require_full_dim = true;
    Objective objective;
    bool symmetry_reduction = false;
    std::uint64_t budget = 100'000'000ULL;
    std::size_t max_records = 8;
};

struct ExtremalRecord {
    PointSet canonical;
    std::int64_t value = 0;  // objective value: the lhs cardinality
    Rat slack;
    bool violation = false;  // proven bound with negative slack
    std::uint64_t enumerated = 0;
};

struct ScanResult {
    std::vector<ExtremalRecord> records;  // minimum-slack classes, lex order
    std::uint64_t enumerated = 0;         // candidate sets drawn from the universe
    std::uint64_t evaluated = 0;          // candidates passing filters and hypotheses
    std::uint64_t violations = 0;         // proven-bound violations encountered
};

/// Enumerates every n-subset of the universe for n in [n_lo, n_hi], evaluates the
/// objective on the candidates passing the filters, and returns the
/// minimum-slack records. Workers split the candidate stream by combinatorial
/// rank and merge with an order-independent bounded minimum, so the result is
/// bit-identical for every worker count.
ScanResult exhaustive_scan(const SearchSpace& space, int workers = 1);

struct LocalSearchParams {
    int dim = 2;
    std::size_t n = 4;
    Coord extent = 2;
    std::uint64_t seed = 0;
    std::uint64_t iterations = 0;  // number of proposed single-point swaps
    bool require_full_dim = true;
    Objective objective;
};

/// Deterministic hill descent by single-point swaps from random_subset,
/// accepting strict objective decrease only. Returns the best valid
/// configuration visited.
ExtremalRecord local_search(const LocalSearchParams& params);

} // namespace addcomb
