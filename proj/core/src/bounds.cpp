#include "addcomb/bounds.hpp"

#include <algorithm>
#include <set>

#include "addcomb/errors.hpp"
#include "addcomb/linalg.hpp"
#include "addcomb/pointset_ops.hpp"

namespace addcomb {

const std::vector<BoundKind>& all_bound_kinds() {
    static const std::vector<BoundKind> kinds = {
        BoundKind::freiman_sumset, BoundKind::fhu_difference, BoundKind::ruzsa_asymmetric,
        BoundKind::stanchescu_3d,  BoundKind::diffln,         BoundKind::lines_out5,
        BoundKind::lines_out4,     BoundKind::mn2,            BoundKind::conjecture,
        BoundKind::gs_planar,      BoundKind::ruzsa_triangle, BoundKind::d12,
        BoundKind::rszgn,          BoundKind::rszgn2,         BoundKind::trivial_sum,
    };
    return kinds;
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::freiman_sumset: return "freiman_sumset";
        case BoundKind::fhu_difference: return "fhu_difference";
        case BoundKind::ruzsa_asymmetric: return "ruzsa_asymmetric";
        case BoundKind::stanchescu_3d: return "stanchescu_3d";
        case BoundKind::diffln: return "diffln";
        case BoundKind::lines_out5: return "lines_out5";
        case BoundKind::lines_out4: return "lines_out4";
        case BoundKind::mn2: return "mn2";
        case BoundKind::conjecture: return "conjecture";
        case BoundKind::gs_planar: return "gs_planar";
        case BoundKind::ruzsa_triangle: return "ruzsa_triangle";
        case BoundKind::d12: return "d12";
        case BoundKind::rszgn: return "rszgn";
        case BoundKind::rszgn2: return "rszgn2";
        case BoundKind::trivial_sum: return "trivial_sum";
    }
    throw Error("unknown bound kind");
}

std::optional<BoundKind> bound_kind_from_string(const std::string& name) {
    for (BoundKind k : all_bound_kinds())
        if (to_string(k) == name) return k;
    return std::nullopt;
}

bool is_proven(BoundKind kind) { return kind != BoundKind::conjecture; }

bool needs_b(BoundKind kind) {
    switch (kind) {
        case BoundKind::ruzsa_asymmetric:
        case BoundKind::mn2:
        case BoundKind::gs_planar:
        case BoundKind::ruzsa_triangle:
        case BoundKind::d12:
        case BoundKind::rszgn:
        case BoundKind::rszgn2:
        case BoundKind::trivial_sum: return true;
        default: return false;
    }
}

bool needs_direction(BoundKind kind) {
    switch (kind) {
        case BoundKind::diffln:
        case BoundKind::lines_out5:
        case BoundKind::lines_out4:
        case BoundKind::mn2:
        case BoundKind::gs_planar:
        case BoundKind::d12:
        case BoundKind::rszgn:
        case BoundKind::rszgn2: return true;
        default: return false;
    }
}

namespace {

void require(bool cond, const char* hypothesis) {
    if (!cond) throw HypothesisError(hypothesis);
}

std::int64_t size_i(const PointSet& s) { return static_cast<std::int64_t>(s.size()); }

BoundReport finish_lower(BoundKind kind, std::int64_t lhs, Rat rhs,
                         std::vector<std::pair<std::string, std::int64_t>> params) {
    Rat slack = Rat(lhs) - rhs;
    return BoundReport{kind, lhs, rhs, slack, !slack.is_negative(), std::move(params)};
}

/// Shared evaluation of the refined asymmetric bound
/// |A+B| >= |A| + (d+1 - 1/(r1-d+2) - 1/(r2-c+2))|B| - (d-1)(r1+r2),
/// parameterized by the already-selected c.
BoundReport mn2_formula(BoundKind kind, const PointSet& a, const PointSet& b, std::int64_t r1,
                        std::int64_t r2, std::int64_t c, std::int64_t k) {
    const std::int64_t d = a.dim();
    std::int64_t lhs = size_i(sumset(a, b));
    Rat factor = Rat(d + 1) - Rat(1, r1 - d + 2) - Rat(1, r2 - c + 2);
    Rat rhs = Rat(size_i(a)) + factor * Rat(size_i(b)) - Rat((d - 1) * (r1 + r2));
    return finish_lower(kind, lhs, rhs,
                        {{"d", d},
                         {"r1", r1},
                         {"r2", r2},
                         {"c", c},
                         {"k", k},
                         {"card_a", size_i(a)},
                         {"card_b", size_i(b)}});
}

} // namespace

BoundReport evaluate_bound(BoundKind kind, const PointSet& a, const PointSet* b,
                           const Direction* v) {
    if (a.empty()) throw Error("empty operand");
    if (needs_b(kind) && b == nullptr) throw Error("bound kind " + to_string(kind) + " needs B");
    if (needs_direction(kind) && v == nullptr)
        throw Error("bound kind " + to_string(kind) + " needs a direction");
    const std::int64_t d = a.dim();
    const std::int64_t na = size_i(a);

    switch (kind) {
        case BoundKind::freiman_sumset: {
            require(affine_dim(a) == d, "dim(A) = d");
            std::int64_t lhs = size_i(sumset(a, a));
            Rat rhs = Rat((d + 1) * na - d * (d + 1) / 2);
            return finish_lower(kind, lhs, rhs, {{"d", d}, {"card_a", na}});
        }
        case BoundKind::fhu_difference: {
            require(affine_dim(a) == d, "dim(A) = d");
            std::int64_t lhs = size_i(difference_set(a, a));
            Rat rhs = Rat((d + 1) * na - d * (d + 1) / 2);
            return finish_lower(kind, lhs, rhs, {{"d", d}, {"card_a", na}});
        }
        case BoundKind::ruzsa_asymmetric: {
            const std::int64_t nb = size_i(*b);
            require(na >= nb, "|A| >= |B|");
            PointSet s = sumset(a, *b);
            require(affine_dim(s) == d, "dim(A+B) = d");
            Rat rhs = Rat(na + d * nb - d * (d + 1) / 2);
            return finish_lower(kind, size_i(s), rhs,
                                {{"d", d}, {"card_a", na}, {"card_b", nb}});
        }
        case BoundKind::stanchescu_3d: {
            require(d == 3, "d = 3");
            require(affine_dim(a) == 3, "dim(A) = 3");
            std::int64_t lhs = size_i(difference_set(a, a));
            Rat rhs = Rat(9, 2) * Rat(na) - Rat(9);
            return finish_lower(kind, lhs, rhs, {{"d", d}, {"card_a", na}});
        }
        case BoundKind::diffln:
        case BoundKind::lines_out5: {
            require(affine_dim(a) == d, "dim(A) = d");
            std::int64_t r = static_cast<std::int64_t>(fiber_count(a, *v));
            std::int64_t lhs = size_i(restricted_difference(a, a, *v));
            Rat rhs = Rat((2 * d - 2) * na - 2 * d * d * r);
            return finish_lower(kind, lhs, rhs, {{"d", d}, {"r", r}, {"card_a", na}});
        }
        case BoundKind::lines_out4: {
            require(d >= 4, "d >= 4");
            require(affine_dim(a) == d, "dim(A) = d");
            FiberPartition part = fiber_partition(a, *v);
            std::int64_t r = static_cast<std::int64_t>(part.fibers.size());
            for (const Fiber& f : part.fibers)
                require(static_cast<std::int64_t>(f.members.size()) >= 2 * d * d,
                        "every line holds at least 2d^2 points of A");
            std::int64_t lhs = size_i(difference_set(a, a));
            std::int64_t kd = 1000 * d * d * d;
            Rat rhs = (Rat(2 * d - 2) + Rat(1, d - 1)) * Rat(na) - Rat(checked_mul(kd, r));
            return finish_lower(kind, lhs, rhs,
                                {{"d", d}, {"r", r}, {"K_d", kd}, {"card_a", na}});
        }
        case BoundKind::mn2: {
            const std::int64_t nb = size_i(*b);
            std::int64_t r1 = static_cast<std::int64_t>(fiber_count(a, *v));
            std::int64_t r2 = static_cast<std::int64_t>(fiber_count(*b, *v));
            require(d >= 2, "d >= 2");
            require(r1 >= d, "r1 >= d");
            require(na >= nb, "|A| >= |B|");
            require(affine_dim(sumset(a, *b)) == d, "dim(A+B) = d");
            std::int64_t k = affine_dim(*b);
            std::int64_t c = r2 >= d ? d : k;
            return mn2_formula(kind, a, *b, r1, r2, c, k);
        }
        case BoundKind::conjecture: {
            require(d >= 2, "d >= 2");
            require(affine_dim(a) == d, "dim(A) = d");
            std::int64_t lhs = size_i(difference_set(a, a));
            Rat rhs = (Rat(2 * d - 2) + Rat(1, d - 1)) * Rat(na) - Rat(2 * d * d - 4 * d + 3);
            return finish_lower(kind, lhs, rhs, {{"d", d}, {"card_a", na}});
        }
        case BoundKind::gs_planar: {
            require(d == 2, "d = 2");
            const std::int64_t nb = size_i(*b);
            std::int64_t r1 = static_cast<std::int64_t>(fiber_count(a, *v));
            std::int64_t r2 = static_cast<std::int64_t>(fiber_count(*b, *v));
            std::int64_t lhs = size_i(sumset(a, *b));
            Rat rhs = (Rat(na, r1) + Rat(nb, r2) - Rat(1)) * Rat(r1 + r2 - 1);
            return finish_lower(kind, lhs, rhs,
                                {{"d", d}, {"r1", r1}, {"r2", r2}, {"card_a", na}, {"card_b", nb}});
        }
        case BoundKind::ruzsa_triangle: {
            // upper bound: |A+B| <= |A-B|^3 / (|A||B|); slack = rhs - lhs
            const std::int64_t nb = size_i(*b);
            std::int64_t lhs = size_i(sumset(a, *b));
            std::int64_t nd = size_i(difference_set(a, *b));
            std::int64_t cube = checked_mul(checked_mul(nd, nd), nd);
            Rat rhs = Rat(cube) / Rat(checked_mul(na, nb));
            Rat slack = rhs - Rat(lhs);
            return BoundReport{kind,
                               lhs,
                               rhs,
                               slack,
                               !slack.is_negative(),
                               {{"card_a", na}, {"card_b", nb}, {"card_diff", nd}}};
        }
        case BoundKind::d12: {
            const std::int64_t nb = size_i(*b);
            require(fiber_count(*b, *v) == 1, "|pi_v(B)| = 1");
            std::int64_t r = static_cast<std::int64_t>(fiber_count(a, *v));
            std::int64_t lhs = size_i(sumset(a, *b));
            Rat rhs = Rat(na + r * nb - r);
            return finish_lower(kind, lhs, rhs,
                                {{"d", d}, {"r", r}, {"card_a", na}, {"card_b", nb}});
        }
        case BoundKind::rszgn: {
            const std::int64_t nb = size_i(*b);
            std::int64_t r1 = static_cast<std::int64_t>(fiber_count(a, *v));
            std::int64_t r2 = static_cast<std::int64_t>(fiber_count(*b, *v));
            require(d >= 2, "d >= 2");
            require(r1 >= d, "r1 >= d");
            require(r2 >= d, "r2 >= d");
            require(na >= nb, "|A| >= |B|");
            require(affine_dim(sumset(a, *b)) == d, "dim(A+B) = d");
            return mn2_formula(kind, a, *b, r1, r2, d, affine_dim(*b));
        }
        case BoundKind::rszgn2: {
            const std::int64_t nb = size_i(*b);
            std::int64_t r1 = static_cast<std::int64_t>(fiber_count(a, *v));
            std::int64_t r2 = static_cast<std::int64_t>(fiber_count(*b, *v));
            require(nb >= 2, "|B| >= 2");
            require(r1 >= d, "r1 >= d");
            require(r2 < d, "r2 < d");
            require(na >= nb, "|A| >= |B|");
            require(affine_dim(sumset(a, *b)) == d, "dim(A+B) = d");
            std::int64_t k = affine_dim(*b);
            require(r2 >= k, "r2 >= dim(B)");
            return mn2_formula(kind, a, *b, r1, r2, k, k);
        }
        case BoundKind::trivial_sum: {
            const std::int64_t nb = size_i(*b);
            std::int64_t lhs = size_i(sumset(a, *b));
            return finish_lower(kind, lhs, Rat(na + nb - 1), {{"card_a", na}, {"card_b", nb}});
        }
    }
    throw Error("unknown bound kind");
}

std::optional<StructureWitness> structure_witness(const PointSet& a, const PointSet& b,
                                                  const Rat& threshold, std::int64_t c_d) {
    const std::int64_t d = a.dim();
    if (b.dim() != d) throw DimensionError("dimension mismatch");
    if (a.empty() || b.empty()) throw Error("empty operand");
    if (affine_dim(a) != d) throw HypothesisError("dim(A) = d");
    if (a.size() < b.size()) throw HypothesisError("|A| >= |B|");

    const std::int64_t na = size_i(a), nb = size_i(b);
    Rat bound = Rat(na) + (Rat(d) + Rat(1, 7)) * Rat(nb) - threshold;
    if (Rat(size_i(sumset(a, b))) > bound) return std::nullopt;

    std::set<Point> dirs;
    for (const PointSet* s : {&a, &b}) {
        const auto& pts = s->points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                dirs.insert(Direction(point_sub(pts[j], pts[i])).vec());
    }
    std::int64_t kb = affine_dim(b);
    for (const Point& dv : dirs) {
        Direction v(dv);
        std::int64_t pa = static_cast<std::int64_t>(fiber_count(a, v));
        std::int64_t pb = static_cast<std::int64_t>(fiber_count(b, v));
        if (pa == d && (pb == d || pb == kb))
            return StructureWitness{v, "projection_profile"};
        if (nb <= checked_mul(c_d, checked_add(pa, pb)))
            return StructureWitness{v, "bounded_by_projections"};
    }
    return std::nullopt;
}

bool dbdg_witness_check(const PointSet& a, const PointSet& a1, const PointSet& a2,
                        const PointSet& e, const Direction& v, std::int64_t epsilon_bound) {
    const int d = a.dim();
    if (a1.dim() != d || a2.dim() != d || e.dim() != d || v.dim() != d)
        throw DimensionError("dimension mismatch");
    // the three parts must partition A
    std::vector<Point> merged;
    merged.reserve(a1.size() + a2.size() + e.size());
    for (const PointSet* s : {&a1, &a2, &e})
        merged.insert(merged.end(), s->points().begin(), s->points().end());
    if (merged.size() != a.size()) throw Error("A1, A2, E do not partition A");
    std::sort(merged.begin(), merged.end());
    if (std::adjacent_find(merged.begin(), merged.end()) != merged.end())
        throw Error("A1, A2, E do not partition A");
    if (!(PointSet::from_sorted_unique(d, std::move(merged)) == a))
        throw Error("A1, A2, E do not partition A");

    if (static_cast<std::int64_t>(e.size()) > epsilon_bound) return false;
    if (a1.empty() || a2.empty()) return false;
    if (affine_dim(a1) != d - 1 || affine_dim(a2) != d - 1) return false;

    // common hyperplane: a normal of span(A1 - A1) must kill A2 - A2 as well
    std::vector<Point> rows;
    for (std::size_t i = 1; i < a1.size(); ++i)
        rows.push_back(point_sub(a1.points()[i], a1.points().front()));
    auto normal = integer_kernel_vector(rows, d);
    if (!normal) return false;
    for (std::size_t i = 1; i < a2.size(); ++i)
        if (point_dot(point_sub(a2.points()[i], a2.points().front()), *normal) != 0) return false;

    std::size_t want = static_cast<std::size_t>(d - 1);
    return fiber_count(a1, v) == want && fiber_count(a2, v) == want;
}

} // namespace addcomb
