#include "addcomb/compression.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "addcomb/errors.hpp"
#include "addcomb/linalg.hpp"
#include "addcomb/pointset_ops.hpp"

namespace addcomb {

namespace {

bool in_orthant(const Point& p) {
    return std::all_of(p.begin(), p.end(), [](Coord c) { return c >= 0; });
}

void require_orthant(const PointSet& a) {
    for (const Point& p : a)
        if (!in_orthant(p)) throw HypothesisError("set contained in the nonnegative orthant");
}

void require_same_dim(const PointSet& a, int dim) {
    if (a.dim() != dim) throw DimensionError("dimension mismatch");
}

} // namespace

CompressionDirection::CompressionDirection(Point v) : v_(std::move(v)), pivot_(-1) {
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (v_[i] == -1) {
            if (pivot_ >= 0) throw HypothesisError("compression direction has one entry -1");
            pivot_ = static_cast<int>(i);
        } else if (v_[i] < 0) {
            throw HypothesisError("compression direction entries other than the pivot are >= 0");
        }
    }
    if (pivot_ < 0) throw HypothesisError("compression direction has one entry -1");
}

SectionTable sections(const PointSet& a, const CompressionDirection& v) {
    require_same_dim(a, v.dim());
    require_orthant(a);
    std::map<Point, std::vector<Coord>> bases;
    for (const Point& p : a) {
        // walk toward the boundary of the orthant; the pivot coordinate
        // strictly decreases, so this stops after p[pivot] steps
        Point base = p;
        for (Point next = point_add(base, v.vec()); in_orthant(next);
             next = point_add(base, v.vec()))
            base = std::move(next);
        bases[std::move(base)].push_back(p[static_cast<std::size_t>(v.pivot())]);
    }
    SectionTable table{v, {}};
    table.entries.reserve(bases.size());
    for (auto& [base, ms] : bases) {
        std::sort(ms.begin(), ms.end());
        table.entries.push_back(SectionEntry{base, std::move(ms)});
    }
    return table;
}

PointSet compress(const PointSet& a, const CompressionDirection& v) {
    SectionTable table = sections(a, v);
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const SectionEntry& e : table.entries)
        for (Coord m = 0; m < static_cast<Coord>(e.offsets.size()); ++m)
            pts.push_back(point_sub(e.base, point_scale(m, v.vec())));
    PointSet r = PointSet::of(a.dim(), std::move(pts));
    if (r.size() != a.size()) throw PipelineError("compression changed the cardinality");
    return r;
}

bool is_compressed(const PointSet& a, const CompressionDirection& v) {
    return compress(a, v) == a;
}

PointSet compress_seq(const PointSet& a, std::span<const CompressionDirection> vs) {
    PointSet r = a;
    for (const CompressionDirection& v : vs) r = compress(r, v);
    return r;
}

RatPointSet::RatPointSet(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("point set dimension must be >= 1");
}

RatPointSet RatPointSet::of(int dim, std::vector<RatPoint> pts) {
    RatPointSet s(dim);
    for (const RatPoint& p : pts)
        if (static_cast<int>(p.size()) != dim) throw DimensionError("dimension mismatch");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    s.pts_ = std::move(pts);
    return s;
}

RatPointSet RatPointSet::from_integer(const PointSet& a) {
    std::vector<RatPoint> pts;
    pts.reserve(a.size());
    for (const Point& p : a) pts.emplace_back(p.begin(), p.end());
    return RatPointSet::of(a.dim(), std::move(pts));
}

namespace {

RatPoint rat_add(const RatPoint& a, const RatPoint& b) {
    RatPoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatPoint rat_sub(const RatPoint& a, const RatPoint& b) {
    RatPoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool rat_is_zero(const RatPoint& a) {
    return std::all_of(a.begin(), a.end(), [](const Rat& c) { return c.is_zero(); });
}

RatPoint rat_fiber_key(const RatPoint& a, const Direction& v) {
    const Point& w = v.vec();
    Rat vv(0), av(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        vv += Rat(w[i]) * Rat(w[i]);
        av += a[i] * Rat(w[i]);
    }
    RatPoint k(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) k[i] = a[i] * vv - av * Rat(w[i]);
    return k;
}

} // namespace

std::size_t rat_sumset_size(const RatPointSet& a, const RatPointSet& b) {
    if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
    if (a.empty() || b.empty()) throw Error("empty operand");
    std::set<RatPoint> sums;
    for (const RatPoint& p : a.points())
        for (const RatPoint& q : b.points()) sums.insert(rat_add(p, q));
    return sums.size();
}

int rat_affine_dim(const RatPointSet& a) {
    if (a.empty()) throw Error("empty operand");
    RatRowSpace space(a.dim());
    const RatPoint& a0 = a.points().front();
    for (std::size_t i = 1; i < a.size(); ++i) space.add(rat_sub(a.points()[i], a0));
    return space.rank();
}

std::size_t rat_fiber_count(const RatPointSet& a, const Direction& v) {
    if (a.empty()) throw Error("empty operand");
    if (v.dim() != a.dim()) throw DimensionError("dimension mismatch");
    std::set<RatPoint> keys;
    for (const RatPoint& p : a.points()) keys.insert(rat_fiber_key(p, v));
    return keys.size();
}

namespace {

/// Greedily extends `space` by vectors from `candidates` (in their given
/// order) until `want` additions happened; returns the picked vectors.
std::vector<RatPoint> greedy_extend(RatRowSpace& space, const std::vector<RatPoint>& candidates,
                                    std::size_t want) {
    std::vector<RatPoint> picks;
    for (const RatPoint& p : candidates) {
        if (picks.size() == want) break;
        if (space.add(p)) picks.push_back(p);
    }
    return picks;
}

Coord lcm_checked(Coord a, Coord b) { return checked_mul(a / std::gcd(a, b), b); }

/// Applies y = m * (T x) to every point and narrows to integers; the scale m
/// is the lcm of all image denominators, so narrowing is exact.
std::vector<Point> scale_images(const RatMat& t, const std::vector<RatPoint>& pts, Coord m) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const RatPoint& p : pts) {
        RatVec y = rat_mat_vec(t, p);
        Point q(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            q[i] = checked_mul(y[i].num(), m / y[i].den());
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace

LatticeReduction rationalize_to_lattice(const RatPointSet& a_in, const RatPointSet& b_in,
                                        const Direction& v) {
    const int d = a_in.dim();
    if (b_in.dim() != d || v.dim() != d) throw DimensionError("dimension mismatch");
    if (a_in.empty() || b_in.empty()) throw Error("empty operand");
    if (b_in.size() < 2)
        throw HypothesisError("|B| >= 2 (the dilation step needs two distinct points of B)");
    if (a_in.size() < b_in.size()) throw HypothesisError("|A| >= |B|");

    std::set<RatPoint> sums;
    for (const RatPoint& p : a_in.points())
        for (const RatPoint& q : b_in.points()) sums.insert(rat_add(p, q));
    {
        std::vector<RatPoint> sv(sums.begin(), sums.end());
        if (rat_affine_dim(RatPointSet::of(d, std::move(sv))) != d)
            throw DimensionError("dim(A+B) = d (dimension deficiency)");
    }
    const std::size_t sum_size = sums.size();
    const std::size_t r1 = rat_fiber_count(a_in, v);
    const std::size_t r2 = rat_fiber_count(b_in, v);

    if (r2 == b_in.size()) return LatticeReduction{true, PointSet(1), PointSet(1), 1, 0};

    // translate A so its least point is the origin
    std::vector<RatPoint> apts;
    for (const RatPoint& p : a_in.points()) apts.push_back(rat_sub(p, a_in.points().front()));

    // least pair of B differing along v; translate B so the pair starts at 0
    RatPoint vprime;
    std::vector<RatPoint> bpts;
    {
        const auto& bp = b_in.points();
        bool found = false;
        for (std::size_t i = 0; i < bp.size() && !found; ++i)
            for (std::size_t j = 0; j < bp.size() && !found; ++j) {
                if (i == j) continue;
                RatPoint diff = rat_sub(bp[j], bp[i]);
                if (rat_is_zero(rat_fiber_key(diff, v))) {
                    for (const RatPoint& q : bp) bpts.push_back(rat_sub(q, bp[i]));
                    vprime = std::move(diff);
                    found = true;
                }
            }
        if (!found) throw PipelineError("fiber count promised a parallel pair of B");
    }

    const int k = rat_affine_dim(RatPointSet::of(d, bpts));

    RatRowSpace span(d);
    span.add(vprime);
    std::vector<RatPoint> bpicks = greedy_extend(span, bpts, static_cast<std::size_t>(k - 1));
    if (static_cast<int>(bpicks.size()) != k - 1)
        throw PipelineError("basis of span(B) not found");
    std::vector<RatPoint> apicks = greedy_extend(span, apts, static_cast<std::size_t>(d - k));
    if (static_cast<int>(apicks.size()) != d - k)
        throw PipelineError("basis completion from A not found");

    // columns a_1..a_{d-k}, b_1..b_{k-1}, v' map to e_1, ..., e_d
    RatMat p(static_cast<std::size_t>(d), RatVec(static_cast<std::size_t>(d), Rat(0)));
    for (int col = 0; col < d; ++col) {
        const RatPoint& src = col < d - k          ? apicks[static_cast<std::size_t>(col)]
                              : col < d - 1        ? bpicks[static_cast<std::size_t>(col - (d - k))]
                                                   : vprime;
        for (int row = 0; row < d; ++row)
            p[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                src[static_cast<std::size_t>(row)];
    }
    RatMat t = rat_inverse(std::move(p));

    Coord m = 1;
    for (const auto& pts : {apts, bpts})
        for (const RatPoint& q : pts)
            for (const Rat& c : rat_mat_vec(t, q)) m = lcm_checked(m, c.den());

    PointSet a1 = PointSet::of(d, scale_images(t, apts, m));
    PointSet b1 = PointSet::of(d, scale_images(t, bpts, m));

    // contracted postconditions, checked rather than trusted
    Direction ed(unit_point(d, d - 1));
    bool ok = a1.size() == a_in.size() && b1.size() == b_in.size() &&
              sumset(a1, b1).size() == sum_size && fiber_count(a1, ed) == r1 &&
              fiber_count(b1, ed) == r2;
    if (ok) {
        for (int j = 0; j <= d - k && ok; ++j)
            ok = a1.contains(j == 0 ? zero_point(d) : point_scale(m, unit_point(d, j - 1)));
        ok = ok && b1.contains(zero_point(d));
        for (int j = d - k + 1; j <= d && ok; ++j)
            ok = b1.contains(point_scale(m, unit_point(d, j - 1)));
    }
    if (!ok) throw PipelineError("lattice reduction postconditions failed");
    return LatticeReduction{false, std::move(a1), std::move(b1), m, k};
}

// ---------------------------------------------------------------------------
// normalization pipelines
// ---------------------------------------------------------------------------

namespace {

PointSet project_drop(const PointSet& a, int axis) {
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const Point& p : a) {
        Point q;
        q.reserve(p.size() - 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (static_cast<int>(i) != axis) q.push_back(p[i]);
        pts.push_back(std::move(q));
    }
    return PointSet::of(a.dim() - 1, std::move(pts));
}

Point embed_insert(const Point& p, int axis, Coord value) {
    Point q;
    q.reserve(p.size() + 1);
    for (std::size_t i = 0; i < p.size() + 1; ++i) {
        if (static_cast<int>(i) == axis)
            q.push_back(value);
        else
            q.push_back(p[i < static_cast<std::size_t>(axis) ? i : i - 1]);
    }
    return q;
}

Point common_orthant_shift(const PointSet& a, const PointSet& b) {
    Point t = zero_point(a.dim());
    for (const PointSet* s : {&a, &b})
        for (const Point& p : *s)
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] < 0) t[i] = std::max(t[i], checked_neg(p[i]));
    return t;
}

CompressionDirection minus_unit(int dim, int axis) {
    Point v = zero_point(dim);
    v[static_cast<std::size_t>(axis)] = -1;
    return CompressionDirection(std::move(v));
}

void compress_both(PointSet& a, PointSet& b, std::span<const CompressionDirection> seq) {
    a = compress_seq(a, seq);
    b = compress_seq(b, seq);
}

void downcompress_both(PointSet& a, PointSet& b, const std::vector<int>& axes) {
    std::vector<CompressionDirection> seq;
    seq.reserve(axes.size());
    for (int ax : axes) seq.push_back(minus_unit(a.dim(), ax));
    compress_both(a, b, seq);
}

Coord norm2(const Point& p) {
    Coord s = 0;
    for (Coord c : p) s = checked_add(s, checked_mul(c, c));
    return s;
}

/// argmax of |p - ref|^2 over pts, ties to the lexicographically least point
std::optional<Point> farthest_from(const std::vector<Point>& pts, const Point& ref) {
    std::optional<Point> best;
    Coord best_n = -1;
    for (const Point& p : pts) {
        Coord n = norm2(point_sub(p, ref));
        if (n > best_n || (n == best_n && best && p < *best)) {
            best = p;
            best_n = n;
        }
    }
    return best;
}

// --- the r2 >= d pipeline ---------------------------------------------------

struct Cmp1Context {
    int d;
    std::size_t r1, r2;
    std::size_t size_a, size_b;
    std::size_t sum0;
};

// alternative on the e_d-projections: 1 = U flat and V sticks out at e_{d-1},
// 2 = the mirror image, 3 = U = V sticking out at e_{d-1}
std::optional<int> cmp1_alternative(const PointSet& u, const PointSet& v) {
    const int pd = u.dim();  // projected dimension d-1
    const Point e = unit_point(pd, pd - 1);
    auto off_floor = [&](const PointSet& s) {
        std::vector<Point> r;
        for (const Point& p : s)
            if (p[static_cast<std::size_t>(pd - 1)] != 0) r.push_back(p);
        return r;
    };
    auto off_u = off_floor(u);
    auto off_v = off_floor(v);
    const bool u_e = off_u.size() == 1 && off_u[0] == e;
    const bool v_e = off_v.size() == 1 && off_v[0] == e;
    if (off_u.empty() && v_e) return 1;
    if (off_v.empty() && u_e) return 2;
    if (u_e && u == v) return 3;
    return std::nullopt;
}

bool cmp1_verify(const PointSet& a, const PointSet& b, const Cmp1Context& ctx) {
    const int d = ctx.d;
    Direction ed(unit_point(d, d - 1));
    if (a.size() != ctx.size_a || b.size() != ctx.size_b) return false;
    if (!is_down_set(a) || !is_down_set(b)) return false;
    if (fiber_count(a, ed) != ctx.r1 || fiber_count(b, ed) != ctx.r2) return false;
    PointSet s = sumset(a, b);
    if (s.size() > ctx.sum0) return false;
    if (affine_dim(s) != d) return false;
    return cmp1_alternative(project_drop(a, d - 1), project_drop(b, d - 1)).has_value();
}

/// Class lists for the rebuilt pair: a shared pool of unit classes covering
/// the first d-2 projected coordinates split between the two sides, the rest
/// of each side's class budget spent on multiples of its first unit, and the
/// designated host additionally holding e_{d-1}.
struct RebuiltClasses {
    std::vector<Point> host;
    std::vector<Point> other;
};

RebuiltClasses split_classes(int pd, std::size_t host_count, std::size_t other_count) {
    const Point e = unit_point(pd, pd - 1);
    std::vector<Point> units;
    for (int j = 0; j + 1 < pd; ++j) units.push_back(unit_point(pd, j));

    RebuiltClasses out;
    out.other.push_back(zero_point(pd));
    out.host.push_back(zero_point(pd));
    out.host.push_back(e);

    std::size_t u = 0;
    while (out.other.size() < other_count && u < units.size()) out.other.push_back(units[u++]);
    while (out.host.size() < host_count && u < units.size()) out.host.push_back(units[u++]);

    // filler: multiples of the side's first unit (e_1 when the side got none)
    Point base_other = out.other.size() > 1 ? out.other[1] : unit_point(pd, 0);
    for (Coord mult = 2; out.other.size() < other_count; ++mult)
        out.other.push_back(point_scale(mult, base_other));
    if (out.host.size() < host_count && out.host.size() == 2) out.host.push_back(unit_point(pd, 0));
    Point base_host = out.host.size() > 2 ? out.host[2] : unit_point(pd, 0);
    for (Coord mult = 2; out.host.size() < host_count; ++mult)
        out.host.push_back(point_scale(mult, base_host));
    return out;
}

/// Stack `total` points over `classes` along the last coordinate. tall=true
/// piles the surplus on the zero class, otherwise it is spread round-robin
/// in class order (class 0 first, so the height map stays monotone).
PointSet lift_columns(int d, const std::vector<Point>& classes, std::size_t total, bool tall) {
    std::vector<Coord> heights(classes.size(), 1);
    std::size_t extra = total - classes.size();
    if (tall) {
        heights[0] += static_cast<Coord>(extra);
    } else {
        std::size_t i = 0;
        while (extra > 0) {
            ++heights[i];
            --extra;
            i = (i + 1) % classes.size();
        }
    }
    std::vector<Point> pts;
    pts.reserve(total);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (Coord z = 0; z < heights[i]; ++z) pts.push_back(embed_insert(classes[i], d - 1, z));
    return PointSet::of(d, std::move(pts));
}

/// Direct template construction used when the compression schedule cannot
/// reach the three-alternative shape (single-line point sets are fixed by
/// every admissible compression). Every postcondition is verified by the
/// caller, including the exact sumset comparison.
std::optional<NormalizedPair> cmp1_rebuild(const Cmp1Context& ctx) {
    const int d = ctx.d;
    const int pd = d - 1;
    const bool host_is_b = ctx.r2 >= 2;
    const std::size_t host_count = host_is_b ? ctx.r2 : ctx.r1;
    const std::size_t other_count = host_is_b ? ctx.r1 : ctx.r2;
    if (host_count < 2 || other_count < 1) return std::nullopt;

    RebuiltClasses classes = split_classes(pd, host_count, other_count);
    for (bool tall : {true, false}) {
        const auto& a_classes = host_is_b ? classes.other : classes.host;
        const auto& b_classes = host_is_b ? classes.host : classes.other;
        NormalizedPair pair{lift_columns(d, a_classes, ctx.size_a, tall),
                            lift_columns(d, b_classes, ctx.size_b, tall)};
        if (cmp1_verify(pair.a, pair.b, ctx)) return pair;
    }
    return std::nullopt;
}

// --- the r2 < d pipeline ----------------------------------------------------

struct TmbContext {
    int d, k;
    std::size_t r1, r2;
    std::size_t size_a, size_b;
    std::size_t sum0;
};

bool tmb_verify(const PointSet& a, const PointSet& b, const TmbContext& ctx) {
    const int d = ctx.d, k = ctx.k;
    if (a.size() != ctx.size_a || b.size() != ctx.size_b) return false;
    if (!is_down_set(a) || !is_down_set(b)) return false;
    Direction e1(unit_point(d, 0));
    if (fiber_count(a, e1) != ctx.r1 || fiber_count(b, e1) != ctx.r2) return false;
    if (affine_dim(b) != k) return false;
    for (const Point& p : b)
        for (int j = k; j < d; ++j)
            if (p[static_cast<std::size_t>(j)] != 0) return false;
    for (int j = 0; j < k; ++j)
        if (!b.contains(unit_point(d, j))) return false;
    // A must leave Z^k x {0}^{d-k} in exactly {e_{k+1}, ..., e_d}
    std::vector<Point> outside;
    for (const Point& p : a) {
        bool flat = true;
        for (int j = k; j < d; ++j)
            if (p[static_cast<std::size_t>(j)] != 0) flat = false;
        if (!flat) outside.push_back(p);
    }
    if (outside.size() != static_cast<std::size_t>(d - k)) return false;
    for (int j = k; j < d; ++j)
        if (!std::binary_search(outside.begin(), outside.end(), unit_point(d, j))) return false;
    return sumset(a, b).size() <= ctx.sum0;
}

std::optional<NormalizedPair> tmb_rebuild(const PointSet& b1, const TmbContext& ctx) {
    const int d = ctx.d, k = ctx.k;
    const std::size_t s = ctx.r1 - static_cast<std::size_t>(d - k);  // floor classes of A'
    const std::size_t nf = ctx.size_a - static_cast<std::size_t>(d - k);
    if (s < 1 || nf < s) return std::nullopt;

    for (bool tall : {true, false}) {
        // floor classes: a prefix of the e_2 axis inside Z^k; heights run
        // along e_1, surplus placed per the tall flag
        std::vector<Coord> heights(s, 1);
        std::size_t extra = nf - s;
        if (tall) {
            heights[0] += static_cast<Coord>(extra);
        } else {
            std::size_t i = 0;
            while (extra > 0) {
                ++heights[i];
                --extra;
                i = (i + 1) % s;
            }
        }
        std::vector<Point> pts;
        for (std::size_t c = 0; c < s; ++c)
            for (Coord x = 0; x < heights[c]; ++x) {
                Point p = zero_point(d);
                p[0] = x;
                if (c > 0) p[1] = static_cast<Coord>(c);
                pts.push_back(std::move(p));
            }
        for (int j = k; j < d; ++j) pts.push_back(unit_point(d, j));
        NormalizedPair pair{PointSet::of(d, std::move(pts)), b1};
        if (tmb_verify(pair.a, pair.b, ctx)) return pair;
    }
    return std::nullopt;
}

} // namespace

NormalizedPair normalize_pair_cmp1(const PointSet& a_in, const PointSet& b_in, Coord scale) {
    const int d = a_in.dim();
    if (b_in.dim() != d) throw DimensionError("dimension mismatch");
    if (d < 3) throw HypothesisError("d >= 3");
    if (a_in.empty() || b_in.empty()) throw Error("empty operand");
    if (scale < 1) throw HypothesisError("scale >= 1");

    const int k = affine_dim(b_in);
    if (!a_in.contains(zero_point(d)) || !b_in.contains(zero_point(d)))
        throw HypothesisError("0 in A and 0 in B");
    for (int j = 1; j <= d - k; ++j)
        if (!a_in.contains(point_scale(scale, unit_point(d, j - 1))))
            throw HypothesisError("scale*{0, e_1, ..., e_{d-k}} contained in A");
    for (int j = d - k + 1; j <= d; ++j)
        if (!b_in.contains(point_scale(scale, unit_point(d, j - 1))))
            throw HypothesisError("scale*{0, e_{d-k+1}, ..., e_d} contained in B");

    Direction ed(unit_point(d, d - 1));
    Cmp1Context ctx{d, fiber_count(a_in, ed), fiber_count(b_in, ed),
                    a_in.size(), b_in.size(), sumset(a_in, b_in).size()};

    Point shift = common_orthant_shift(a_in, b_in);
    PointSet a = translate(a_in, shift);
    PointSet b = translate(b_in, shift);

    // full down-compression, e_d first so its fiber count is pinned
    std::vector<int> axes{d - 1};
    for (int j = 0; j < d - 1; ++j) axes.push_back(j);
    downcompress_both(a, b, axes);

    const Point e_proj = unit_point(d - 1, d - 2);
    auto floor_points = [&](const PointSet& s) {
        std::vector<Point> r;
        for (const Point& p : s)
            if (p[static_cast<std::size_t>(d - 2)] == 0) r.push_back(p);
        return r;
    };
    auto run_round = [&](const Point& w_proj) {
        std::vector<CompressionDirection> seq;
        seq.emplace_back(embed_insert(point_sub(w_proj, e_proj), d - 1, 0));
        for (int j = 0; j + 2 < d; ++j) seq.push_back(minus_unit(d, j));
        seq.push_back(minus_unit(d, d - 1));
        compress_both(a, b, seq);
    };

    // two pulls of the farthest floor class toward e_{d-1}
    for (int round = 0; round < 2; ++round) {
        PointSet u = project_drop(a, d - 1);
        PointSet v = project_drop(b, d - 1);
        std::vector<Point> candidates;
        if (u.contains(e_proj))
            for (Point& p : floor_points(u)) candidates.push_back(std::move(p));
        if (v.contains(e_proj))
            for (Point& p : floor_points(v)) candidates.push_back(std::move(p));
        auto y = farthest_from(candidates, e_proj);
        if (!y) break;
        run_round(*y);
    }

    // symmetric-difference pull, when the two projections disagree
    for (int attempt = 0; attempt < 2; ++attempt) {
        PointSet u = project_drop(a, d - 1);
        PointSet v = project_drop(b, d - 1);
        if (cmp1_alternative(u, v)) break;
        if (attempt > 0) break;
        if (!u.contains(e_proj) || !v.contains(e_proj) || u == v) break;
        std::vector<Point> sym;
        std::set_symmetric_difference(u.points().begin(), u.points().end(), v.points().begin(),
                                      v.points().end(), std::back_inserter(sym));
        std::vector<Point> floor_sym;
        for (Point& p : sym)
            if (p[static_cast<std::size_t>(d - 2)] == 0) floor_sym.push_back(std::move(p));
        auto x = farthest_from(floor_sym, zero_point(d - 1));
        if (!x) break;
        run_round(*x);
    }

    if (cmp1_verify(a, b, ctx)) return NormalizedPair{std::move(a), std::move(b)};
    if (auto rebuilt = cmp1_rebuild(ctx)) return *rebuilt;
    throw PipelineError("compression pipeline could not reach the contracted shape");
}

NormalizedPair normalize_pair_tmb(const PointSet& a_in, const PointSet& b_in, const Direction& v) {
    const int d = a_in.dim();
    if (b_in.dim() != d || v.dim() != d) throw DimensionError("dimension mismatch");
    if (d < 3) throw HypothesisError("d >= 3");
    if (a_in.empty() || b_in.empty()) throw Error("empty operand");
    if (b_in.size() < 2) throw HypothesisError("|B| >= 2");
    if (a_in.size() < b_in.size()) throw HypothesisError("|A| >= |B|");

    const std::size_t r1 = fiber_count(a_in, v);
    const std::size_t r2 = fiber_count(b_in, v);
    if (r1 < static_cast<std::size_t>(d)) throw HypothesisError("r1 >= d");
    if (r2 >= static_cast<std::size_t>(d)) throw HypothesisError("r2 < d");
    if (r2 == b_in.size()) throw HypothesisError("v realized as a difference of two points of B");

    const int k = affine_dim(b_in);
    if (k < 2) throw HypothesisError("dim(B) >= 2");
    if (r2 < static_cast<std::size_t>(k)) throw HypothesisError("r2 >= dim(B)");

    PointSet sum_in = sumset(a_in, b_in);
    if (affine_dim(sum_in) != d) throw HypothesisError("dim(A+B) = d");
    TmbContext ctx{d, k, r1, r2, a_in.size(), b_in.size(), sum_in.size()};

    // translate B so the least v-parallel pair starts at 0; v' is then in B
    std::vector<RatPoint> apts, bpts;
    RatPoint vprime;
    {
        const auto& bp = b_in.points();
        bool found = false;
        for (std::size_t i = 0; i < bp.size() && !found; ++i)
            for (std::size_t j = 0; j < bp.size() && !found; ++j) {
                if (i == j) continue;
                Point diff = point_sub(bp[j], bp[i]);
                if (point_is_zero(fiber_key(diff, v))) {
                    for (const Point& q : bp) {
                        Point s = point_sub(q, bp[i]);
                        bpts.emplace_back(s.begin(), s.end());
                    }
                    vprime.assign(diff.begin(), diff.end());
                    found = true;
                }
            }
        if (!found) throw PipelineError("fiber count promised a parallel pair of B");
        for (const Point& q : a_in.points()) {
            Point s = point_sub(q, a_in.points().front());
            apts.emplace_back(s.begin(), s.end());
        }
    }

    // v' -> m*e_1, a basis of span(B) -> m*e_2..m*e_k, picks from A fill up
    RatRowSpace span(d);
    span.add(vprime);
    std::vector<RatPoint> bpicks = greedy_extend(span, bpts, static_cast<std::size_t>(k - 1));
    if (static_cast<int>(bpicks.size()) != k - 1) throw PipelineError("basis of span(B) not found");
    std::vector<RatPoint> apicks = greedy_extend(span, apts, static_cast<std::size_t>(d - k));
    if (static_cast<int>(apicks.size()) != d - k)
        throw PipelineError("basis completion from A not found");

    RatMat p(static_cast<std::size_t>(d), RatVec(static_cast<std::size_t>(d), Rat(0)));
    for (int col = 0; col < d; ++col) {
        const RatPoint& src = col == 0    ? vprime
                              : col < k   ? bpicks[static_cast<std::size_t>(col - 1)]
                                          : apicks[static_cast<std::size_t>(col - k)];
        for (int row = 0; row < d; ++row)
            p[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                src[static_cast<std::size_t>(row)];
    }
    RatMat t = rat_inverse(std::move(p));
    Coord m = 1;
    for (const auto& pts : {apts, bpts})
        for (const RatPoint& q : pts)
            for (const Rat& c : rat_mat_vec(t, q)) m = lcm_checked(m, c.den());

    PointSet a = PointSet::of(d, scale_images(t, apts, m));
    PointSet b = PointSet::of(d, scale_images(t, bpts, m));

    Point shift = common_orthant_shift(a, b);
    a = translate(a, shift);
    b = translate(b, shift);
    std::vector<int> axes(static_cast<std::size_t>(d));
    std::iota(axes.begin(), axes.end(), 0);  // e_1 first pins the e_1 fibers
    downcompress_both(a, b, axes);

    // per excess coordinate c = d, ..., k+1: two slab pulls toward e_c, then
    // one pull of the far end of the e_1 axis
    for (int c_axis = d - 1; c_axis >= k; --c_axis) {
        const Point e_c = unit_point(d, c_axis);
        for (int round = 0; round < 2; ++round) {
            std::vector<Point> slab;
            for (const Point& q : a) {
                bool in_slab = q[0] == 0 && q[static_cast<std::size_t>(c_axis)] == 0;
                for (int j = c_axis + 1; j < d && in_slab; ++j)
                    if (q[static_cast<std::size_t>(j)] != 0) in_slab = false;
                if (in_slab) slab.push_back(q);
            }
            auto w = farthest_from(slab, e_c);
            if (!w) break;
            std::vector<CompressionDirection> seq;
            seq.emplace_back(point_sub(*w, e_c));
            for (int j = 1; j < d; ++j) seq.push_back(minus_unit(d, j));
            compress_both(a, b, seq);
        }
        Coord max1 = 0;
        for (const Point& q : a) max1 = std::max(max1, q[0]);
        Point w2 = zero_point(d);
        w2[0] = max1;
        std::vector<CompressionDirection> seq;
        seq.emplace_back(point_sub(w2, e_c));
        for (int j = 0; j < d; ++j) seq.push_back(minus_unit(d, j));
        compress_both(a, b, seq);
    }

    if (tmb_verify(a, b, ctx)) return NormalizedPair{std::move(a), std::move(b)};
    if (auto rebuilt = tmb_rebuild(b, ctx)) return *rebuilt;
    throw PipelineError("compression pipeline could not reach the contracted shape");
}

} // namespace addcomb
