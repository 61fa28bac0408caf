#include "addcomb/search.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "addcomb/constructions.hpp"
#include "addcomb/errors.hpp"
#include "addcomb/pointset_ops.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

PointSet canonical_form(const PointSet& a) {
    if (a.empty()) throw Error("empty operand");
    const int d = a.dim();
    if (d > 10) throw Error("canonical_form: dimension too large");

    // translate per-coordinate minimum to 0
    Point lo = a.points().front();
    Point hi = a.points().front();
    for (const Point& p : a)
        for (int i = 0; i < d; ++i) {
            lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
            hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
        }
    std::vector<Point> base;
    base.reserve(a.size());
    for (const Point& p : a) base.push_back(point_sub(p, lo));
    Point extent = point_sub(hi, lo);

    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Point> best;
    bool have = false;
    do {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            std::vector<Point> image;
            image.reserve(base.size());
            for (const Point& p : base) {
                Point q(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) {
                    int src = perm[static_cast<std::size_t>(i)];
                    Coord c = p[static_cast<std::size_t>(src)];
                    if (mask & (1u << i)) c = extent[static_cast<std::size_t>(src)] - c;
                    q[static_cast<std::size_t>(i)] = c;
                }
                image.push_back(std::move(q));
            }
            std::sort(image.begin(), image.end());
            if (!have || image < best) {
                best = std::move(image);
                have = true;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return PointSet::from_sorted_unique(d, std::move(best));
}

std::string to_string(const Objective& o) {
    return o.raw_diff ? "diff_size" : to_string(o.kind);
}

namespace {

constexpr std::uint64_t kBinomCap = UINT64_MAX;

std::uint64_t binom_capped(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kBinomCap) return kBinomCap;
    }
    return static_cast<std::uint64_t>(r);
}

/// Lexicographic unranking of an ascending k-combination of {0, ..., u-1}.
std::vector<std::uint32_t> unrank_combination(std::uint64_t universe, std::size_t k,
                                              std::uint64_t rank) {
    std::vector<std::uint32_t> comb(k);
    std::uint32_t x = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
        for (;;) {
            std::uint64_t c = binom_capped(universe - 1 - x, k - pos - 1);
            if (rank < c) {
                comb[pos] = x++;
                break;
            }
            rank -= c;
            ++x;
        }
    }
    return comb;
}

bool next_combination(std::vector<std::uint32_t>& comb, std::uint64_t universe) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] + (k - i) < universe) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

struct Evaluation {
    std::int64_t value;
    Rat slack;
    bool violation;
};

/// Evaluates the objective; nullopt when the candidate fails the kind's
/// hypotheses (a skip, never an error: scans only count in-hypothesis sets).
std::optional<Evaluation> evaluate_objective(const Objective& obj, const PointSet& a) {
    if (obj.raw_diff) {
        std::int64_t n = static_cast<std::int64_t>(difference_set(a, a).size());
        return Evaluation{n, Rat(n), false};
    }
    if (needs_b(obj.kind) || needs_direction(obj.kind))
        throw Error("scan objectives must be unary bound kinds");
    try {
        BoundReport rep = evaluate_bound(obj.kind, a);
        return Evaluation{rep.lhs, rep.slack, is_proven(obj.kind) && !rep.holds};
    } catch (const HypothesisError&) {
        return std::nullopt;
    }
}

/// Order-independent bounded minimum: the least slack seen, with up to
/// `cap` lexicographically least canonical forms attaining it.
struct BestSet {
    std::optional<Rat> key;
    std::vector<ExtremalRecord> forms;  // sorted by canonical points
    std::size_t cap = 8;

    void offer(const Rat& slack, ExtremalRecord rec) {
        if (key && slack > *key) return;
        if (!key || slack < *key) {
            key = slack;
            forms.clear();
        }
        auto cmp = [](const ExtremalRecord& x, const ExtremalRecord& y) {
            return x.canonical.points() < y.canonical.points();
        };
        auto it = std::lower_bound(forms.begin(), forms.end(), rec, cmp);
        if (it != forms.end() && it->canonical == rec.canonical) return;
        forms.insert(it, std::move(rec));
        if (forms.size() > cap) forms.pop_back();
    }

    void merge(BestSet&& other) {
        for (ExtremalRecord& r : other.forms) {
            Rat s = r.slack;
            offer(s, std::move(r));
        }
    }
};

struct WorkerOut {
    BestSet best;
    std::uint64_t evaluated = 0;
    std::uint64_t violations = 0;
};

} // namespace

ScanResult exhaustive_scan(const SearchSpace& space, int workers) {
    if (space.dim < 1 || space.extent < 0) throw Error("invalid search space");
    if (space.n_lo < 1 || space.n_lo > space.n_hi) throw Error("invalid cardinality range");
    if (space.require_full_dim && space.n_lo < static_cast<std::size_t>(space.dim) + 1)
        throw Error("n_lo >= d+1 required when the dimension filter is active");
    if (workers < 1) throw Error("workers >= 1 required");
    workers = std::min(workers, 64);

    const std::uint64_t universe = box_size(space.dim, space.extent);
    if (space.n_hi > universe) throw Error("cardinality range exceeds the universe");

    // budget guard before any enumeration
    std::vector<std::uint64_t> block(space.n_hi + 1, 0);
    unsigned __int128 total128 = 0;
    for (std::size_t n = space.n_lo; n <= space.n_hi; ++n) {
        block[n] = binom_capped(universe, n);
        total128 += block[n];
    }
    if (total128 > space.budget) throw BudgetError("candidate count exceeds the budget");
    const std::uint64_t total = static_cast<std::uint64_t>(total128);

    std::vector<Point> box_pts;
    box_pts.reserve(universe);
    for (std::uint64_t i = 0; i < universe; ++i)
        box_pts.push_back(box_point_at(space.dim, space.extent, i));

    auto run_chunk = [&](std::uint64_t lo, std::uint64_t hi, WorkerOut& out) {
        out.best.cap = space.max_records;
        std::uint64_t offset = 0;
        std::vector<Point> pts;
        for (std::size_t n = space.n_lo; n <= space.n_hi; ++n) {
            const std::uint64_t begin = std::max(lo, offset);
            const std::uint64_t end = std::min(hi, offset + block[n]);
            if (begin >= end) {
                offset += block[n];
                continue;
            }
            auto comb = unrank_combination(universe, n, begin - offset);
            for (std::uint64_t r = begin; r < end; ++r) {
                pts.clear();
                for (std::uint32_t idx : comb) pts.push_back(box_pts[idx]);
                PointSet cand = PointSet::from_sorted_unique(space.dim, pts);
                bool last = !(r + 1 < end && next_combination(comb, universe));
                if (space.require_full_dim && affine_dim(cand) != space.dim) {
                    if (last) break;
                    continue;
                }
                if (space.symmetry_reduction && !(canonical_form(cand) == cand)) {
                    if (last) break;
                    continue;
                }
                if (auto ev = evaluate_objective(space.objective, cand)) {
                    ++out.evaluated;
                    if (ev->violation) ++out.violations;
                    // canonicalize only candidates that can enter the record set
                    if (!out.best.key || ev->slack <= *out.best.key)
                        out.best.offer(ev->slack, ExtremalRecord{canonical_form(cand), ev->value,
                                                                 ev->slack, ev->violation, total});
                }
                if (last) break;
            }
            offset += block[n];
        }
    };

    std::vector<WorkerOut> outs(static_cast<std::size_t>(workers));
    if (workers == 1) {
        run_chunk(0, total, outs[0]);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            std::uint64_t lo = total / static_cast<std::uint64_t>(workers) * static_cast<std::uint64_t>(w) +
                               std::min<std::uint64_t>(static_cast<std::uint64_t>(w), total % static_cast<std::uint64_t>(workers));
            std::uint64_t len = total / static_cast<std::uint64_t>(workers) +
                                (static_cast<std::uint64_t>(w) < total % static_cast<std::uint64_t>(workers) ? 1 : 0);
            threads.emplace_back(run_chunk, lo, lo + len, std::ref(outs[static_cast<std::size_t>(w)]));
        }
        for (std::thread& t : threads) t.join();
    }

    ScanResult result;
    result.enumerated = total;
    BestSet best;
    best.cap = space.max_records;
    for (WorkerOut& out : outs) {
        result.evaluated += out.evaluated;
        result.violations += out.violations;
        best.merge(std::move(out.best));
    }
    result.records = std::move(best.forms);
    return result;
}

ExtremalRecord local_search(const LocalSearchParams& params) {
    const std::uint64_t universe = box_size(params.dim, params.extent);
    if (params.n < 1 || params.n > universe) throw Error("invalid cardinality");

    SplitMix64 rng(params.seed);
    PointSet start = random_subset(params.dim, params.n, params.extent, params.seed);
    std::vector<std::uint64_t> indices;
    indices.reserve(params.n);
    {
        // recover universe indices of the start set
        const std::uint64_t base = static_cast<std::uint64_t>(params.extent) + 1;
        for (const Point& p : start) {
            std::uint64_t idx = 0;
            for (Coord c : p) idx = idx * base + static_cast<std::uint64_t>(c);
            indices.push_back(idx);
        }
    }

    auto build = [&](const std::vector<std::uint64_t>& idxs) {
        std::vector<Point> pts;
        pts.reserve(idxs.size());
        for (std::uint64_t i : idxs) pts.push_back(box_point_at(params.dim, params.extent, i));
        return PointSet::of(params.dim, std::move(pts));
    };
    auto assess = [&](const PointSet& s) -> std::optional<Evaluation> {
        if (params.require_full_dim && affine_dim(s) != params.dim) return std::nullopt;
        return evaluate_objective(params.objective, s);
    };

    PointSet current = start;
    std::optional<Evaluation> current_ev = assess(current);
    std::optional<ExtremalRecord> best;
    auto record_if_best = [&](const PointSet& s, const Evaluation& ev) {
        if (!best || ev.slack < best->slack)
            best = ExtremalRecord{canonical_form(s), ev.value, ev.slack, ev.violation, 0};
    };
    if (current_ev) record_if_best(current, *current_ev);

    std::vector<std::uint64_t> sorted_indices = indices;
    std::uint64_t proposals = 0;
    for (std::uint64_t it = 0; it < params.iterations; ++it) {
        std::size_t remove_at = static_cast<std::size_t>(rng.below(params.n));
        std::uint64_t add = rng.below(universe);
        ++proposals;
        if (std::binary_search(sorted_indices.begin(), sorted_indices.end(), add)) continue;
        std::vector<std::uint64_t> trial = sorted_indices;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(remove_at));
        trial.insert(std::upper_bound(trial.begin(), trial.end(), add), add);
        PointSet cand = build(trial);
        auto ev = assess(cand);
        if (!ev) continue;
        if (!current_ev || ev->slack < current_ev->slack) {
            current = std::move(cand);
            current_ev = ev;
            sorted_indices = std::move(trial);
            record_if_best(current, *ev);
        }
    }
    if (!best) throw Error("local search visited no configuration satisfying the filters");
    best->enumerated = proposals;
    return *best;
}

} // namespace addcomb
