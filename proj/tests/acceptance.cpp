// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is exact (rational comparisons, never floating
// point); randomized sections use fixed seeds so runs are reproducible.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "addcomb/bounds.hpp"
#include "addcomb/cli.hpp"
#include "addcomb/compression.hpp"
#include "addcomb/constructions.hpp"
#include "addcomb/errors.hpp"
#include "addcomb/io.hpp"
#include "addcomb/pointset_ops.hpp"
#include "addcomb/rng.hpp"
#include "addcomb/search.hpp"
#include "oracles.hpp"
#include "pipeline_samplers.hpp"

using namespace addcomb;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& text) { g_notes.push_back(text); }

void expect(bool cond, const std::string& what) {
    if (!cond) {
        ++g_failures;
        note("    violated: " + what);
    }
}

void run_criterion(int number, const std::string& title, const std::function<void()>& body) {
    const int before = g_failures;
    g_notes.clear();
    auto start = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        ++g_failures;
        note(std::string("    exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("[%s] criterion %d: %s (%lld ms)\n", g_failures == before ? "PASS" : "FAIL",
                number, title.c_str(), static_cast<long long>(ms));
    for (const std::string& n : g_notes) std::printf("%s\n", n.c_str());
    std::fflush(stdout);
}

// --- criterion 1 -------------------------------------------------------------

void criterion_equality_families() {
    for (int d = 2; d <= 5; ++d) {
        for (Coord n = 2; n <= 8; ++n) {
            PointSet a = simplex_line(d, n);
            const std::int64_t twonm1 = 2 * n - 1;
            expect(static_cast<std::int64_t>(sumset(a, a).size()) == d * (d + 1) / 2 * twonm1,
                   "|A+A| closed form at d=" + std::to_string(d) + " N=" + std::to_string(n));
            expect(static_cast<std::int64_t>(difference_set(a, a).size()) ==
                       (d * d - d + 1) * twonm1,
                   "|A-A| closed form at d=" + std::to_string(d) + " N=" + std::to_string(n));
            Direction ed(unit_point(d, d - 1));
            expect(static_cast<std::int64_t>(restricted_difference(a, a, ed).size()) ==
                       d * (d - 1) * twonm1,
                   "|(A-A)\\L| closed form at d=" + std::to_string(d) + " N=" + std::to_string(n));
            BoundReport freiman = evaluate_bound(BoundKind::freiman_sumset, a);
            expect(freiman.slack == Rat(0), "Freiman slack 0 at d=" + std::to_string(d) +
                                                " N=" + std::to_string(n));
        }
    }
    BoundReport cube = evaluate_bound(BoundKind::stanchescu_3d, box(3, 1));
    expect(cube.lhs == 27 && cube.rhs == Rat(27) && cube.slack == Rat(0),
           "stanchescu_3d exact equality on {0,1}^3");
}

// --- criterion 2 -------------------------------------------------------------

void criterion_exhaustive_planar() {
    // every A in {0,1,2}^2 with dim(A) = 2: fhu_difference, conjecture (d=2),
    // and diffln over every primitive difference direction
    PointSet universe = box(2, 2);
    const std::size_t u = universe.size();
    std::uint64_t scanned = 0;
    for (std::uint64_t mask = 1; mask < (1ULL << u); ++mask) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < u; ++i)
            if (mask & (1ULL << i)) pts.push_back(universe.points()[i]);
        PointSet a = PointSet::from_sorted_unique(2, std::move(pts));
        if (affine_dim(a) != 2) continue;
        ++scanned;
        expect(evaluate_bound(BoundKind::fhu_difference, a).holds, "fhu holds on planar scan");
        expect(evaluate_bound(BoundKind::conjecture, a).holds,
               "conjecture (= fhu at d=2) holds on planar scan");
        std::set<Point> dirs;
        const auto& ap = a.points();
        for (std::size_t i = 0; i < ap.size(); ++i)
            for (std::size_t j = i + 1; j < ap.size(); ++j)
                dirs.insert(Direction(point_sub(ap[j], ap[i])).vec());
        for (const Point& dv : dirs) {
            Direction v(dv);
            expect(evaluate_bound(BoundKind::diffln, a, nullptr, &v).holds,
                   "diffln holds on planar scan");
        }
    }
    expect(scanned > 0 && scanned <= 512, "planar scan size within the stated budget");
}

void criterion_exhaustive_3d() {
    for (BoundKind kind : {BoundKind::stanchescu_3d, BoundKind::fhu_difference}) {
        SearchSpace space;
        space.dim = 3;
        space.extent = 2;
        space.n_lo = 4;
        space.n_hi = 7;
        space.objective = Objective::bound(kind);
        ScanResult single = exhaustive_scan(space, 1);
        expect(single.violations == 0,
               "zero violations of " + to_string(kind) + " over {0,1,2}^3, |A| <= 7");
        ScanResult quad = exhaustive_scan(space, 4);
        expect(quad.violations == single.violations && quad.evaluated == single.evaluated &&
                   quad.enumerated == single.enumerated,
               "4-worker scan counters match for " + to_string(kind));
        expect(quad.records.size() == single.records.size(), "4-worker record count matches");
        for (std::size_t i = 0; i < quad.records.size() && i < single.records.size(); ++i)
            expect(quad.records[i].canonical == single.records[i].canonical &&
                       quad.records[i].slack == single.records[i].slack,
                   "4-worker records match for " + to_string(kind));
    }
}

// --- criterion 3 -------------------------------------------------------------

PointSet random_box_set(SplitMix64& rng, int d, Coord extent, std::size_t max_n) {
    return oracles::random_pointset(rng, d, extent, max_n);
}

void criterion_randomized_bounds() {
    const int kRounds = 10000;
    for (int d = 2; d <= 4; ++d) {
        SplitMix64 rng(1000 + static_cast<std::uint64_t>(d));

        int done = 0;
        while (done < kRounds) {  // ruzsa_asymmetric
            PointSet a = random_box_set(rng, d, 3, 10);
            PointSet b = random_box_set(rng, d, 3, 10);
            if (a.size() < b.size()) std::swap(a, b);
            try {
                if (!evaluate_bound(BoundKind::ruzsa_asymmetric, a, &b).holds) {
                    expect(false, "ruzsa_asymmetric violated at d=" + std::to_string(d));
                    return;
                }
                ++done;
            } catch (const HypothesisError&) {
            }
        }

        done = 0;
        while (done < kRounds) {  // mn2 and its specializations
            PointSet a = random_box_set(rng, d, 3, 10);
            PointSet b = random_box_set(rng, d, 3, 10);
            if (a.size() < b.size()) std::swap(a, b);
            Point vr(static_cast<std::size_t>(d), 0);
            vr[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(d)))] = 1;
            if (rng.below(4) == 0)
                vr[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(d)))] += 1;
            Direction v(vr);
            BoundReport base;
            try {
                base = evaluate_bound(BoundKind::mn2, a, &b, &v);
            } catch (const HypothesisError&) {
                continue;
            }
            if (!base.holds) {
                expect(false, "mn2 violated at d=" + std::to_string(d));
                return;
            }
            std::int64_t r2 = static_cast<std::int64_t>(fiber_count(b, v));
            if (r2 >= d) {
                BoundReport spec = evaluate_bound(BoundKind::rszgn, a, &b, &v);
                if (!(spec.rhs == base.rhs && spec.slack == base.slack)) {
                    expect(false, "rszgn disagrees with mn2");
                    return;
                }
            } else if (b.size() >= 2) {
                BoundReport spec = evaluate_bound(BoundKind::rszgn2, a, &b, &v);
                if (!(spec.rhs == base.rhs && spec.slack == base.slack)) {
                    expect(false, "rszgn2 disagrees with mn2");
                    return;
                }
            }
            ++done;
        }

        if (d == 2) {
            done = 0;
            while (done < kRounds) {  // gs_planar
                PointSet a = random_box_set(rng, 2, 3, 10);
                PointSet b = random_box_set(rng, 2, 3, 10);
                Point vr{static_cast<Coord>(rng.below(3)), static_cast<Coord>(rng.below(3))};
                if (point_is_zero(vr)) vr[0] = 1;
                Direction v(vr);
                if (!evaluate_bound(BoundKind::gs_planar, a, &b, &v).holds) {
                    expect(false, "gs_planar violated");
                    return;
                }
                ++done;
            }
        }

        done = 0;
        while (done < kRounds) {  // d12: B on one line parallel to v
            PointSet a = random_box_set(rng, d, 3, 10);
            Point vr(static_cast<std::size_t>(d), 0);
            vr[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(d)))] = 1;
            Direction v(vr);
            Point base(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                base[static_cast<std::size_t>(i)] = static_cast<Coord>(rng.below(4));
            std::vector<Point> bpts;
            std::size_t len = 1 + rng.below(4);
            for (std::size_t j = 0; j < len; ++j)
                bpts.push_back(point_add(base, point_scale(static_cast<Coord>(j), v.vec())));
            PointSet b = PointSet::of(d, std::move(bpts));
            if (!evaluate_bound(BoundKind::d12, a, &b, &v).holds) {
                expect(false, "d12 violated at d=" + std::to_string(d));
                return;
            }
            ++done;
        }

        done = 0;
        while (done < kRounds) {  // ruzsa_triangle and trivial_sum
            PointSet a = random_box_set(rng, d, 3, 10);
            PointSet b = random_box_set(rng, d, 3, 10);
            if (!evaluate_bound(BoundKind::ruzsa_triangle, a, &b).holds) {
                expect(false, "ruzsa_triangle violated at d=" + std::to_string(d));
                return;
            }
            if (!evaluate_bound(BoundKind::trivial_sum, a, &b).holds) {
                expect(false, "trivial_sum violated at d=" + std::to_string(d));
                return;
            }
            ++done;
        }
    }
}

// --- criterion 4 -------------------------------------------------------------

void criterion_compression_properties() {
    const int kRounds = 10000;
    SplitMix64 rng(2024);
    for (int round = 0; round < kRounds; ++round) {
        int d = 2 + static_cast<int>(rng.below(2));
        PointSet a = random_box_set(rng, d, 3, 12);
        PointSet b = random_box_set(rng, d, 3, 12);
        Point w(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            w[static_cast<std::size_t>(i)] = static_cast<Coord>(rng.below(3));
        w[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(d)))] = -1;
        CompressionDirection v(w);

        PointSet ca = compress(a, v);
        PointSet cb = compress(b, v);
        if (ca.size() != a.size() || cb.size() != b.size()) {
            expect(false, "compression changed a cardinality");
            return;
        }
        if (!(compress(ca, v) == ca)) {
            expect(false, "compression is not idempotent");
            return;
        }
        if (sumset(ca, cb).size() > sumset(a, b).size()) {
            expect(false, "joint compression grew a sumset");
            return;
        }
    }

    // projection preservation: u = -e_i first, then directions in H_u
    SplitMix64 rng2(2025);
    for (int round = 0; round < kRounds / 10; ++round) {
        int d = 2 + static_cast<int>(rng2.below(2));
        PointSet a = random_box_set(rng2, d, 3, 12);
        int axis = static_cast<int>(rng2.below(static_cast<std::uint64_t>(d)));
        Direction axis_dir(unit_point(d, axis));
        std::size_t want = fiber_count(a, axis_dir);
        Point u = zero_point(d);
        u[static_cast<std::size_t>(axis)] = -1;
        PointSet cur = compress(a, CompressionDirection(u));
        bool ok = fiber_count(cur, axis_dir) == want;
        for (int step = 0; step < 3 && ok; ++step) {
            Point w(static_cast<std::size_t>(d), 0);
            for (int i = 0; i < d; ++i)
                if (i != axis) w[static_cast<std::size_t>(i)] = static_cast<Coord>(rng2.below(3));
            std::size_t piv;
            do {
                piv = static_cast<std::size_t>(rng2.below(static_cast<std::uint64_t>(d)));
            } while (static_cast<int>(piv) == axis);
            w[piv] = -1;
            cur = compress(cur, CompressionDirection(w));
            ok = fiber_count(cur, axis_dir) == want;
        }
        if (!ok) {
            expect(false, "projection count not preserved by an orthogonal sequence");
            return;
        }
    }

    // structure preservation for scaled translated corners
    SplitMix64 rng3(2026);
    for (int round = 0; round < kRounds / 10; ++round) {
        int d = 2 + static_cast<int>(rng3.below(2));
        int k = 1 + static_cast<int>(rng3.below(static_cast<std::uint64_t>(d)));
        Coord m = 1 + static_cast<Coord>(rng3.below(2));
        Point t(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            t[static_cast<std::size_t>(i)] = static_cast<Coord>(rng3.below(3));
        std::vector<Point> pts{t};
        for (int j = 0; j < k; ++j) pts.push_back(point_add(t, point_scale(m, unit_point(d, j))));
        for (const Point& p : random_box_set(rng3, d, 3, 8)) pts.push_back(p);
        PointSet a = PointSet::of(d, std::move(pts));

        Point tail = t;
        for (int j = 0; j < k; ++j) tail[static_cast<std::size_t>(j)] = 0;
        std::vector<CompressionDirection> seq;
        for (int j = 0; j < k; ++j) {
            Point v = zero_point(d);
            v[static_cast<std::size_t>(j)] = -1;
            seq.emplace_back(v);
        }
        PointSet c = compress_seq(a, seq);
        bool ok = c.contains(tail);
        for (int j = 0; j < k && ok; ++j) ok = c.contains(point_add(tail, unit_point(d, j)));
        for (int j = k; j < d; ++j) {
            Point v = zero_point(d);
            v[static_cast<std::size_t>(j)] = -1;
            seq.emplace_back(v);
        }
        PointSet full = compress_seq(a, seq);
        ok = ok && full.contains(zero_point(d));
        for (int j = 0; j < k && ok; ++j) ok = full.contains(unit_point(d, j));
        if (!ok) {
            expect(false, "scaled corner structure not preserved");
            return;
        }
    }
}

// --- criterion 5 -------------------------------------------------------------

void criterion_pipelines() {
    for (int d : {3, 4}) {
        SplitMix64 rng(3000 + static_cast<std::uint64_t>(d));
        for (int round = 0; round < 500; ++round) {
            auto inst = samplers::make_cmp1_instance(rng, d, 8);
            NormalizedPair out = normalize_pair_cmp1(inst.a, inst.b, inst.scale);
            Direction ed(unit_point(d, d - 1));
            bool ok = out.a.size() == inst.a.size() && out.b.size() == inst.b.size() &&
                      is_down_set(out.a) && is_down_set(out.b) &&
                      fiber_count(out.a, ed) == fiber_count(inst.a, ed) &&
                      fiber_count(out.b, ed) == fiber_count(inst.b, ed);
            PointSet s = sumset(out.a, out.b);
            ok = ok && s.size() <= sumset(inst.a, inst.b).size() && affine_dim(s) == d;
            if (ok) {
                // one of the three structural alternatives
                Point e = unit_point(d - 1, d - 2);
                auto drop = [&](const PointSet& x) {
                    std::vector<Point> pp;
                    for (const Point& p : x) pp.emplace_back(p.begin(), p.end() - 1);
                    return PointSet::of(d - 1, std::move(pp));
                };
                PointSet uproj = drop(out.a);
                PointSet vproj = drop(out.b);
                auto off = [&](const PointSet& x) {
                    std::vector<Point> r;
                    for (const Point& p : x)
                        if (p[static_cast<std::size_t>(d - 2)] != 0) r.push_back(p);
                    return r;
                };
                auto off_u = off(uproj), off_v = off(vproj);
                bool alt_a = off_u.empty() && off_v.size() == 1 && off_v[0] == e;
                bool alt_b = off_v.empty() && off_u.size() == 1 && off_u[0] == e;
                bool alt_c = off_u.size() == 1 && off_u[0] == e && uproj == vproj;
                ok = alt_a || alt_b || alt_c;
            }
            if (!ok) {
                expect(false, "cmp1 postcondition failed at d=" + std::to_string(d));
                return;
            }
        }

        int done = 0;
        while (done < 500) {
            auto inst = samplers::make_tmb_instance(rng, d, 8);
            if (!inst) continue;
            NormalizedPair out = normalize_pair_tmb(inst->a, inst->b, inst->v);
            const int k = affine_dim(inst->b);
            Direction e1(unit_point(d, 0));
            bool ok = out.a.size() == inst->a.size() && out.b.size() == inst->b.size() &&
                      is_down_set(out.a) && is_down_set(out.b) && affine_dim(out.b) == k &&
                      fiber_count(out.a, e1) == fiber_count(inst->a, inst->v) &&
                      fiber_count(out.b, e1) == fiber_count(inst->b, inst->v) &&
                      sumset(out.a, out.b).size() <= sumset(inst->a, inst->b).size();
            if (ok) {
                for (const Point& p : out.b)
                    for (int j = k; j < d && ok; ++j) ok = p[static_cast<std::size_t>(j)] == 0;
                for (int j = 0; j < k && ok; ++j) ok = out.b.contains(unit_point(d, j));
                std::vector<Point> outside;
                for (const Point& p : out.a) {
                    bool flat = true;
                    for (int j = k; j < d; ++j)
                        if (p[static_cast<std::size_t>(j)] != 0) flat = false;
                    if (!flat) outside.push_back(p);
                }
                ok = ok && outside.size() == static_cast<std::size_t>(d - k);
                for (int j = k; j < d && ok; ++j)
                    ok = std::find(outside.begin(), outside.end(), unit_point(d, j)) !=
                         outside.end();
            }
            if (!ok) {
                expect(false, "tmb postcondition failed at d=" + std::to_string(d));
                return;
            }
            ++done;
        }
    }
}

// --- criterion 6 -------------------------------------------------------------

void criterion_conjecture_finding() {
    BoundReport rep = evaluate_bound(BoundKind::conjecture, box(4, 1));
    expect(rep.slack == Rat(-4, 3), "conjecture slack on {0,1}^4 is exactly -4/3");
    expect(!rep.holds, "conjecture reported as not holding on {0,1}^4");

    SearchSpace space;
    space.dim = 4;
    space.extent = 1;
    space.n_lo = 16;
    space.n_hi = 16;
    space.objective = Objective::bound(BoundKind::conjecture);
    ScanResult res = exhaustive_scan(space);
    expect(res.enumerated == 1 && res.records.size() == 1, "single-candidate scan shape");
    if (!res.records.empty()) {
        expect(res.records[0].slack == Rat(-4, 3), "scan reproduces the -4/3 slack");
        expect(!res.records[0].violation, "unproven kind is a finding, not a violation");
    }
    expect(res.violations == 0, "no proven-bound violation is reported");
}

// --- criterion 7 -------------------------------------------------------------

void criterion_determinism() {
    SearchSpace space;
    space.dim = 2;
    space.extent = 2;
    space.n_lo = 3;
    space.n_hi = 6;
    space.objective = Objective::bound(BoundKind::fhu_difference);
    ScanResult base = exhaustive_scan(space, 1);
    for (int workers : {2, 8}) {
        ScanResult res = exhaustive_scan(space, workers);
        bool same = res.enumerated == base.enumerated && res.evaluated == base.evaluated &&
                    res.violations == base.violations && res.records.size() == base.records.size();
        for (std::size_t i = 0; same && i < res.records.size(); ++i)
            same = res.records[i].canonical == base.records[i].canonical &&
                   res.records[i].slack == base.records[i].slack &&
                   res.records[i].value == base.records[i].value;
        expect(same, "scan identical at " + std::to_string(workers) + " workers");
    }

    auto dir = std::filesystem::temp_directory_path() / "addcomb_acceptance";
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
        return (dir / name).string();
    };
    std::string cube = write("cube.pts", format_pointset_text(box(3, 1)));
    std::vector<std::vector<std::string>> invocations = {
        {"diffset", cube, "--format", "json"},
        {"verify", "--all", cube, cube, "--direction", "0 0 1", "--format", "csv"},
        {"construct", "simplex-line", "--d", "3", "--N", "4", "--format", "json"},
        {"compress", cube, "--direction", "-1 0 0", "--direction", "0 -1 1", "--format", "json"},
        {"project", cube, "--direction", "1 1 1", "--format", "json"},
        {"search", "--d", "2", "--m", "2", "--n-lo", "3", "--n-hi", "5", "--objective",
         "fhu_difference", "--workers", "2"},
        {"search", "--mode", "local", "--d", "2", "--m", "3", "--n", "5", "--seed", "11",
         "--iterations", "200"},
    };
    for (const auto& args : invocations) {
        CliResult first = run_cli(args);
        CliResult second = run_cli(args);
        expect(first.exit_code == second.exit_code && first.out == second.out &&
                   first.err == second.err,
               "CLI byte-stable: " + args[0]);
        expect(first.exit_code == 0, "CLI invocation succeeds: " + args[0]);
    }
    std::filesystem::remove_all(dir);
}

// --- criterion 8 -------------------------------------------------------------

void criterion_oracles() {
    SplitMix64 rng(4040);
    for (int round = 0; round < 1000; ++round) {
        int d = 1 + static_cast<int>(rng.below(3));
        PointSet a = oracles::random_pointset(rng, d, 3, 12);

        if (affine_dim(a) != oracles::affine_dim_oracle(a)) {
            expect(false, "affine_dim disagrees with the rational-elimination oracle");
            return;
        }

        Point v(static_cast<std::size_t>(d), 0);
        do {
            for (int i = 0; i < d; ++i)
                v[static_cast<std::size_t>(i)] = static_cast<Coord>(rng.below(5)) - 2;
        } while (point_is_zero(v));
        if (fiber_partition(a, Direction(v)).fibers.size() != oracles::fiber_oracle(a, v).size()) {
            expect(false, "fiber_partition disagrees with the pairwise oracle");
            return;
        }

        Point w(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            w[static_cast<std::size_t>(i)] = static_cast<Coord>(rng.below(3));
        int piv = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        w[static_cast<std::size_t>(piv)] = -1;
        if (!(compress(a, CompressionDirection(w)) == oracles::compress_oracle(a, w, piv))) {
            expect(false, "compress disagrees with the section-definition oracle");
            return;
        }
    }
}

} // namespace

int main() {
    std::printf("acceptance suite (exact tolerances, fixed seeds)\n");
    run_criterion(1, "equality families: simplex-line closed forms, Stanchescu cube",
                  criterion_equality_families);
    run_criterion(2, "exhaustive proven-bound scan: {0,1,2}^2, dim 2", criterion_exhaustive_planar);
    run_criterion(2, "exhaustive proven-bound scan: {0,1,2}^3, |A| <= 7, workers 1 vs 4",
                  criterion_exhaustive_3d);
    run_criterion(3, "randomized proven-bound scans, 10^4 per kind and dimension",
                  criterion_randomized_bounds);
    run_criterion(4, "compression properties, 10^4 random triples", criterion_compression_properties);
    run_criterion(5, "pipeline postconditions, 10^3 instances per pipeline", criterion_pipelines);
    run_criterion(6, "finite-size conjecture finding pinned at -4/3", criterion_conjecture_finding);
    run_criterion(7, "determinism: worker counts and CLI byte-stability", criterion_determinism);
    run_criterion(8, "oracle equivalence, 10^3 instances per oracle pair", criterion_oracles);

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d check(s) failed\n", g_failures);
    return 1;
}
