#include "addcomb/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "addcomb/bounds.hpp"
#include "addcomb/compression.hpp"
#include "addcomb/constructions.hpp"
#include "addcomb/errors.hpp"
#include "addcomb/io.hpp"
#include "addcomb/pointset_ops.hpp"
#include "addcomb/search.hpp"

namespace addcomb {

namespace {

using nlohmann::ordered_json;

std::vector<Coord> parse_int_vector(const std::string& text) {
    std::istringstream in(text);
    std::vector<Coord> v;
    std::string token;
    while (in >> token) {
        Coord value{};
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw ParseError("invalid integer '" + token + "' in vector");
        v.push_back(value);
    }
    if (v.empty()) throw ParseError("empty vector");
    return v;
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    auto to_i64 = [](const std::string& s) {
        std::int64_t value{};
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ParseError("invalid rational '" + s + "'");
        return value;
    };
    if (slash == std::string::npos) return Rat(to_i64(text));
    return Rat(to_i64(text.substr(0, slash)), to_i64(text.substr(slash + 1)));
}

ordered_json rat_json(const Rat& r) { return ordered_json{{"num", r.num()}, {"den", r.den()}}; }

std::string render_pointset(const PointSet& a, const std::string& format) {
    if (format == "json") return format_pointset_json(a);
    if (format == "csv") return format_pointset_csv(a);
    return format_pointset_text(a);
}

std::string join_coords(const Point& p, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) s += sep;
        s += std::to_string(p[i]);
    }
    return s;
}

ordered_json points_json(const PointSet& a) {
    auto rows = ordered_json::array();
    for (const Point& p : a) rows.push_back(p);
    return rows;
}

// fixed param column order for the CSV report row
const std::vector<std::string>& param_columns() {
    static const std::vector<std::string> cols = {"d",   "r",      "r1",     "r2",       "c",
                                                  "k",   "K_d",    "card_a", "card_b",   "card_diff"};
    return cols;
}

std::string report_csv_header() {
    std::string s = "kind,lhs,rhs_num,rhs_den,slack_num,slack_den,holds";
    for (const std::string& c : param_columns()) s += "," + c;
    return s + "\n";
}

std::string report_csv_row(const BoundReport& rep) {
    std::string s = to_string(rep.kind) + "," + std::to_string(rep.lhs) + "," +
                    std::to_string(rep.rhs.num()) + "," + std::to_string(rep.rhs.den()) + "," +
                    std::to_string(rep.slack.num()) + "," + std::to_string(rep.slack.den()) + "," +
                    (rep.holds ? "true" : "false");
    for (const std::string& c : param_columns()) {
        s += ",";
        for (const auto& [k, v] : rep.params)
            if (k == c) {
                s += std::to_string(v);
                break;
            }
    }
    return s + "\n";
}

ordered_json report_json(const BoundReport& rep) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    return ordered_json{{"kind", to_string(rep.kind)},
                        {"lhs", rep.lhs},
                        {"rhs", rat_json(rep.rhs)},
                        {"slack", rat_json(rep.slack)},
                        {"holds", rep.holds},
                        {"params", std::move(params)}};
}

std::string report_text(const BoundReport& rep) {
    std::string s = "kind=" + to_string(rep.kind) + " lhs=" + std::to_string(rep.lhs) +
                    " rhs=" + rep.rhs.str() + " slack=" + rep.slack.str() +
                    " holds=" + (rep.holds ? "true" : "false");
    for (const auto& [k, v] : rep.params) s += " " + k + "=" + std::to_string(v);
    return s + "\n";
}

ordered_json record_json(const ExtremalRecord& rec) {
    return ordered_json{{"points", points_json(rec.canonical)},
                        {"dim", rec.canonical.dim()},
                        {"value", rec.value},
                        {"slack", rat_json(rec.slack)},
                        {"severity", rec.violation ? "violation" : "ok"},
                        {"enumerated", rec.enumerated}};
}

struct Options {
    std::string format = "text";
    std::vector<std::string> inputs;
    std::vector<std::string> directions;
    std::string kind;
    bool all_kinds = false;
    std::string construct_kind;
    int d = 0;
    Coord height_n = 0;
    std::string sizes;
    Coord extent = 0;
    std::uint64_t count_n = 0;
    std::uint64_t seed = 0;
    // search
    std::string mode = "exhaustive";
    std::size_t n_lo = 0, n_hi = 0;
    std::string objective = "diff_size";
    bool no_dim_filter = false;
    bool symmetry = false;
    int workers = 1;
    std::uint64_t budget = 100'000'000ULL;
    std::size_t max_records = 8;
    std::uint64_t iterations = 0;
    bool timings = false;
    // witness
    bool dbdg = false;
    std::string threshold = "0";
    std::int64_t c_d = 1;
    std::int64_t epsilon_bound = 0;
};

Direction direction_arg(const Options& opt) {
    if (opt.directions.empty()) throw Error("--direction is required");
    return Direction(parse_int_vector(opt.directions.front()));
}

Objective objective_from_name(const std::string& name) {
    if (name == "diff_size") return Objective::raw();
    auto kind = bound_kind_from_string(name);
    if (!kind) throw Error("unknown objective '" + name + "'");
    return Objective::bound(*kind);
}

int cmd_pointset_result(const PointSet& r, const Options& opt, std::string& out) {
    out = render_pointset(r, opt.format);
    return 0;
}

int cmd_dim(const Options& opt, std::string& out) {
    int k = affine_dim(read_pointset_file(opt.inputs.at(0)));
    if (opt.format == "json")
        out = ordered_json{{"dim", k}}.dump() + "\n";
    else if (opt.format == "csv")
        out = "dim\n" + std::to_string(k) + "\n";
    else
        out = std::to_string(k) + "\n";
    return 0;
}

int cmd_project(const Options& opt, std::string& out) {
    PointSet a = read_pointset_file(opt.inputs.at(0));
    FiberPartition part = fiber_partition(a, direction_arg(opt));
    if (opt.format == "json") {
        auto fibers = ordered_json::array();
        for (const Fiber& f : part.fibers)
            fibers.push_back(ordered_json{{"key", f.key}, {"points", points_json(f.members)}});
        out = ordered_json{{"direction", part.direction.vec()},
                           {"fiber_count", part.fibers.size()},
                           {"fibers", std::move(fibers)}}
                  .dump() +
              "\n";
    } else if (opt.format == "csv") {
        out = "fiber," ;
        for (int i = 1; i <= a.dim(); ++i) out += "x" + std::to_string(i) + (i < a.dim() ? "," : "\n");
        for (std::size_t i = 0; i < part.fibers.size(); ++i)
            for (const Point& p : part.fibers[i].members)
                out += std::to_string(i) + "," + join_coords(p, ',') + "\n";
    } else {
        out = "# direction: " + join_coords(part.direction.vec()) + "\n";
        out += "# fibers: " + std::to_string(part.fibers.size()) + "\n";
        for (std::size_t i = 0; i < part.fibers.size(); ++i) {
            out += "# fiber " + std::to_string(i) + " key: " + join_coords(part.fibers[i].key) +
                   " size: " + std::to_string(part.fibers[i].members.size()) + "\n";
            out += format_pointset_text(part.fibers[i].members);
        }
    }
    return 0;
}

int cmd_compress(const Options& opt, std::string& out) {
    PointSet a = read_pointset_file(opt.inputs.at(0));
    if (opt.directions.empty()) throw Error("--direction is required");
    std::vector<CompressionDirection> seq;
    for (const std::string& s : opt.directions) seq.emplace_back(parse_int_vector(s));
    if (opt.format == "json") {
        auto steps = ordered_json::array();
        PointSet cur = a;
        for (const CompressionDirection& v : seq) {
            std::size_t before = cur.size();
            cur = compress(cur, v);
            steps.push_back(ordered_json{{"direction", v.vec()},
                                         {"before_size", before},
                                         {"after_set", points_json(cur)}});
        }
        out = steps.dump() + "\n";
        return 0;
    }
    return cmd_pointset_result(compress_seq(a, seq), opt, out);
}

int cmd_verify(const Options& opt, std::string& out) {
    PointSet a = read_pointset_file(opt.inputs.at(0));
    std::optional<PointSet> b;
    if (opt.inputs.size() > 1) b = read_pointset_file(opt.inputs.at(1));
    std::optional<Direction> v;
    if (!opt.directions.empty()) v = direction_arg(opt);

    std::vector<BoundReport> reports;
    if (opt.all_kinds) {
        for (BoundKind kind : all_bound_kinds()) {
            if (needs_b(kind) && !b) continue;
            if (needs_direction(kind) && !v) continue;
            try {
                reports.push_back(evaluate_bound(kind, a, b ? &*b : nullptr, v ? &*v : nullptr));
            } catch (const HypothesisError&) {
                // out-of-hypothesis kinds are not applicable; skip silently
            }
        }
    } else {
        auto kind = bound_kind_from_string(opt.kind);
        if (!kind) throw Error("unknown bound kind '" + opt.kind + "'");
        reports.push_back(evaluate_bound(*kind, a, b ? &*b : nullptr, v ? &*v : nullptr));
    }

    if (opt.format == "json") {
        if (opt.all_kinds) {
            auto arr = ordered_json::array();
            for (const BoundReport& rep : reports) arr.push_back(report_json(rep));
            out = arr.dump() + "\n";
        } else {
            out = report_json(reports.front()).dump() + "\n";
        }
    } else if (opt.format == "csv") {
        out = report_csv_header();
        for (const BoundReport& rep : reports) out += report_csv_row(rep);
    } else {
        for (const BoundReport& rep : reports) out += report_text(rep);
    }
    for (const BoundReport& rep : reports)
        if (is_proven(rep.kind) && !rep.holds) return 1;
    return 0;
}

int cmd_construct(const Options& opt, std::string& out) {
    PointSet r(1);
    if (opt.construct_kind == "simplex-line") {
        r = simplex_line(opt.d, opt.height_n);
    } else if (opt.construct_kind == "simplex-lines") {
        std::vector<Coord> sizes = parse_int_vector(opt.sizes);
        r = simplex_lines(opt.d, sizes);
    } else if (opt.construct_kind == "box") {
        r = box(opt.d, opt.extent);
    } else if (opt.construct_kind == "random-subset") {
        r = random_subset(opt.d, opt.count_n, opt.extent, opt.seed);
    } else {
        throw Error("unknown construction '" + opt.construct_kind + "'");
    }
    return cmd_pointset_result(r, opt, out);
}

int cmd_search(const Options& opt, std::string& out) {
    auto started = std::chrono::steady_clock::now();
    ordered_json j;
    std::vector<ExtremalRecord> records;
    std::uint64_t violations = 0;
    if (opt.mode == "local") {
        LocalSearchParams params;
        params.dim = opt.d;
        params.extent = opt.extent;
        params.n = opt.count_n;
        params.seed = opt.seed;
        params.iterations = opt.iterations;
        params.require_full_dim = !opt.no_dim_filter;
        params.objective = objective_from_name(opt.objective);
        ExtremalRecord rec = local_search(params);
        violations = rec.violation ? 1 : 0;
        j = ordered_json{{"mode", "local"},
                         {"space", ordered_json{{"dim", params.dim},
                                                {"extent", params.extent},
                                                {"n", params.n},
                                                {"seed", params.seed},
                                                {"iterations", params.iterations},
                                                {"dim_filter", params.require_full_dim},
                                                {"objective", to_string(params.objective)}}},
                         {"records", ordered_json::array({record_json(rec)})}};
        records.push_back(std::move(rec));
    } else if (opt.mode == "exhaustive") {
        SearchSpace space;
        space.dim = opt.d;
        space.extent = opt.extent;
        space.n_lo = opt.n_lo;
        space.n_hi = opt.n_hi;
        space.require_full_dim = !opt.no_dim_filter;
        space.objective = objective_from_name(opt.objective);
        space.symmetry_reduction = opt.symmetry;
        space.budget = opt.budget;
        space.max_records = opt.max_records;
        ScanResult res = exhaustive_scan(space, opt.workers);
        violations = res.violations;
        auto recs = ordered_json::array();
        for (const ExtremalRecord& rec : res.records) recs.push_back(record_json(rec));
        j = ordered_json{{"mode", "exhaustive"},
                         {"space", ordered_json{{"dim", space.dim},
                                                {"extent", space.extent},
                                                {"n_lo", space.n_lo},
                                                {"n_hi", space.n_hi},
                                                {"dim_filter", space.require_full_dim},
                                                {"symmetry_reduction", space.symmetry_reduction},
                                                {"objective", to_string(space.objective)},
                                                {"budget", space.budget},
                                                {"max_records", space.max_records}}},
                         {"workers", opt.workers},
                         {"enumerated", res.enumerated},
                         {"evaluated", res.evaluated},
                         {"violations", res.violations},
                         {"records", std::move(recs)}};
        records = std::move(res.records);
    } else {
        throw Error("unknown search mode '" + opt.mode + "'");
    }
    if (opt.timings) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        j["wall_ms"] = ms;
    }

    if (opt.format == "csv") {
        out = "value,slack_num,slack_den,severity,points\n";
        for (const ExtremalRecord& rec : records) {
            out += std::to_string(rec.value) + "," + std::to_string(rec.slack.num()) + "," +
                   std::to_string(rec.slack.den()) + "," + (rec.violation ? "violation" : "ok") +
                   ",\"";
            for (std::size_t i = 0; i < rec.canonical.size(); ++i) {
                if (i > 0) out += ';';
                out += join_coords(rec.canonical.points()[i]);
            }
            out += "\"\n";
        }
    } else if (opt.format == "text") {
        for (const ExtremalRecord& rec : records) {
            out += "slack=" + rec.slack.str() + " value=" + std::to_string(rec.value) +
                   " severity=" + (rec.violation ? "violation" : "ok") + " set=";
            for (std::size_t i = 0; i < rec.canonical.size(); ++i) {
                if (i > 0) out += ';';
                out += join_coords(rec.canonical.points()[i]);
            }
            out += "\n";
        }
    } else {
        out = j.dump() + "\n";
    }
    return violations > 0 ? 1 : 0;
}

int cmd_witness(const Options& opt, std::string& out) {
    if (opt.dbdg) {
        if (opt.inputs.size() != 4) throw Error("--dbdg needs A A1 A2 E");
        PointSet a = read_pointset_file(opt.inputs[0]);
        PointSet a1 = read_pointset_file(opt.inputs[1]);
        PointSet a2 = read_pointset_file(opt.inputs[2]);
        PointSet e = read_pointset_file(opt.inputs[3]);
        bool valid = dbdg_witness_check(a, a1, a2, e, direction_arg(opt), opt.epsilon_bound);
        if (opt.format == "json")
            out = ordered_json{{"valid", valid}}.dump() + "\n";
        else
            out = std::string(valid ? "valid" : "invalid") + "\n";
        return 0;
    }
    if (opt.inputs.size() != 2) throw Error("witness needs A and B");
    PointSet a = read_pointset_file(opt.inputs[0]);
    PointSet b = read_pointset_file(opt.inputs[1]);
    auto w = structure_witness(a, b, parse_rat(opt.threshold), opt.c_d);
    if (opt.format == "json") {
        ordered_json j{{"found", w.has_value()}};
        if (w) {
            j["direction"] = w->direction.vec();
            j["classification"] = w->classification;
        }
        out = j.dump() + "\n";
    } else {
        out = w ? "found direction=" + join_coords(w->direction.vec()) +
                      " classification=" + w->classification + "\n"
                : "none\n";
    }
    return 0;
}

int dispatch(CLI::App& app, Options& opt, std::string& out) {
    if (app.got_subcommand("sumset")) {
        PointSet a = read_pointset_file(opt.inputs.at(0));
        PointSet b = read_pointset_file(opt.inputs.at(1));
        return cmd_pointset_result(sumset(a, b), opt, out);
    }
    if (app.got_subcommand("diffset")) {
        PointSet a = read_pointset_file(opt.inputs.at(0));
        PointSet b = opt.inputs.size() > 1 ? read_pointset_file(opt.inputs.at(1)) : a;
        return cmd_pointset_result(difference_set(a, b), opt, out);
    }
    if (app.got_subcommand("restricted-diff")) {
        PointSet a = read_pointset_file(opt.inputs.at(0));
        PointSet b = opt.inputs.size() > 1 ? read_pointset_file(opt.inputs.at(1)) : a;
        return cmd_pointset_result(restricted_difference(a, b, direction_arg(opt)), opt, out);
    }
    if (app.got_subcommand("dim")) return cmd_dim(opt, out);
    if (app.got_subcommand("project")) return cmd_project(opt, out);
    if (app.got_subcommand("compress")) return cmd_compress(opt, out);
    if (app.got_subcommand("verify")) return cmd_verify(opt, out);
    if (app.got_subcommand("construct")) return cmd_construct(opt, out);
    if (app.got_subcommand("search")) return cmd_search(opt, out);
    if (app.got_subcommand("witness")) return cmd_witness(opt, out);
    throw Error("no subcommand");
}

} // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact point-set toolkit for difference-set lower bounds"};
    app.name("addcomb");
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
    };
    auto add_inputs = [&](CLI::App* sub, int min_n, int max_n) {
        sub->add_option("inputs", opt.inputs, "point set file(s)")
            ->expected(min_n, max_n)
            ->required();
    };
    auto add_direction = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--direction", opt.directions,
                                  "integer vector, e.g. \"0 0 1\" (repeatable where sensible)");
        if (required) o->required();
    };

    CLI::App* sub = app.add_subcommand("sumset", "Minkowski sum of two point sets");
    add_inputs(sub, 2, 2);
    add_format(sub);

    sub = app.add_subcommand("diffset", "difference set A-B (A-A with one input)");
    add_inputs(sub, 1, 2);
    add_format(sub);

    sub = app.add_subcommand("restricted-diff", "difference set minus the line through v");
    add_inputs(sub, 1, 2);
    add_direction(sub, true);
    add_format(sub);

    sub = app.add_subcommand("dim", "affine dimension of a point set");
    add_inputs(sub, 1, 1);
    add_format(sub);

    sub = app.add_subcommand("project", "fiber partition along a direction");
    add_inputs(sub, 1, 1);
    add_direction(sub, true);
    add_format(sub);

    sub = app.add_subcommand("compress", "compression along one or more W-directions");
    add_inputs(sub, 1, 1);
    add_direction(sub, true);
    add_format(sub);

    sub = app.add_subcommand("verify", "evaluate a named bound exactly");
    add_inputs(sub, 1, 2);
    sub->add_option("--kind", opt.kind, "bound kind");
    sub->add_flag("--all", opt.all_kinds, "run every applicable kind");
    add_direction(sub, false);
    add_format(sub);

    sub = app.add_subcommand("construct", "generate a named configuration");
    sub->add_option("kind", opt.construct_kind,
                    "simplex-line | simplex-lines | box | random-subset")
        ->required();
    sub->add_option("--d", opt.d, "dimension")->required();
    sub->add_option("--N", opt.height_n, "line length (simplex-line)");
    sub->add_option("--sizes", opt.sizes, "per-line lengths (simplex-lines)");
    sub->add_option("--m", opt.extent, "box extent");
    sub->add_option("--n", opt.count_n, "subset size (random-subset)");
    sub->add_option("--seed", opt.seed, "random seed (mandatory for random kinds)");
    add_format(sub);

    sub = app.add_subcommand("search", "extremal search over a small universe");
    sub->add_option("--mode", opt.mode, "exhaustive | local")->capture_default_str();
    sub->add_option("--d", opt.d, "dimension")->required();
    sub->add_option("--m", opt.extent, "box extent")->required();
    sub->add_option("--n-lo", opt.n_lo, "least cardinality (exhaustive)");
    sub->add_option("--n-hi", opt.n_hi, "greatest cardinality (exhaustive)");
    sub->add_option("--n", opt.count_n, "cardinality (local)");
    sub->add_option("--objective", opt.objective, "diff_size or a unary bound kind")
        ->capture_default_str();
    sub->add_flag("--no-dim-filter", opt.no_dim_filter, "drop the dim = d filter");
    sub->add_flag("--symmetry", opt.symmetry, "one candidate per box-symmetry class");
    sub->add_option("--workers", opt.workers, "parallel workers")->capture_default_str();
    sub->add_option("--budget", opt.budget, "candidate budget")->capture_default_str();
    sub->add_option("--max-records", opt.max_records, "record list cap")->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed (local)");
    sub->add_option("--iterations", opt.iterations, "proposals (local)");
    sub->add_flag("--timings", opt.timings, "include wall time (breaks byte-stability)");
    add_format(sub);

    sub = app.add_subcommand("witness", "structure witnesses");
    add_inputs(sub, 2, 4);
    sub->add_flag("--dbdg", opt.dbdg, "check a two-hyperplane decomposition A A1 A2 E");
    sub->add_option("--threshold", opt.threshold, "rational threshold p/q")->capture_default_str();
    sub->add_option("--cd", opt.c_d, "constant C_d for the bounded-projections branch")
        ->capture_default_str();
    sub->add_option("--epsilon-bound", opt.epsilon_bound, "|E| budget (dbdg)");
    add_direction(sub, false);
    add_format(sub);

    CliResult result;
    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());  // CLI11 consumes a reversed vector
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out_stream, err_stream;
        int code = app.exit(e, out_stream, err_stream);
        result.out = out_stream.str();
        result.err = err_stream.str();
        result.exit_code = code == 0 ? 0 : 2;
        return result;
    }

    try {
        // search defaults to the JSON report; everything else to text
        if (app.got_subcommand("search") && !app.get_subcommand("search")->count("--format"))
            opt.format = "json";
        if (app.got_subcommand("search") && opt.mode == "local" &&
            !app.get_subcommand("search")->count("--seed"))
            throw Error("--seed is mandatory for local search");
        if (app.got_subcommand("construct") && opt.construct_kind == "random-subset" &&
            !app.get_subcommand("construct")->count("--seed"))
            throw Error("--seed is mandatory for random-subset");
        if (app.got_subcommand("verify") && !opt.all_kinds && opt.kind.empty())
            throw Error("verify needs --kind or --all");
        result.exit_code = dispatch(app, opt, result.out);
    } catch (const ParseError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 3;
    } catch (const HypothesisError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    } catch (const Error& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    }
    return result;
}

} // namespace addcomb
