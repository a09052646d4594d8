#include "pwlfix/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwlfix/bcb.hpp"
#include "pwlfix/io.hpp"
#include "pwlfix/verify.hpp"

namespace pwlfix {
namespace {

using nlohmann::json;

std::string human_vec(const Vec<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

std::string human_vec(const Vec<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += ", ";
        s += scalar_traits<double>::str(v[i]);
    }
    return s + ")";
}

json json_vec(const Vec<Rational>& v) {
    json arr = json::array();
    for (const Rational& x : v) arr.push_back(x.str());
    return arr;
}

json json_vec(const Vec<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

const char* kind_name(PointKind k) { return k == PointKind::Isolated ? "isolated" : "on_line"; }

std::string human_t_range(const TRange& r) {
    switch (r.kind) {
        case TRangeKind::All: return "t in R";
        case TRangeKind::AtMost: return "t <= " + r.bound.str();
        case TRangeKind::AtLeast: return "t >= " + r.bound.str();
    }
    return "?";
}

json json_t_range(const TRange& r) {
    json obj;
    switch (r.kind) {
        case TRangeKind::All: obj["kind"] = "all"; break;
        case TRangeKind::AtMost: obj["kind"] = "at_most"; break;
        case TRangeKind::AtLeast: obj["kind"] = "at_least"; break;
    }
    if (r.kind != TRangeKind::All) obj["bound"] = r.bound.str();
    return obj;
}

json json_witnesses(const FixedPointSet& set) {
    json obj;
    json points = json::array();
    for (const FixedPoint& fp : set.points)
        points.push_back({{"point", json_vec(fp.point)}, {"side", side_name(fp.side)}, {"kind", kind_name(fp.kind)}});
    json lines = json::array();
    for (const FixedLine& line : set.lines)
        lines.push_back({{"base", json_vec(line.base)},
                         {"direction", json_vec(line.direction)},
                         {"side", side_name(line.side)},
                         {"t_range", json_t_range(line.t_range)}});
    obj["points"] = std::move(points);
    obj["lines"] = std::move(lines);
    obj["notes"] = set.notes;
    return obj;
}

void print_witnesses(const FixedPointSet& set, std::ostream& out) {
    for (const FixedPoint& fp : set.points)
        out << "fixed point " << human_vec(fp.point) << " [" << side_name(fp.side) << ", " << kind_name(fp.kind)
            << "]\n";
    for (const FixedLine& line : set.lines)
        out << "fixed line: base " << human_vec(line.base) << " + t * " << human_vec(line.direction) << " ["
            << side_name(line.side) << " piece], " << human_t_range(line.t_range) << "\n";
    for (const std::string& note : set.notes) out << "note: " << note << "\n";
}

char symbol_letter(Side s) {
    switch (s) {
        case Side::Left: return 'L';
        case Side::Boundary: return 'B';
        case Side::Right: return 'R';
    }
    return '?';
}

void emit(std::ostream& out, const std::string& text, const std::string& out_path, std::ostream& console,
          const std::string& wrote_what) {
    if (out_path.empty()) {
        out << text;
    } else {
        write_text_file(out_path, text);
        console << "wrote " << wrote_what << " to " << out_path << "\n";
    }
}

// ---------------------------------------------------------------------------

struct Options {
    std::string map_path;
    std::string out_path;
    std::string x0;
    std::string radius = "100000000";
    std::string mu_from, mu_to;
    std::string left_path, right_path;
    long steps = 1000;
    int max_period = 6;
    int period_limit = 20;
    int grid = 11;
    int n = 2;
    int trials = 100;
    int numerator_bound = 10;
    int denominator_bound = 10;
    std::uint64_t seed = 0;
    bool json_mode = false;
};

int do_classify(const Options& opt, std::ostream& out) {
    const LoadedMap loaded = load_map_file(opt.map_path);
    const PwlMap<Rational> map = loaded.to_exact();
    const Classification cls = classify(map);
    const PieceData<Rational>& pd = cls.diagnostics;

    if (opt.json_mode) {
        json doc;
        doc["command"] = "classify";
        doc["backend"] = loaded.is_float ? "float" : "rational";
        doc["verdict"] = verdict_name(cls.verdict);
        doc["u"] = json_vec(pd.u);
        doc["s"] = pd.s.str();
        doc["det_minus"] = pd.det_minus.str();
        doc["det_plus"] = pd.det_plus.str();
        doc["p_full_rank"] = pd.p_full_rank;
        if (cls.certificate)
            doc["certificate"] = {{"u", json_vec(cls.certificate->u)}, {"s", cls.certificate->s.str()}};
        doc["witnesses"] = json_witnesses(cls.witnesses);
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "verdict: " << verdict_name(cls.verdict) << "\n";
    if (loaded.is_float) out << "note: float input converted exactly to rationals for classification\n";
    out << "u = " << human_vec(pd.u) << ", s = " << pd.s << "\n";
    out << "det(M-) = " << pd.det_minus << ", det(M+) = " << pd.det_plus << "\n";
    switch (cls.verdict) {
        case Verdict::NondegeneracyFails: {
            out << "nondegeneracy fails: u = 0; Theorem inapplicable; ";
            if (cls.witnesses.empty()) out << "no fixed points found\n";
            else
                out << cls.witnesses.points.size() << " fixed point(s) and " << cls.witnesses.lines.size()
                    << " fixed line(s) found (no general existence claim)\n";
            print_witnesses(cls.witnesses, out);
            break;
        }
        case Verdict::FixedPointExists: {
            print_witnesses(cls.witnesses, out);
            break;
        }
        case Verdict::AllOrbitsDiverge: {
            out << "certificate: u^T f(x) >= u^T x + s for all x, with u = " << human_vec(cls.certificate->u)
                << ", s = " << cls.certificate->s << " (sign-normalized)\n";
            out << "no fixed points or periodic orbits exist; every orbit diverges\n";
            break;
        }
    }
    return 0;
}

int do_fixed_points(const Options& opt, std::ostream& out) {
    const LoadedMap loaded = load_map_file(opt.map_path);
    const FixedPointSet set = fixed_points(loaded.to_exact());

    if (opt.json_mode) {
        json doc = json_witnesses(set);
        doc["command"] = "fixed-points";
        out << doc.dump(2) << "\n";
        return 0;
    }

    if (set.empty() && set.notes.empty()) {
        out << "no fixed points\n";
        return 0;
    }
    out << set.points.size() << " fixed point(s), " << set.lines.size() << " fixed line(s)\n";
    print_witnesses(set, out);
    return 0;
}

int do_simulate(const Options& opt, std::ostream& out) {
    const LoadedMap loaded = load_map_file(opt.map_path);
    const int n = loaded.dim();
    const Vec<Rational> x0 = parse_vector_tokens(opt.x0, n);
    const Rational radius = parse_rational(opt.radius);

    if (loaded.is_float) {
        Vec<double> x0f(n);
        for (int i = 0; i < n; ++i) x0f[i] = x0[i].to_double();
        const Orbit<double> orbit = simulate(loaded.approx(), x0f, opt.steps, radius.to_double());
        if (opt.json_mode) {
            json doc;
            doc["command"] = "simulate";
            doc["backend"] = "float";
            doc["verdict"] = orbit_verdict_name(orbit.verdict);
            if (orbit.verdict == OrbitVerdict::PeriodicDetected) doc["period"] = orbit.period;
            if (orbit.verdict != OrbitVerdict::Undetermined) doc["step"] = orbit.step;
            json pts = json::array();
            for (const Vec<double>& p : orbit.points) pts.push_back(json_vec(p));
            doc["points"] = std::move(pts);
            if (!orbit.certificate_values.empty()) doc["certificate_values"] = orbit.certificate_values;
            out << doc.dump(2) << "\n";
            return 0;
        }
        switch (orbit.verdict) {
            case OrbitVerdict::ReachedFixedPoint:
                out << "reached fixed point at step " << orbit.step << ": x = " << human_vec(orbit.points.back())
                    << "\n";
                break;
            case OrbitVerdict::PeriodicDetected: out << "periodic, period " << orbit.period << "\n"; break;
            case OrbitVerdict::ExitedRadius:
                out << "exited radius at step " << orbit.step << " (heuristic: not a divergence proof)\n";
                break;
            case OrbitVerdict::Undetermined:
                out << "undetermined after " << (orbit.points.size() - 1) << " steps\n";
                break;
        }
        return 0;
    }

    const Orbit<Rational> orbit = simulate(loaded.exact(), x0, opt.steps, radius);
    if (opt.json_mode) {
        json doc;
        doc["command"] = "simulate";
        doc["backend"] = "rational";
        doc["verdict"] = orbit_verdict_name(orbit.verdict);
        if (orbit.verdict == OrbitVerdict::PeriodicDetected) doc["period"] = orbit.period;
        if (orbit.verdict != OrbitVerdict::Undetermined) doc["step"] = orbit.step;
        json pts = json::array();
        for (const Vec<Rational>& p : orbit.points) pts.push_back(json_vec(p));
        doc["points"] = std::move(pts);
        if (!orbit.certificate_values.empty()) {
            json vals = json::array();
            for (const Rational& v : orbit.certificate_values) vals.push_back(v.str());
            doc["certificate_values"] = std::move(vals);
        }
        out << doc.dump(2) << "\n";
        return 0;
    }
    switch (orbit.verdict) {
        case OrbitVerdict::ReachedFixedPoint:
            out << "reached fixed point at step " << orbit.step << ": x = " << human_vec(orbit.points.back())
                << "\n";
            break;
        case OrbitVerdict::PeriodicDetected:
            out << "periodic, period " << orbit.period << " (closed at step " << orbit.step << ")\n";
            break;
        case OrbitVerdict::ExitedRadius:
            out << "exited radius at step " << orbit.step << " (heuristic: not a divergence proof)\n";
            break;
        case OrbitVerdict::Undetermined: out << "undetermined after " << (orbit.points.size() - 1) << " steps\n"; break;
    }
    if (!orbit.certificate_values.empty())
        out << "divergence certificate attached; u^T x recorded from " << orbit.certificate_values.front().str()
            << " to " << orbit.certificate_values.back().str() << "\n";
    out << "points recorded: " << orbit.points.size() << ", last x = " << human_vec(orbit.points.back()) << "\n";
    return 0;
}

int do_cycles(const Options& opt, std::ostream& out) {
    const LoadedMap loaded = load_map_file(opt.map_path);
    const std::vector<CycleWitness> cycles = find_cycles(loaded.to_exact(), opt.max_period, opt.period_limit);

    if (opt.json_mode) {
        json doc;
        doc["command"] = "cycles";
        doc["max_period"] = opt.max_period;
        json arr = json::array();
        for (const CycleWitness& w : cycles) {
            json item;
            item["period"] = w.period;
            std::string syms;
            for (Side s : w.symbols) syms += symbol_letter(s);
            item["symbols"] = syms;
            item["point"] = json_vec(w.point);
            item["degenerate_family"] = w.degenerate_family;
            if (w.family_direction) item["family_direction"] = json_vec(*w.family_direction);
            arr.push_back(std::move(item));
        }
        doc["cycles"] = std::move(arr);
        out << doc.dump(2) << "\n";
        return 0;
    }

    if (cycles.empty()) {
        out << "no cycles up to period " << opt.max_period << "\n";
        return 0;
    }
    out << cycles.size() << " cycle(s) up to period " << opt.max_period << "\n";
    for (const CycleWitness& w : cycles) {
        out << "period " << w.period << " symbols ";
        for (Side s : w.symbols) out << symbol_letter(s);
        out << " point " << human_vec(w.point);
        if (w.degenerate_family) out << " degenerate family, direction " << human_vec(*w.family_direction);
        out << "\n";
    }
    return 0;
}

int do_bcb(const Options& opt, std::ostream& out) {
    const LoadedMap loaded = load_map_file(opt.map_path);
    const PwlMap<Rational> map = loaded.to_exact();
    const BcbFamily family{map.a(), map.b(), map.c()};
    const Rational mu_from = parse_rational(opt.mu_from);
    const Rational mu_to = parse_rational(opt.mu_to);
    const BcbReport report = scan(family, mu_from, mu_to, opt.grid);

    if (opt.json_mode) {
        json doc;
        doc["command"] = "bcb";
        doc["family_class"] = family_class_name(report.family_class);
        doc["fold_side"] = fold_side_name(report.fold_side);
        doc["mu_from"] = mu_from.str();
        doc["mu_to"] = mu_to.str();
        doc["grid"] = opt.grid;
        json rows = json::array();
        for (const BcbRow& row : report.rows) {
            json r;
            r["mu"] = row.mu.str();
            r["y_minus_1"] = row.y_minus_1 ? json(row.y_minus_1->str()) : json(nullptr);
            r["y_plus_1"] = row.y_plus_1 ? json(row.y_plus_1->str()) : json(nullptr);
            r["adm_minus"] = row.adm_minus;
            r["adm_plus"] = row.adm_plus;
            r["n_fixed_points"] = row.n_fixed_points;
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        emit(out, doc.dump(2) + "\n", opt.out_path, out, "bcb report");
        return 0;
    }

    std::ostringstream csv;
    write_scan_csv(report, csv);
    if (!opt.out_path.empty())
        out << "family class: " << family_class_name(report.family_class) << " (fold side "
            << fold_side_name(report.fold_side) << "); ";
    emit(out, csv.str(), opt.out_path, out, std::to_string(report.rows.size()) + " rows");
    return 0;
}

int do_random(const Options& opt, std::ostream& out) {
    GenConfig config;
    config.n = opt.n;
    config.seed = opt.seed;
    config.numerator_bound = opt.numerator_bound;
    config.denominator_bound = opt.denominator_bound;
    const PwlMap<Rational> map = random_map(config);
    emit(out, serialize_map(map), opt.out_path, out, "map");
    return 0;
}

int do_verify(const Options& opt, std::ostream& out) {
    const LoadedMap loaded = load_map_file(opt.map_path);
    const VerifyReport report = oracle_validate(loaded.to_exact(), opt.trials, opt.steps, opt.max_period);

    if (opt.json_mode) {
        json doc;
        doc["command"] = "verify";
        doc["n"] = report.n;
        doc["digest"] = report.digest;
        doc["seed"] = report.seed;
        doc["verdict"] = verdict_name(report.verdict);
        doc["pass"] = report.pass();
        json checks = json::array();
        for (const CheckResult& c : report.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        doc["checks"] = std::move(checks);
        doc["summary"] = report.summary();
        out << doc.dump(2) << "\n";
    } else {
        out << report.summary() << "\n";
        for (const CheckResult& c : report.checks) {
            out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
            if (!c.detail.empty()) out << ": " << c.detail;
            out << "\n";
        }
    }
    return report.pass() ? 0 : 1;
}

int do_convert(const Options& opt, std::ostream& out) {
    const LoadedPiece left = load_piece_file(opt.left_path);
    const LoadedPiece right = load_piece_file(opt.right_path);
    if (left.is_float != right.is_float)
        throw ParseError("convert: the two pieces use different backends");
    std::string text;
    if (left.is_float) {
        const PwlMap<double> map = from_two_pieces(*left.af, *right.af, *left.cf, *right.cf);
        text = serialize_map(map);
    } else {
        const PwlMap<Rational> map = from_two_pieces(*left.a, *right.a, *left.c, *right.c);
        text = serialize_map(map);
    }
    emit(out, text, opt.out_path, out, "map");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (const char* env = std::getenv("PWLFIX_EPSILON")) {
        char* end = nullptr;
        const double eps = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(eps > 0)) {
            err << "error: PWLFIX_EPSILON must be a positive number, got \"" << env << "\"\n";
            return 2;
        }
        set_float_epsilon(eps);
    }

    Options opt;
    double epsilon_flag = 0.0;

    CLI::App app{"exact analysis of continuous piecewise-linear maps f(x) = A x + b|x1| + c"};
    app.name("pwlfix");
    app.require_subcommand(1);
    CLI::Option* eps_opt = app.add_option("--epsilon", epsilon_flag, "relative tolerance for the float backend");

    auto add_json = [&opt](CLI::App* cmd) { cmd->add_flag("--json", opt.json_mode, "machine-readable output"); };

    CLI::App* classify_cmd = app.add_subcommand("classify", "decide fixed-point existence vs divergence");
    classify_cmd->add_option("map", opt.map_path, "map JSON file")->required();
    add_json(classify_cmd);

    CLI::App* fp_cmd = app.add_subcommand("fixed-points", "list fixed points and fixed lines");
    fp_cmd->add_option("map", opt.map_path, "map JSON file")->required();
    add_json(fp_cmd);

    CLI::App* sim_cmd = app.add_subcommand("simulate", "iterate an orbit with verdicts");
    sim_cmd->add_option("map", opt.map_path, "map JSON file")->required();
    sim_cmd->add_option("--x0", opt.x0, "initial point, comma-separated exact tokens")->required();
    sim_cmd->add_option("--steps", opt.steps, "maximum evaluations (default 1000)");
    sim_cmd->add_option("--radius", opt.radius, "sup-norm escape radius (default 100000000)");
    add_json(sim_cmd);

    CLI::App* cyc_cmd = app.add_subcommand("cycles", "enumerate periodic orbits exactly");
    cyc_cmd->add_option("map", opt.map_path, "map JSON file")->required();
    cyc_cmd->add_option("--max-period", opt.max_period, "search periods 2..K (default 6)");
    cyc_cmd->add_option("--limit", opt.period_limit, "guard for the exponential search (default 20)");
    add_json(cyc_cmd);

    CLI::App* bcb_cmd = app.add_subcommand("bcb", "border-collision scan of f_mu = Ax + b|x1| + mu c");
    bcb_cmd->add_option("map", opt.map_path, "family JSON file (its c is the mu direction)")->required();
    bcb_cmd->add_option("--mu-from", opt.mu_from, "scan start")->required();
    bcb_cmd->add_option("--mu-to", opt.mu_to, "scan end")->required();
    bcb_cmd->add_option("--grid", opt.grid, "number of grid points (default 11)");
    bcb_cmd->add_option("--out", opt.out_path, "write CSV (or JSON with --json) to a file");
    add_json(bcb_cmd);

    CLI::App* rand_cmd = app.add_subcommand("random", "deterministic random map (splitmix64 stream)");
    rand_cmd->add_option("--n", opt.n, "dimension (default 2)");
    rand_cmd->add_option("--seed", opt.seed, "64-bit seed (default 0)");
    rand_cmd->add_option("--numerator-bound", opt.numerator_bound, "|p| bound (default 10)");
    rand_cmd->add_option("--denominator-bound", opt.denominator_bound, "q bound (default 10)");
    rand_cmd->add_option("--out", opt.out_path, "write the map JSON to a file");
    add_json(rand_cmd);

    CLI::App* ver_cmd = app.add_subcommand("verify", "attack the classifier verdict with brute force");
    ver_cmd->add_option("map", opt.map_path, "map JSON file")->required();
    ver_cmd->add_option("--trials", opt.trials, "random orbits per divergent map (default 100)");
    ver_cmd->add_option("--steps", opt.steps, "orbit length (default 1000)");
    ver_cmd->add_option("--max-period", opt.max_period, "cycle search bound (default 6)");
    add_json(ver_cmd);

    CLI::App* conv_cmd = app.add_subcommand("convert", "two-piece form to normal form");
    conv_cmd->add_option("--left", opt.left_path, "JSON with the x1<=0 piece {n, A, c}")->required();
    conv_cmd->add_option("--right", opt.right_path, "JSON with the x1>=0 piece {n, A, c}")->required();
    conv_cmd->add_option("--out", opt.out_path, "write the map JSON to a file");
    add_json(conv_cmd);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pwlfix");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (*eps_opt) {
        if (!(epsilon_flag > 0)) {
            err << "error: --epsilon must be positive\n";
            return 2;
        }
        set_float_epsilon(epsilon_flag);
    }

    try {
        if (classify_cmd->parsed()) return do_classify(opt, out);
        if (fp_cmd->parsed()) return do_fixed_points(opt, out);
        if (sim_cmd->parsed()) return do_simulate(opt, out);
        if (cyc_cmd->parsed()) return do_cycles(opt, out);
        if (bcb_cmd->parsed()) return do_bcb(opt, out);
        if (rand_cmd->parsed()) return do_random(opt, out);
        if (ver_cmd->parsed()) return do_verify(opt, out);
        if (conv_cmd->parsed()) return do_convert(opt, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotContinuousError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "analysis error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pwlfix
