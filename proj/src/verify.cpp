#include "pwlfix/verify.hpp"

#include <algorithm>
#include <utility>

namespace pwlfix {
namespace {

std::string join_entries(const Vec<Rational>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += v[i].str();
    }
    return out;
}

std::string map_digest(const PwlMap<Rational>& map) {
    std::string out = "n=" + std::to_string(map.dim()) + ";A=";
    for (int i = 0; i < map.dim(); ++i)
        for (int j = 0; j < map.dim(); ++j) {
            if (i + j > 0) out += ',';
            out += map.a()(i, j).str();
        }
    out += ";b=" + join_entries(map.b());
    out += ";c=" + join_entries(map.c());
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

Rational draw_rational(SplitMix64& rng, int numerator_bound, int denominator_bound) {
    const long num = static_cast<long>(rng.below(2 * static_cast<std::uint64_t>(numerator_bound) + 1)) -
                     numerator_bound;
    const long den = 1 + static_cast<long>(rng.below(denominator_bound));
    return Rational(num, den);
}

/// Coordinate in [-10, 10]: exact rational with denominator in [1, 10].
Rational draw_coordinate(SplitMix64& rng) {
    const long den = 1 + static_cast<long>(rng.below(10));
    const long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(20 * den) + 1)) - 10 * den;
    return Rational(num, den);
}

std::string point_str(const Vec<Rational>& p) { return "(" + join_entries(p) + ")"; }

/// A t value inside the line's admissible range, biased toward zero, plus the
/// offset shifted further into the range.
Rational range_representative(const TRange& range, const Rational& offset) {
    switch (range.kind) {
        case TRangeKind::All: return offset;
        case TRangeKind::AtMost: return (range.bound.sign() >= 0 ? Rational(0) : range.bound) - offset;
        case TRangeKind::AtLeast: return (range.bound.sign() <= 0 ? Rational(0) : range.bound) + offset;
    }
    return offset;
}

void check_witnesses(const PwlMap<Rational>& map, const FixedPointSet& set, std::vector<CheckResult>& checks) {
    CheckResult check{"witness-exactness", true, ""};
    for (const FixedPoint& fp : set.points) {
        if (eval(map, fp.point) != fp.point) {
            check.pass = false;
            check.detail = "point " + point_str(fp.point) + " is not fixed";
            break;
        }
        if (!side_admits(fp.side, fp.point[0])) {
            check.pass = false;
            check.detail = "point " + point_str(fp.point) + " violates side " + side_name(fp.side);
            break;
        }
    }
    for (const FixedLine& line : set.lines) {
        if (!check.pass) break;
        for (int rep = 0; rep <= 2 && check.pass; ++rep) {
            const Rational t = range_representative(line.t_range, Rational(rep));
            Vec<Rational> p = line.base;
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * line.direction[i];
            if (eval(map, p) != p || !side_admits(line.side, p[0])) {
                check.pass = false;
                check.detail = "line point " + point_str(p) + " (t=" + t.str() + ") fails";
            }
        }
    }
    checks.push_back(std::move(check));
}

}  // namespace

PwlMap<Rational> random_map(const GenConfig& config) {
    if (config.n < 2) throw ContractError("random_map: n must be >= 2");
    if (config.numerator_bound < 1 || config.denominator_bound < 1)
        throw ContractError("random_map: bounds must be >= 1");
    SplitMix64 rng(config.seed);
    Matrix<Rational> a(config.n, config.n);
    for (int i = 0; i < config.n; ++i)
        for (int j = 0; j < config.n; ++j) a(i, j) = draw_rational(rng, config.numerator_bound, config.denominator_bound);
    Vec<Rational> b(config.n), c(config.n);
    for (int i = 0; i < config.n; ++i) b[i] = draw_rational(rng, config.numerator_bound, config.denominator_bound);
    for (int i = 0; i < config.n; ++i) c[i] = draw_rational(rng, config.numerator_bound, config.denominator_bound);
    return PwlMap<Rational>(std::move(a), std::move(b), std::move(c));
}

bool VerifyReport::pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::summary() const {
    std::string line = pass() ? "PASS" : "FAIL";
    line += " n=" + std::to_string(n) + " seed=" + std::to_string(seed);
    if (!pass())
        for (const CheckResult& c : checks)
            if (!c.pass) {
                line += " check=" + c.name;
                break;
            }
    return line;
}

VerifyReport oracle_validate(const PwlMap<Rational>& map, int trials, long steps, int max_period) {
    if (trials < 0) throw ContractError("oracle_validate: trials must be >= 0");
    if (steps < 1) throw ContractError("oracle_validate: steps must be >= 1");
    if (max_period < 1) throw ContractError("oracle_validate: max_period must be >= 1");

    VerifyReport report;
    report.n = map.dim();
    report.digest = map_digest(map);
    report.seed = fnv1a(report.digest);

    const Classification cls = classify(map);
    report.verdict = cls.verdict;

    switch (cls.verdict) {
        case Verdict::FixedPointExists: {
            check_witnesses(map, cls.witnesses, report.checks);
            break;
        }
        case Verdict::AllOrbitsDiverge: {
            const Certificate& cert = *cls.certificate;
            const FixedPointSet fps = fixed_points(map);
            report.checks.push_back(
                {"fixed-points-empty", fps.empty(),
                 fps.empty() ? "" : "divergent map has " + std::to_string(fps.points.size()) + " fixed points"});
            const std::vector<CycleWitness> cycles = find_cycles(map, max_period);
            report.checks.push_back({"cycles-empty", cycles.empty(),
                                     cycles.empty() ? ""
                                                    : "divergent map has a period-" +
                                                          std::to_string(cycles.front().period) + " cycle"});

            SplitMix64 rng(report.seed);
            const Rational radius(100000000);
            CheckResult monotone{"certificate-monotone", true, ""};
            CheckResult growth{"orbit-growth", true, ""};
            for (int t = 0; t < trials; ++t) {
                Vec<Rational> x0(map.dim());
                for (Rational& xi : x0) xi = draw_coordinate(rng);
                const CertifiedScan scan = scan_certified_orbit(map, x0, steps, radius, cert.u, cert.s);
                if (!scan.monotone && monotone.pass) {
                    monotone.pass = false;
                    monotone.detail = "trial " + std::to_string(t) + " x0=" + point_str(x0) + " violates at step " +
                                      std::to_string(scan.first_violation);
                }
                if (!(scan.exited_radius || scan.strictly_growing) && growth.pass) {
                    growth.pass = false;
                    growth.detail =
                        "trial " + std::to_string(t) + " x0=" + point_str(x0) + " neither escapes nor grows";
                }
            }
            report.checks.push_back(std::move(monotone));
            report.checks.push_back(std::move(growth));
            break;
        }
        case Verdict::NondegeneracyFails: {
            // No existence claim to attack; record the cycle search as a
            // diagnostic.
            const std::vector<CycleWitness> cycles = find_cycles(map, max_period);
            report.checks.push_back({"diagnostic-cycles", true,
                                     "found " + std::to_string(cycles.size()) + " cycle witnesses up to period " +
                                         std::to_string(max_period)});
            break;
        }
    }
    return report;
}

}  // namespace pwlfix
