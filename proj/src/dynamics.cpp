#include "pwlfix/dynamics.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include <gmpxx.h>

namespace pwlfix {
namespace {

// ---------------------------------------------------------------------------
// Scaled-integer orbit engine. With D the common denominator of the map
// entries, points are carried as x_k = z_k / q_k with integer z_k and
// q_k = D^k q_0; one step is z' = (D A) z + (D b)|z_1| + (D c) q, q' = D q.
// No gcd reduction happens on the hot path.

struct IntegerMap {
    int n = 0;
    std::vector<mpz_class> a;  // D*A, row-major
    std::vector<mpz_class> b;  // D*b
    std::vector<mpz_class> c;  // D*c
    mpz_class d;               // common denominator D >= 1
};

IntegerMap integerize(const PwlMap<Rational>& map) {
    const int n = map.dim();
    IntegerMap im;
    im.n = n;
    im.d = 1;
    auto fold = [&im](const Rational& r) { mpz_lcm(im.d.get_mpz_t(), im.d.get_mpz_t(), r.den().get_mpz_t()); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fold(map.a()(i, j));
    for (int i = 0; i < n; ++i) {
        fold(map.b()[i]);
        fold(map.c()[i]);
    }
    auto scaled = [&im](const Rational& r) { return mpz_class(r.num() * (im.d / r.den())); };
    im.a.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) im.a.push_back(scaled(map.a()(i, j)));
    im.b.reserve(n);
    im.c.reserve(n);
    for (int i = 0; i < n; ++i) {
        im.b.push_back(scaled(map.b()[i]));
        im.c.push_back(scaled(map.c()[i]));
    }
    return im;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    while (e > 0) {
        if (e & 1u) acc = mulmod(acc, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return acc;
}

// Cycle detection hashes the value z_i / q mod p, which is independent of the
// (unreduced) representation as long as p never divides q = D^k q_0. Any
// realistic input has D q_0 far below the product of these primes, so one of
// them works.
constexpr std::uint64_t kFingerprintPrimes[3] = {2305843009213693951ULL, 9223372036854775783ULL,
                                                 18446744073709551557ULL};

std::uint64_t residue_fingerprint(const std::vector<mpz_class>& z, std::uint64_t q_mod, std::uint64_t p) {
    const std::uint64_t q_inv = powmod(q_mod, p - 2, p);
    std::uint64_t h = 1469598103934665603ULL;
    for (const mpz_class& zi : z) {
        const std::uint64_t r = mpz_fdiv_ui(zi.get_mpz_t(), p);
        h ^= mulmod(r, q_inv, p);
        h *= 1099511628211ULL;
    }
    return h;
}

bool same_scaled_point(const std::vector<mpz_class>& za, const mpz_class& qa, const std::vector<mpz_class>& zb,
                       const mpz_class& qb) {
    mpz_class lhs, rhs;
    for (std::size_t i = 0; i < za.size(); ++i) {
        lhs = za[i] * qb;
        rhs = zb[i] * qa;
        if (lhs != rhs) return false;
    }
    return true;
}

/// Attaches u^T x_k values when the classification carries a certificate.
template <ScalarType S>
void attach_certificate_values(Orbit<S>& orbit, const Classification& cls) {
    if (!cls.certificate) return;
    const Certificate& cert = *cls.certificate;
    orbit.certificate_values.reserve(orbit.points.size());
    for (const Vec<S>& p : orbit.points) {
        if constexpr (scalar_traits<S>::is_exact) {
            orbit.certificate_values.push_back(dot(cert.u, p));
        } else {
            S acc = scalar_traits<S>::zero();
            for (std::size_t i = 0; i < p.size(); ++i) acc += cert.u[i].to_double() * p[i];
            orbit.certificate_values.push_back(acc);
        }
    }
}

}  // namespace

const char* orbit_verdict_name(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::ReachedFixedPoint: return "ReachedFixedPoint";
        case OrbitVerdict::PeriodicDetected: return "PeriodicDetected";
        case OrbitVerdict::ExitedRadius: return "ExitedRadius";
        case OrbitVerdict::Undetermined: return "Undetermined";
    }
    return "?";
}

Orbit<Rational> simulate(const PwlMap<Rational>& map, const Vec<Rational>& x0, long max_steps,
                         const Rational& radius) {
    const int n = map.dim();
    if (static_cast<int>(x0.size()) != n) throw DimensionError("simulate: x0 dimension mismatch");
    if (max_steps < 1) throw ContractError("simulate: max_steps must be >= 1");
    if (radius.sign() <= 0) throw ContractError("simulate: radius must be positive");

    const IntegerMap im = integerize(map);
    mpz_class q0(1);
    for (const Rational& xi : x0) mpz_lcm(q0.get_mpz_t(), q0.get_mpz_t(), xi.den().get_mpz_t());
    std::vector<mpz_class> z0(n);
    for (int i = 0; i < n; ++i) z0[i] = x0[i].num() * (q0 / x0[i].den());

    std::uint64_t p = 0;
    for (std::uint64_t cand : kFingerprintPrimes)
        if (mpz_fdiv_ui(im.d.get_mpz_t(), cand) != 0 && mpz_fdiv_ui(q0.get_mpz_t(), cand) != 0) {
            p = cand;
            break;
        }
    if (p == 0) throw InternalError("simulate: no fingerprint prime is coprime to the denominators");

    std::vector<std::vector<mpz_class>> zs;
    std::vector<mpz_class> qs;
    zs.push_back(std::move(z0));
    qs.push_back(q0);

    const mpz_class& rad_num = radius.num();
    const mpz_class& rad_den = radius.den();
    auto exceeds_radius = [&](const std::vector<mpz_class>& z, const mpz_class& q) {
        const mpz_class bound = rad_num * q;
        mpz_class lhs;
        for (const mpz_class& zi : z) {
            lhs = rad_den * abs(zi);
            if (lhs > bound) return true;
        }
        return false;
    };

    const std::uint64_t d_mod = mpz_fdiv_ui(im.d.get_mpz_t(), p);
    std::uint64_t q_mod = mpz_fdiv_ui(q0.get_mpz_t(), p);
    std::unordered_map<std::uint64_t, std::vector<long>> seen;
    seen[residue_fingerprint(zs[0], q_mod, p)].push_back(0);

    Orbit<Rational> orbit;
    bool decided = false;
    if (exceeds_radius(zs[0], qs[0])) {
        orbit.verdict = OrbitVerdict::ExitedRadius;
        orbit.step = 0;
        decided = true;
    }

    for (long k = 0; !decided && k < max_steps; ++k) {
        const std::vector<mpz_class>& z = zs.back();
        const mpz_class& q = qs.back();
        const mpz_class az = abs(z[0]);
        std::vector<mpz_class> z_next(n);
        for (int i = 0; i < n; ++i) {
            mpz_class acc = im.b[i] * az + im.c[i] * q;
            for (int j = 0; j < n; ++j) acc += im.a[static_cast<std::size_t>(i) * n + j] * z[j];
            z_next[i] = std::move(acc);
        }

        // q_next = D q, so x_{k+1} = x_k reduces to z_next = D z.
        bool fixed = true;
        mpz_class scaled;
        for (int i = 0; fixed && i < n; ++i) {
            scaled = im.d * z[i];
            fixed = z_next[i] == scaled;
        }
        if (fixed) {
            orbit.verdict = OrbitVerdict::ReachedFixedPoint;
            orbit.step = k;
            decided = true;
            break;
        }

        zs.push_back(std::move(z_next));
        qs.push_back(im.d * q);
        q_mod = mulmod(q_mod, d_mod, p);
        const long idx = static_cast<long>(zs.size()) - 1;

        const std::uint64_t h = residue_fingerprint(zs.back(), q_mod, p);
        std::vector<long>& bucket = seen[h];
        for (long j : bucket)
            if (same_scaled_point(zs[j], qs[j], zs.back(), qs.back())) {
                orbit.verdict = OrbitVerdict::PeriodicDetected;
                orbit.period = idx - j;
                orbit.step = idx;
                decided = true;
                break;
            }
        if (decided) break;
        bucket.push_back(idx);

        if (exceeds_radius(zs.back(), qs.back())) {
            orbit.verdict = OrbitVerdict::ExitedRadius;
            orbit.step = idx;
            decided = true;
        }
    }

    orbit.points.reserve(zs.size());
    for (std::size_t t = 0; t < zs.size(); ++t) {
        Vec<Rational> pt(n);
        for (int i = 0; i < n; ++i) pt[i] = Rational(zs[t][i], qs[t]);
        orbit.points.push_back(std::move(pt));
    }
    attach_certificate_values(orbit, classify(map));
    return orbit;
}

Orbit<double> simulate(const PwlMap<double>& map, const Vec<double>& x0, long max_steps, double radius) {
    const int n = map.dim();
    if (static_cast<int>(x0.size()) != n) throw DimensionError("simulate: x0 dimension mismatch");
    if (max_steps < 1) throw ContractError("simulate: max_steps must be >= 1");
    if (!(radius > 0)) throw ContractError("simulate: radius must be positive");

    constexpr long kCycleWindow = 40;  // last 2K stored points, K = 20
    auto close_vec = [n](const Vec<double>& a, const Vec<double>& b) {
        for (int i = 0; i < n; ++i)
            if (!scalar_close(a[i], b[i])) return false;
        return true;
    };

    Orbit<double> orbit;
    orbit.points.push_back(x0);
    bool decided = false;
    if (inf_norm(x0) > radius) {
        orbit.verdict = OrbitVerdict::ExitedRadius;
        orbit.step = 0;
        decided = true;
    }

    for (long k = 0; !decided && k < max_steps; ++k) {
        const Vec<double>& x = orbit.points.back();
        Vec<double> x_next = eval(map, x);
        if (close_vec(x_next, x)) {
            orbit.verdict = OrbitVerdict::ReachedFixedPoint;
            orbit.step = k;
            break;
        }
        orbit.points.push_back(std::move(x_next));
        const long idx = static_cast<long>(orbit.points.size()) - 1;

        const long lowest = std::max<long>(0, idx - kCycleWindow);
        for (long j = idx - 1; j >= lowest && !decided; --j)
            if (close_vec(orbit.points[j], orbit.points[idx])) {
                orbit.verdict = OrbitVerdict::PeriodicDetected;
                orbit.period = idx - j;
                orbit.step = idx;
                decided = true;
            }
        if (decided) break;

        if (inf_norm(orbit.points[idx]) > radius) {
            orbit.verdict = OrbitVerdict::ExitedRadius;
            orbit.step = idx;
            decided = true;
        }
    }

    attach_certificate_values(orbit, classify(map));
    return orbit;
}

CertifiedScan scan_certified_orbit(const PwlMap<Rational>& map, const Vec<Rational>& x0, long max_steps,
                                   const Rational& radius, const Vec<Rational>& u, const Rational& s) {
    const int n = map.dim();
    if (static_cast<int>(x0.size()) != n || static_cast<int>(u.size()) != n)
        throw DimensionError("scan_certified_orbit: dimension mismatch");
    if (max_steps < 1) throw ContractError("scan_certified_orbit: max_steps must be >= 1");
    if (radius.sign() <= 0) throw ContractError("scan_certified_orbit: radius must be positive");

    const IntegerMap im = integerize(map);
    mpz_class q(1);
    for (const Rational& xi : x0) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), xi.den().get_mpz_t());
    std::vector<mpz_class> z(n);
    for (int i = 0; i < n; ++i) z[i] = x0[i].num() * (q / x0[i].den());

    // Integerized certificate: with w = wd*u integral, u^T x_k = w^T z_k / (wd q_k),
    // so the step inequality u^T x' >= u^T x + s becomes
    //   sd (w^T z') >= sd D (w^T z) + sn wd q'.
    mpz_class wd(1);
    for (const Rational& ui : u) mpz_lcm(wd.get_mpz_t(), wd.get_mpz_t(), ui.den().get_mpz_t());
    std::vector<mpz_class> w(n);
    for (int i = 0; i < n; ++i) w[i] = u[i].num() * (wd / u[i].den());
    const mpz_class& sn = s.num();
    const mpz_class& sd = s.den();

    auto growth = [&](const std::vector<mpz_class>& zz) {
        mpz_class g(0);
        for (int i = 0; i < n; ++i) g += w[i] * zz[i];
        return g;
    };
    const mpz_class& rad_num = radius.num();
    const mpz_class& rad_den = radius.den();
    auto exceeds_radius = [&](const std::vector<mpz_class>& zz, const mpz_class& qq) {
        const mpz_class bound = rad_num * qq;
        mpz_class lhs;
        for (const mpz_class& zi : zz) {
            lhs = rad_den * abs(zi);
            if (lhs > bound) return true;
        }
        return false;
    };

    CertifiedScan scan;
    if (exceeds_radius(z, q)) {
        scan.exited_radius = true;
        scan.exit_step = 0;
        return scan;
    }

    mpz_class g = growth(z);
    std::vector<mpz_class> z_next(n);
    for (long k = 0; k < max_steps; ++k) {
        const mpz_class az = abs(z[0]);
        for (int i = 0; i < n; ++i) {
            mpz_class acc = im.b[i] * az + im.c[i] * q;
            for (int j = 0; j < n; ++j) acc += im.a[static_cast<std::size_t>(i) * n + j] * z[j];
            z_next[i] = std::move(acc);
        }
        const mpz_class q_next = im.d * q;
        const mpz_class g_next = growth(z_next);
        scan.steps_run = k + 1;

        if (sd * g_next < sd * im.d * g + sn * wd * q_next) {
            scan.monotone = false;
            if (scan.first_violation < 0) scan.first_violation = k;
        }
        if (g_next <= im.d * g) scan.strictly_growing = false;

        z.swap(z_next);
        q = q_next;
        g = g_next;
        if (exceeds_radius(z, q)) {
            scan.exited_radius = true;
            scan.exit_step = k + 1;
            break;
        }
    }
    return scan;
}

namespace {

// ---------------------------------------------------------------------------
// Exact cycle enumeration.

bool vec_lex_less(const Vec<Rational>& a, const Vec<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

/// Keeps one representative per cyclic rotation class: the lexicographically
/// smallest k-bit word (bit k-1-i holds symbol i, L=0 < R=1).
bool is_canonical_necklace(unsigned mask, int k) {
    const unsigned all = (1u << k) - 1u;
    unsigned cur = mask;
    for (int r = 1; r < k; ++r) {
        cur = ((cur << 1) | (cur >> (k - 1))) & all;
        if (cur < mask) return false;
    }
    return true;
}

std::vector<int> proper_divisors(int k) {
    std::vector<int> out;
    for (int d = 1; d < k; ++d)
        if (k % d == 0) out.push_back(d);
    return out;
}

std::string cycle_key(const std::vector<Vec<Rational>>& pts) {
    std::string key;
    for (const Vec<Rational>& p : pts) {
        for (const Rational& x : p) {
            key += x.str();
            key += ',';
        }
        key += ';';
    }
    return key;
}

Vec<Rational> normalized_direction(Vec<Rational> v) {
    std::size_t pivot = 0;
    while (pivot < v.size() && v[pivot].is_zero()) ++pivot;
    const Rational scale = v[pivot].reciprocal();
    for (Rational& x : v) x *= scale;
    return v;
}

struct CycleSearch {
    const PwlMap<Rational>& map;
    Matrix<Rational> a_left;
    Matrix<Rational> a_right;
    std::vector<CycleWitness> found;
    std::set<std::string> keys;

    explicit CycleSearch(const PwlMap<Rational>& m)
        : map(m), a_left(m.left_matrix()), a_right(m.right_matrix()) {}

    const Matrix<Rational>& piece(Side s) const { return s == Side::Right ? a_right : a_left; }

    static bool admits(Side s, const Rational& x1) {
        return s == Side::Right ? x1.sign() >= 0 : x1.sign() <= 0;
    }

    void emit(int k, const std::vector<Side>& sigma, const std::vector<Vec<Rational>>& pts, bool degenerate,
              const std::vector<Vec<Rational>>* dirs) {
        int start = 0;
        for (int i = 1; i < k; ++i)
            if (vec_lex_less(pts[i], pts[start])) start = i;
        std::vector<Vec<Rational>> rot(k);
        std::vector<Side> symbols(k);
        for (int i = 0; i < k; ++i) {
            const int src = (start + i) % k;
            rot[i] = pts[src];
            symbols[i] = rot[i][0].is_zero() ? Side::Boundary : sigma[src];
        }
        std::string key = cycle_key(rot);
        if (!keys.insert(std::move(key)).second) return;
        CycleWitness w;
        w.period = k;
        w.symbols = std::move(symbols);
        w.point = rot[0];
        w.degenerate_family = degenerate;
        if (degenerate) w.family_direction = normalized_direction((*dirs)[start]);
        found.push_back(std::move(w));
    }

    void process(int k, const std::vector<Side>& sigma) {
        const int n = map.dim();
        Matrix<Rational> comp = Matrix<Rational>::identity(n);
        Vec<Rational> acc(n, Rational(0));
        for (int i = 0; i < k; ++i) {
            const Matrix<Rational>& a = piece(sigma[i]);
            acc = a * acc;
            acc = vec_add(acc, map.c());
            comp = a * comp;
        }
        const Matrix<Rational> m = Matrix<Rational>::identity(n) - comp;
        const std::vector<int> divisors = proper_divisors(k);

        auto orbit_of = [&](const Vec<Rational>& x0) {
            std::vector<Vec<Rational>> pts;
            pts.reserve(k);
            pts.push_back(x0);
            for (int i = 0; i + 1 < k; ++i) pts.push_back(vec_add(piece(sigma[i]) * pts.back(), map.c()));
            Vec<Rational> closure = vec_add(piece(sigma[k - 1]) * pts.back(), map.c());
            if (closure != x0) throw InternalError("find_cycles: cycle system solution does not close");
            return pts;
        };

        if (!det(m).is_zero()) {
            const Vec<Rational> x0 = solve_unique(m, acc);
            const std::vector<Vec<Rational>> pts = orbit_of(x0);
            for (int i = 0; i < k; ++i)
                if (!admits(sigma[i], pts[i][0])) return;
            for (int d : divisors)
                if (pts[d] == pts[0]) return;  // already reported at the divisor period
            emit(k, sigma, pts, false, nullptr);
            return;
        }

        // Singular cycle system: a solvable system yields a one-parameter
        // family x_i(t) = z_i + t v_i along the kernel direction.
        const std::optional<Vec<Rational>> z0 = solve_general(m, acc);
        if (!z0) return;
        const std::vector<Vec<Rational>> base = orbit_of(*z0);
        std::vector<Vec<Rational>> dirs;
        dirs.reserve(k);
        dirs.push_back(kernel_basis(m).front());
        for (int i = 0; i + 1 < k; ++i) dirs.push_back(piece(sigma[i]) * dirs.back());

        // Whole family already periodic at a divisor period: skip it here.
        for (int d : divisors)
            if (base[d] == base[0] && dirs[d] == dirs[0]) return;

        // Admissible t interval from the per-iterate constraints on
        // x_i(t)_1 = alpha_i + beta_i t.
        std::optional<Rational> lo, hi;
        for (int i = 0; i < k; ++i) {
            const Rational& alpha = base[i][0];
            const Rational& beta = dirs[i][0];
            if (beta.is_zero()) {
                if (!admits(sigma[i], alpha)) return;
                continue;
            }
            const Rational bound = -alpha / beta;
            const bool upper = (sigma[i] == Side::Left) == (beta.sign() > 0);
            if (upper) {
                if (!hi || bound < *hi) hi = bound;
            } else {
                if (!lo || bound > *lo) lo = bound;
            }
        }
        if (lo && hi && *lo > *hi) return;  // no admissible representative exists

        // Prefer t = 0; fall back to nearby admissible values. Each proper
        // divisor can disqualify at most one t, so a handful of distinct
        // candidates always contains a representative of minimal period k.
        std::vector<Rational> candidates;
        Rational preferred(0);
        if (lo && preferred < *lo) preferred = *lo;
        if (hi && preferred > *hi) preferred = *hi;
        candidates.push_back(preferred);
        const int extras = static_cast<int>(divisors.size()) + 1;
        for (int j = 1; j <= extras; ++j) {
            Rational t;
            if (lo && hi) {
                if (*lo == *hi) break;
                t = *lo + (*hi - *lo) * Rational(j, extras + 1);
            } else if (hi) {
                t = *hi - Rational(j);
            } else {
                t = (lo ? *lo : Rational(0)) + Rational(j);
            }
            candidates.push_back(t);
        }

        for (const Rational& t : candidates) {
            if ((lo && t < *lo) || (hi && t > *hi)) continue;
            std::vector<Vec<Rational>> pts(k);
            for (int i = 0; i < k; ++i) {
                pts[i] = base[i];
                for (int j = 0; j < n; ++j) pts[i][j] += t * dirs[i][j];
            }
            bool ok = true;
            for (int i = 0; ok && i < k; ++i) ok = admits(sigma[i], pts[i][0]);
            for (int d : divisors) ok = ok && pts[d] != pts[0];
            if (!ok) continue;
            emit(k, sigma, pts, true, &dirs);
            return;
        }
    }
};

}  // namespace

std::vector<CycleWitness> find_cycles(const PwlMap<Rational>& map, int max_period, int limit) {
    if (max_period < 1) throw ContractError("find_cycles: max_period must be >= 1");
    if (max_period > limit)
        throw ContractError("find_cycles: max_period " + std::to_string(max_period) + " exceeds the limit " +
                            std::to_string(limit) + " (the search is exponential); raise the limit to override");

    CycleSearch search(map);
    for (int k = 2; k <= max_period; ++k) {
        const unsigned total = 1u << k;
        std::vector<Side> sigma(k);
        for (unsigned mask = 0; mask < total; ++mask) {
            if (!is_canonical_necklace(mask, k)) continue;
            for (int i = 0; i < k; ++i)
                sigma[i] = ((mask >> (k - 1 - i)) & 1u) ? Side::Right : Side::Left;
            search.process(k, sigma);
        }
    }

    std::sort(search.found.begin(), search.found.end(), [](const CycleWitness& a, const CycleWitness& b) {
        if (a.period != b.period) return a.period < b.period;
        for (std::size_t i = 0; i < a.symbols.size(); ++i)
            if (a.symbols[i] != b.symbols[i]) return static_cast<int>(a.symbols[i]) < static_cast<int>(b.symbols[i]);
        return vec_lex_less(a.point, b.point);
    });
    return search.found;
}

}  // namespace pwlfix
