#pragma once

#include <optional>
#include <vector>

#include "pwlfix/analysis.hpp"

namespace pwlfix {

enum class OrbitVerdict { ReachedFixedPoint, PeriodicDetected, ExitedRadius, Undetermined };

const char* orbit_verdict_name(OrbitVerdict v);

/// Recorded orbit x0 .. xT with points[k+1] = eval(map, points[k]).
/// ExitedRadius is a heuristic observation, not a divergence proof.
template <ScalarType S>
struct Orbit {
    std::vector<Vec<S>> points;
    OrbitVerdict verdict = OrbitVerdict::Undetermined;
    long period = 0;  // valid when verdict == PeriodicDetected
    long step = 0;    // fixed-point step / radius-exit step, when applicable
    std::vector<S> certificate_values;  // u^T x_k, recorded when classification diverges
};

/// Iterate until a fixed point is hit, a previous point recurs, the sup norm
/// exceeds radius, or max_steps evaluations have been made. Exact arithmetic
/// on the rational backend; relative-epsilon comparisons on floats.
Orbit<Rational> simulate(const PwlMap<Rational>& map, const Vec<Rational>& x0, long max_steps,
                         const Rational& radius);
Orbit<double> simulate(const PwlMap<double>& map, const Vec<double>& x0, long max_steps, double radius);

/// True iff u^T x_{k+1} >= u^T x_k + s for every consecutive orbit pair
/// (vacuously true for a single point).
template <ScalarType S>
bool certificate_check(const PwlMap<S>& map, const Orbit<S>& orbit, const Vec<S>& u, const S& s) {
    if (static_cast<int>(u.size()) != map.dim()) throw DimensionError("certificate_check: certificate dimension");
    for (const Vec<S>& p : orbit.points)
        if (static_cast<int>(p.size()) != map.dim()) throw DimensionError("certificate_check: orbit dimension");
    for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k) {
        const S lhs = dot(u, orbit.points[k + 1]);
        const S rhs = dot(u, orbit.points[k]) + s;
        if (lhs < rhs) return false;
    }
    return true;
}

/// Result of a memory-bounded exact orbit scan against a divergence
/// certificate: the same inequality certificate_check tests, evaluated
/// stepwise without storing the orbit.
struct CertifiedScan {
    long steps_run = 0;           // evaluations performed
    bool monotone = true;         // u^T x_{k+1} >= u^T x_k + s at every step
    bool strictly_growing = true; // u^T x_{k+1} > u^T x_k at every step
    bool exited_radius = false;
    long exit_step = -1;
    long first_violation = -1;    // step index of the first monotonicity failure
};

/// Streams the exact orbit of x0 for up to max_steps evaluations (stopping
/// early once the sup norm exceeds radius) and checks the certificate
/// inequality at every step.
CertifiedScan scan_certified_orbit(const PwlMap<Rational>& map, const Vec<Rational>& x0, long max_steps,
                                   const Rational& radius, const Vec<Rational>& u, const Rational& s);

/// Exact periodic orbit of minimal period `period`, with per-iterate symbols
/// (Boundary marks iterates on the switching plane). Degenerate families carry
/// the kernel direction of the cycle system; every reported representative is
/// admissible.
struct CycleWitness {
    long period = 0;
    std::vector<Side> symbols;
    Vec<Rational> point;
    bool degenerate_family = false;
    std::optional<Vec<Rational>> family_direction;
};

/// Exact enumeration of periodic orbits of period 2..max_period by symbol
/// sequence (fixed points are reported by fixed_points, not here). The search
/// is exponential in max_period; values above `limit` are refused.
std::vector<CycleWitness> find_cycles(const PwlMap<Rational>& map, int max_period, int limit = 20);

}  // namespace pwlfix
