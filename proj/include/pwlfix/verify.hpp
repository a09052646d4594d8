#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwlfix/dynamics.hpp"

namespace pwlfix {

struct GenConfig {
    int n = 2;
    std::uint64_t seed = 0;
    int numerator_bound = 10;    // |p| <= bound
    int denominator_bound = 10;  // 1 <= q <= bound
};

/// Deterministic splitmix64 stream; the generator is part of the artifact's
/// stable interface so that fixtures and failure seeds reproduce everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, range) by rejection; range >= 1.
    std::uint64_t below(std::uint64_t range) {
        const std::uint64_t threshold = (-range) % range;
        std::uint64_t r = next();
        while (r < threshold) r = next();
        return r % range;
    }

private:
    std::uint64_t state_;
};

/// Deterministic random map: entry order is A row-major, then b, then c;
/// each entry draws numerator in [-N, N] then denominator in [1, D].
PwlMap<Rational> random_map(const GenConfig& config);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;  // counterexample / reproduction data on failure
};

struct VerifyReport {
    int n = 0;
    std::string digest;            // compact exact serialization of the map
    std::uint64_t seed = 0;        // reproduction seed printed in the summary;
                                   // defaults to the digest-derived orbit seed
    Verdict verdict = Verdict::NondegeneracyFails;
    std::vector<CheckResult> checks;

    bool pass() const;
    /// "PASS n=... seed=..." or "FAIL n=... seed=... check=<first failure>".
    std::string summary() const;
};

/// End-to-end oracle: classifies, then attacks the verdict with independent
/// brute force (witness re-evaluation, certificate scans over random orbits,
/// cycle and fixed-point absence). The underlying result is proved, so any
/// FAIL is an implementation bug.
VerifyReport oracle_validate(const PwlMap<Rational>& map, int trials, long steps, int max_period);

}  // namespace pwlfix
