#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>

#include "pwlfix/verify.hpp"

using namespace pwlfix;

namespace {

PwlMap<Rational> divergent_map() {
    return PwlMap<Rational>(Matrix<Rational>(2, 2), Vec<Rational>{Rational(2), Rational(0)},
                            Vec<Rational>{Rational(1), Rational(0)});
}

PwlMap<Rational> counterexample_map() {
    Matrix<Rational> a{{Rational(-1, 2), Rational(1), Rational(0)},
                       {Rational(-1, 2), Rational(0), Rational(0)},
                       {Rational(-11, 28), Rational(0), Rational(1)}};
    return PwlMap<Rational>(std::move(a), Vec<Rational>{Rational(-1, 2), Rational(-1), Rational(3, 28)},
                            Vec<Rational>{Rational(1), Rational(0), Rational(0)});
}

PwlMap<Rational> halfline_map() {  // FixedPointExists with a line witness
    Matrix<Rational> a{{Rational(2), Rational(0)}, {Rational(0), Rational(0)}};
    return PwlMap<Rational>(std::move(a), Vec<Rational>{Rational(1), Rational(0)},
                            Vec<Rational>{Rational(0), Rational(1)});
}

std::uint64_t fnv1a_reference(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

TEST_CASE("random_map is deterministic in the seed") {
    GenConfig cfg;
    cfg.n = 3;
    cfg.seed = 12345;
    const PwlMap<Rational> m1 = random_map(cfg);
    const PwlMap<Rational> m2 = random_map(cfg);
    CHECK(m1.a() == m2.a());
    CHECK(m1.b() == m2.b());
    CHECK(m1.c() == m2.c());

    cfg.seed = 12346;
    const PwlMap<Rational> m3 = random_map(cfg);
    CHECK((m1.a() != m3.a() || m1.b() != m3.b() || m1.c() != m3.c()));
}

TEST_CASE("random_map respects the entry bounds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenConfig cfg;
        cfg.n = 2 + static_cast<int>(seed % 3);
        cfg.seed = seed;
        cfg.numerator_bound = 5;
        cfg.denominator_bound = 4;
        const PwlMap<Rational> map = random_map(cfg);
        auto in_bounds = [&](const Rational& r) {
            return abs(r.num()) <= cfg.numerator_bound && r.den() >= 1 && r.den() <= cfg.denominator_bound;
        };
        for (int i = 0; i < map.dim(); ++i)
            for (int j = 0; j < map.dim(); ++j) CHECK(in_bounds(map.a()(i, j)));
        for (int i = 0; i < map.dim(); ++i) {
            CHECK(in_bounds(map.b()[i]));
            CHECK(in_bounds(map.c()[i]));
        }
    }
}

TEST_CASE("random_map contract errors") {
    GenConfig cfg;
    cfg.n = 1;
    CHECK_THROWS_AS(random_map(cfg), ContractError);
    cfg.n = 2;
    cfg.numerator_bound = 0;
    CHECK_THROWS_AS(random_map(cfg), ContractError);
    cfg.numerator_bound = 10;
    cfg.denominator_bound = 0;
    CHECK_THROWS_AS(random_map(cfg), ContractError);
}

TEST_CASE("oracle_validate: divergent map passes every check") {
    const VerifyReport report = oracle_validate(divergent_map(), 100, 1000, 8);
    CHECK(report.n == 2);
    CHECK(report.verdict == Verdict::AllOrbitsDiverge);
    CHECK(report.digest == "n=2;A=0,0,0,0;b=2,0;c=1,0");
    CHECK(report.seed == fnv1a_reference(report.digest));
    REQUIRE(report.checks.size() == 4);
    CHECK(report.checks[0].name == "fixed-points-empty");
    CHECK(report.checks[1].name == "cycles-empty");
    CHECK(report.checks[2].name == "certificate-monotone");
    CHECK(report.checks[3].name == "orbit-growth");
    for (const CheckResult& c : report.checks) CHECK(c.pass);
    CHECK(report.pass());
    CHECK(report.summary() == "PASS n=2 seed=" + std::to_string(report.seed));
}

TEST_CASE("oracle_validate: rank-deficient map records a diagnostic") {
    const VerifyReport report = oracle_validate(counterexample_map(), 10, 100, 3);
    CHECK(report.verdict == Verdict::NondegeneracyFails);
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].name == "diagnostic-cycles");
    CHECK(report.checks[0].pass);
    CHECK(report.checks[0].detail == "found 1 cycle witnesses up to period 3");
    CHECK(report.pass());
}

TEST_CASE("oracle_validate: fixed-point witnesses are re-evaluated") {
    const VerifyReport report = oracle_validate(halfline_map(), 10, 100, 4);
    CHECK(report.verdict == Verdict::FixedPointExists);
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].name == "witness-exactness");
    CHECK(report.checks[0].pass);
}

TEST_CASE("oracle_validate: zero trials still runs the structural checks") {
    const VerifyReport report = oracle_validate(divergent_map(), 0, 10, 4);
    REQUIRE(report.checks.size() == 4);
    CHECK(report.pass());
}

TEST_CASE("oracle_validate: contract errors") {
    CHECK_THROWS_AS(oracle_validate(divergent_map(), -1, 100, 4), ContractError);
    CHECK_THROWS_AS(oracle_validate(divergent_map(), 10, 0, 4), ContractError);
    CHECK_THROWS_AS(oracle_validate(divergent_map(), 10, 100, 0), ContractError);
}

TEST_CASE("summary formats the first failing check") {
    VerifyReport report;
    report.n = 2;
    report.seed = 42;
    CHECK(report.pass());  // vacuously
    report.checks.push_back({"fixed-points-empty", true, ""});
    report.checks.push_back({"certificate-monotone", false, "boom"});
    report.checks.push_back({"orbit-growth", false, "boom"});
    CHECK_FALSE(report.pass());
    CHECK(report.summary() == "FAIL n=2 seed=42 check=certificate-monotone");
}

TEST_CASE("oracle_validate passes on a random map sweep") {
    SplitMix64 rng(51);
    for (int t = 0; t < 25; ++t) {
        GenConfig cfg;
        cfg.n = 2 + t % 3;
        cfg.seed = rng.next();
        const PwlMap<Rational> map = random_map(cfg);
        const VerifyReport report = oracle_validate(map, 10, 100, 5);
        INFO(report.digest);
        CHECK(report.pass());
    }
}
