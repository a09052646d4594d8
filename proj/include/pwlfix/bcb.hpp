#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "pwlfix/analysis.hpp"

namespace pwlfix {

/// One-parameter border-collision family f_mu(x) = A x + b|x1| + mu * c_dir.
/// u and det(M+-) do not depend on mu.
struct BcbFamily {
    Matrix<Rational> a;
    Vec<Rational> b;
    Vec<Rational> c_dir;
};

enum class FamilyClass { Persistence, NonsmoothFold, Degenerate };
enum class FoldSide { NegativeMu, PositiveMu, NotApplicable };

const char* family_class_name(FamilyClass c);
const char* fold_side_name(FoldSide s);

struct BcbRow {
    Rational mu;
    std::optional<Rational> y_minus_1;  // absent when det(M-) = 0
    std::optional<Rational> y_plus_1;   // absent when det(M+) = 0
    bool adm_minus = false;
    bool adm_plus = false;
    long n_fixed_points = 0;  // -1 marks a fixed line (infinitely many)
};

struct BcbReport {
    FamilyClass family_class = FamilyClass::Degenerate;
    FoldSide fold_side = FoldSide::NotApplicable;
    std::vector<BcbRow> rows;
};

/// The map at one parameter value.
PwlMap<Rational> instantiate(const BcbFamily& family, const Rational& mu);

/// Persistence iff det(M-) det(M+) > 0, NonsmoothFold iff < 0 (fold_side is
/// the sign of mu carrying two fixed points), Degenerate when the product or
/// u^T c_dir vanishes (no transversal border collision).
std::pair<FamilyClass, FoldSide> classify_family(const BcbFamily& family);

/// Evaluates the branch values y+-_1(mu) = mu u^T c_dir / det(M+-), their
/// admissibility, and the exact fixed-point count on an evenly spaced exact
/// rational grid; each count is cross-checked against classify.
BcbReport scan(const BcbFamily& family, const Rational& mu_from, const Rational& mu_to, int grid);

/// CSV with header mu,y_minus_1,y_plus_1,adm_minus,adm_plus,n_fixed_points;
/// exact values as "p/q" tokens, absent branch values as "n/a".
void write_scan_csv(const BcbReport& report, std::ostream& out);

}  // namespace pwlfix
