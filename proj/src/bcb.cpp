#include "pwlfix/bcb.hpp"

#include <ostream>

namespace pwlfix {
namespace {

Vec<Rational> scaled_c(const BcbFamily& family, const Rational& mu) {
    Vec<Rational> c = family.c_dir;
    for (Rational& x : c) x *= mu;
    return c;
}

}  // namespace

const char* family_class_name(FamilyClass c) {
    switch (c) {
        case FamilyClass::Persistence: return "Persistence";
        case FamilyClass::NonsmoothFold: return "NonsmoothFold";
        case FamilyClass::Degenerate: return "Degenerate";
    }
    return "?";
}

const char* fold_side_name(FoldSide s) {
    switch (s) {
        case FoldSide::NegativeMu: return "mu<0";
        case FoldSide::PositiveMu: return "mu>0";
        case FoldSide::NotApplicable: return "n/a";
    }
    return "?";
}

PwlMap<Rational> instantiate(const BcbFamily& family, const Rational& mu) {
    return PwlMap<Rational>(family.a, family.b, scaled_c(family, mu));
}

std::pair<FamilyClass, FoldSide> classify_family(const BcbFamily& family) {
    // The mu = 1 instance carries the mu-independent piece data.
    const PwlMap<Rational> unit = instantiate(family, Rational(1));
    const PieceData<Rational>& pd = unit.pieces();
    const Rational product = pd.det_minus * pd.det_plus;
    const Rational& s1 = pd.s;  // u^T c_dir
    if (product.is_zero() || s1.is_zero()) return {FamilyClass::Degenerate, FoldSide::NotApplicable};
    if (product.sign() > 0) return {FamilyClass::Persistence, FoldSide::NotApplicable};
    // Both branch admissibilities y-_1(mu) <= 0 and y+_1(mu) >= 0 reduce to
    // sign(mu) = -sign(s1 det(M-)) when det(M-) det(M+) < 0.
    const bool negative_side = (s1 * pd.det_minus).sign() > 0;
    return {FamilyClass::NonsmoothFold, negative_side ? FoldSide::NegativeMu : FoldSide::PositiveMu};
}

BcbReport scan(const BcbFamily& family, const Rational& mu_from, const Rational& mu_to, int grid) {
    if (grid < 2) throw ContractError("scan: grid must be >= 2");
    if (!(mu_from < mu_to)) throw ContractError("scan: mu_from must be less than mu_to");

    BcbReport report;
    const auto cls = classify_family(family);
    report.family_class = cls.first;
    report.fold_side = cls.second;

    const PwlMap<Rational> unit = instantiate(family, Rational(1));
    const PieceData<Rational>& pd = unit.pieces();
    const Rational width = mu_to - mu_from;
    report.rows.reserve(grid);
    for (int i = 0; i < grid; ++i) {
        BcbRow row;
        row.mu = mu_from + width * Rational(i, grid - 1);

        if (!pd.det_minus.is_zero()) {
            row.y_minus_1 = row.mu * pd.s / pd.det_minus;
            row.adm_minus = row.y_minus_1->sign() <= 0;
        }
        if (!pd.det_plus.is_zero()) {
            row.y_plus_1 = row.mu * pd.s / pd.det_plus;
            row.adm_plus = row.y_plus_1->sign() >= 0;
        }

        const PwlMap<Rational> map = instantiate(family, row.mu);
        const FixedPointSet fps = fixed_points(map);
        row.n_fixed_points = fps.lines.empty() ? static_cast<long>(fps.points.size()) : -1;

        // Cross-check against the classifier; NondegeneracyFails makes no
        // existence claim, so only definite verdicts are compared.
        const Classification c = classify(map);
        if (c.verdict == Verdict::FixedPointExists && fps.empty())
            throw InternalError("scan: classifier and fixed-point count disagree");
        if (c.verdict == Verdict::AllOrbitsDiverge && !fps.empty())
            throw InternalError("scan: classifier and fixed-point count disagree");

        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_scan_csv(const BcbReport& report, std::ostream& out) {
    out << "mu,y_minus_1,y_plus_1,adm_minus,adm_plus,n_fixed_points\n";
    for (const BcbRow& row : report.rows) {
        out << row.mu.str() << ',';
        out << (row.y_minus_1 ? row.y_minus_1->str() : "n/a") << ',';
        out << (row.y_plus_1 ? row.y_plus_1->str() : "n/a") << ',';
        out << (row.adm_minus ? 1 : 0) << ',' << (row.adm_plus ? 1 : 0) << ',' << row.n_fixed_points << '\n';
    }
}

}  // namespace pwlfix
