#include "pwlfix/analysis.hpp"

#include <algorithm>
#include <utility>

namespace pwlfix {
namespace {

int side_order(Side s) {
    switch (s) {
        case Side::Left: return 0;
        case Side::Boundary: return 1;
        case Side::Right: return 2;
    }
    return 3;
}

/// Shift the base along the direction so the pivot coordinate of the base is
/// zero; equal lines then have equal representations.
Vec<Rational> canonical_base(const Vec<Rational>& base, const Vec<Rational>& dir) {
    int pivot = 0;
    while (pivot < static_cast<int>(dir.size()) && dir[pivot].is_zero()) ++pivot;
    const Rational t = -base[pivot] / dir[pivot];
    Vec<Rational> out = base;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * dir[i];
    return out;
}

bool point_on_line(const Vec<Rational>& p, const FixedLine& line) {
    int pivot = 0;
    while (pivot < static_cast<int>(line.direction.size()) && line.direction[pivot].is_zero()) ++pivot;
    const Rational t = (p[pivot] - line.base[pivot]) / line.direction[pivot];
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != line.base[i] + t * line.direction[i]) return false;
    return side_admits(line.side, p[0]);
}

/// Fixed line of one singular nullity-1 piece, or nullopt when the piece has
/// no fixed point (system unsolvable) or no admissible parameter exists.
std::optional<FixedLine> piece_line(const Matrix<Rational>& m, const Vec<Rational>& c, Side side,
                                    const PieceData<Rational>& pd) {
    // When u != 0 it spans the left nullspace of the singular piece matrix, so
    // solvability of M z = c is exactly u^T c = 0. With u = 0 that test says
    // nothing; fall back to exact elimination. (In particular det = 0 with
    // s = u^T c != 0 means the piece has no fixed point at all.)
    if (pd.p_full_rank && !pd.s.is_zero()) return std::nullopt;
    std::optional<Vec<Rational>> z = solve_general(m, c);
    if (!z) return std::nullopt;
    Vec<Rational> v = nullspace_1d(m);

    FixedLine line;
    line.side = side;
    line.direction = std::move(v);
    const Rational& v1 = line.direction[0];
    const Rational& z1 = (*z)[0];
    if (v1.is_zero()) {
        if (!side_admits(side, z1)) return std::nullopt;  // every point of the line is inadmissible
        line.t_range = TRange{TRangeKind::All, Rational(0)};
    } else {
        const Rational t0 = -z1 / v1;
        const bool at_most = (side == Side::Left) == (v1.sign() > 0);
        line.t_range = TRange{at_most ? TRangeKind::AtMost : TRangeKind::AtLeast, t0};
    }
    line.base = std::move(*z);
    return line;
}

FixedPoint negate_witness(FixedPoint fp) {
    fp.point = vec_neg(fp.point);
    if (fp.side == Side::Left) fp.side = Side::Right;
    else if (fp.side == Side::Right) fp.side = Side::Left;
    return fp;
}

FixedLine negate_witness(FixedLine line) {
    // {-(z + t v)} with the same admissible t-set, on the mirrored side.
    line.base = vec_neg(line.base);
    line.direction = vec_neg(line.direction);
    if (line.side == Side::Left) line.side = Side::Right;
    else if (line.side == Side::Right) line.side = Side::Left;
    return line;
}

FixedPointSet negate_witnesses(FixedPointSet set) {
    for (FixedPoint& fp : set.points) fp = negate_witness(std::move(fp));
    for (FixedLine& line : set.lines) line = negate_witness(std::move(line));
    std::sort(set.points.begin(), set.points.end(),
              [](const FixedPoint& a, const FixedPoint& b) { return side_order(a.side) < side_order(b.side); });
    std::sort(set.lines.begin(), set.lines.end(),
              [](const FixedLine& a, const FixedLine& b) { return side_order(a.side) < side_order(b.side); });
    return set;
}

}  // namespace

const char* side_name(Side s) {
    switch (s) {
        case Side::Left: return "left";
        case Side::Boundary: return "boundary";
        case Side::Right: return "right";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::FixedPointExists: return "FixedPointExists";
        case Verdict::AllOrbitsDiverge: return "AllOrbitsDiverge";
        case Verdict::NondegeneracyFails: return "NondegeneracyFails";
    }
    return "?";
}

Side side_of(const Rational& x1) {
    const int sg = x1.sign();
    if (sg < 0) return Side::Left;
    if (sg > 0) return Side::Right;
    return Side::Boundary;
}

bool side_admits(Side side, const Rational& x1) {
    switch (side) {
        case Side::Left: return x1.sign() <= 0;
        case Side::Right: return x1.sign() >= 0;
        case Side::Boundary: return x1.is_zero();
    }
    return false;
}

FixedPointSet fixed_points(const PwlMap<Rational>& map) {
    const PieceData<Rational>& pd = map.pieces();
    const int n = map.dim();
    FixedPointSet out;

    struct PieceRef {
        const Matrix<Rational>* m;
        const Rational* det;
        Side side;
        const char* name;
    };
    const PieceRef refs[2] = {{&pd.m_minus, &pd.det_minus, Side::Left, "left"},
                              {&pd.m_plus, &pd.det_plus, Side::Right, "right"}};

    std::vector<FixedPoint> candidates;
    for (const PieceRef& ref : refs) {
        if (!ref.det->is_zero()) {
            Vec<Rational> y = solve_unique(*ref.m, map.c());
            if (side_admits(ref.side, y[0]))
                candidates.push_back(FixedPoint{std::move(y), Side::Boundary, PointKind::Isolated});
            continue;
        }
        const int r = rank(*ref.m);
        if (r < n - 1) {
            out.notes.push_back(std::string(ref.name) + " piece is singular with nullity " + std::to_string(n - r) +
                                "; fixed points of this piece, if any, form an affine set of that dimension "
                                "(not enumerated)");
            continue;
        }
        if (std::optional<FixedLine> line = piece_line(*ref.m, map.c(), ref.side, pd)) out.lines.push_back(*line);
    }

    // A line lying entirely in the switching plane is fixed for both pieces
    // and shows up twice; keep one copy, labeled Boundary.
    if (out.lines.size() == 2 && out.lines[0].direction[0].is_zero() && out.lines[0].base[0].is_zero() &&
        out.lines[1].direction[0].is_zero() && out.lines[1].base[0].is_zero() &&
        out.lines[0].direction == out.lines[1].direction &&
        canonical_base(out.lines[0].base, out.lines[0].direction) ==
            canonical_base(out.lines[1].base, out.lines[1].direction)) {
        out.lines.pop_back();
        out.lines[0].side = Side::Boundary;
    }

    // Dedupe the y- = y+ coincidence, assign sides by sign, and drop points a
    // reported line already covers.
    if (candidates.size() == 2 && candidates[0].point == candidates[1].point) candidates.pop_back();
    for (FixedPoint& fp : candidates) {
        fp.side = side_of(fp.point[0]);
        bool on_line = false;
        for (const FixedLine& line : out.lines) on_line = on_line || point_on_line(fp.point, line);
        if (!on_line) out.points.push_back(std::move(fp));
    }

    std::sort(out.points.begin(), out.points.end(),
              [](const FixedPoint& a, const FixedPoint& b) { return side_order(a.side) < side_order(b.side); });
    std::sort(out.lines.begin(), out.lines.end(),
              [](const FixedLine& a, const FixedLine& b) { return side_order(a.side) < side_order(b.side); });
    return out;
}

FixedPointSet fixed_points(const PwlMap<double>& map) { return fixed_points(to_rational(map)); }

FixedPoint lemma_construct(const PwlMap<Rational>& map) {
    const PieceData<Rational>& pd = map.pieces();
    if (!pd.p_full_rank) throw ContractError("lemma_construct requires u != 0");
    if (!pd.s.is_zero()) throw ContractError("lemma_construct requires u^T c = 0");

    if (!pd.det_minus.is_zero()) {
        // y-_1 = u^T c / det(M-) = 0: the left candidate sits on the boundary
        // and is therefore admissible.
        Vec<Rational> y = solve_unique(pd.m_minus, map.c());
        if (!y[0].is_zero()) throw InternalError("lemma_construct: nonsingular candidate is off the boundary");
        return FixedPoint{std::move(y), Side::Boundary, PointKind::Isolated};
    }

    // Singular M- with u != 0 has nullity exactly 1; u spans its left
    // nullspace and u^T c = 0, so M- z = c is solvable and the kernel
    // direction has v_1 != 0.
    Vec<Rational> v = nullspace_1d(pd.m_minus);
    if (v[0].is_zero()) throw InternalError("lemma_construct: kernel direction has zero first coordinate");
    std::optional<Vec<Rational>> z = solve_general(pd.m_minus, map.c());
    if (!z) throw InternalError("lemma_construct: singular system unexpectedly unsolvable");
    const Rational t = -(*z)[0] / v[0];
    Vec<Rational> point = *z;
    for (std::size_t i = 0; i < point.size(); ++i) point[i] += t * v[i];
    return FixedPoint{std::move(point), Side::Boundary, PointKind::OnLine};
}

Classification classify(const PwlMap<Rational>& map) {
    Classification result;
    result.diagnostics = map.pieces();
    const PieceData<Rational>& pd = result.diagnostics;

    if (!pd.p_full_rank) {
        result.verdict = Verdict::NondegeneracyFails;
        result.witnesses = fixed_points(map);  // best effort; no existence claim either way
        return result;
    }

    if (pd.s.is_zero()) {
        result.verdict = Verdict::FixedPointExists;
        result.witnesses = fixed_points(map);
        lemma_construct(map);  // the constructive witness must exist; recompute as a cross-check
        if (result.witnesses.empty()) throw InternalError("classify: s = 0 but no fixed point found");
        return result;
    }

    if (pd.s.sign() < 0) {
        Classification inner = classify(negate_conjugate(map));
        result.verdict = inner.verdict;
        result.witnesses = negate_witnesses(std::move(inner.witnesses));
        if (inner.certificate)
            result.certificate = Certificate{vec_neg(inner.certificate->u), inner.certificate->s};
        return result;
    }

    // s > 0: an admissible piece candidate exists iff some determinant has the
    // right sign (y-_1 = s/det(M-), y+_1 = s/det(M+)).
    if (pd.det_minus.sign() < 0 || pd.det_plus.sign() > 0) {
        result.verdict = Verdict::FixedPointExists;
        result.witnesses = fixed_points(map);
        if (result.witnesses.empty()) throw InternalError("classify: admissible candidate predicted but none found");
        return result;
    }

    result.verdict = Verdict::AllOrbitsDiverge;
    result.certificate = Certificate{pd.u, pd.s};
    if (!fixed_points(map).empty()) throw InternalError("classify: divergence verdict with a fixed point present");
    return result;
}

Classification classify(const PwlMap<double>& map) { return classify(to_rational(map)); }

}  // namespace pwlfix
