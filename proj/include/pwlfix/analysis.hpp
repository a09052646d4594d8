#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwlfix/pwlmap.hpp"

namespace pwlfix {

enum class Side { Left, Boundary, Right };
enum class PointKind { Isolated, OnLine };

const char* side_name(Side s);

/// Side of the switching plane a first coordinate lies on.
Side side_of(const Rational& x1);

/// Non-strict admissibility: Left admits x1 <= 0, Right admits x1 >= 0,
/// Boundary admits x1 = 0 only.
bool side_admits(Side side, const Rational& x1);

struct FixedPoint {
    Vec<Rational> point;
    Side side = Side::Boundary;
    PointKind kind = PointKind::Isolated;
};

/// Admissible parameter set of a fixed line, {t : base1 + t*dir1 lies on the
/// piece's side}. Always non-empty when reported.
enum class TRangeKind { All, AtMost, AtLeast };

struct TRange {
    TRangeKind kind = TRangeKind::All;
    Rational bound;  // ignored when kind == All
};

/// One-parameter family of fixed points of a singular piece:
/// M_side * base = c, M_side * direction = 0, points base + t*direction for
/// admissible t. side == Boundary means the whole line lies in {x1 = 0} and
/// is fixed for both pieces.
struct FixedLine {
    Vec<Rational> base;
    Vec<Rational> direction;
    Side side = Side::Left;
    TRange t_range;
};

struct FixedPointSet {
    std::vector<FixedPoint> points;
    std::vector<FixedLine> lines;
    std::vector<std::string> notes;  // degenerate-piece diagnostics (nullity >= 2)

    bool empty() const { return points.empty() && lines.empty(); }
};

enum class Verdict { FixedPointExists, AllOrbitsDiverge, NondegeneracyFails };

const char* verdict_name(Verdict v);

/// Divergence certificate: u^T f(x) >= u^T x + s for all x, with s > 0.
struct Certificate {
    Vec<Rational> u;
    Rational s;
};

struct Classification {
    Verdict verdict = Verdict::NondegeneracyFails;
    FixedPointSet witnesses;                 // populated for FixedPointExists; best effort otherwise
    std::optional<Certificate> certificate;  // populated for AllOrbitsDiverge
    PieceData<Rational> diagnostics;
};

/// All fixed points of the map: for each nonsingular piece the unique
/// candidate, kept iff admissible; for each singular nullity-1 piece the fixed
/// line, if the system is solvable and some admissible parameter exists.
/// Boundary coincidences are reported once; points lying on a reported line
/// are subsumed by it.
FixedPointSet fixed_points(const PwlMap<Rational>& map);
FixedPointSet fixed_points(const PwlMap<double>& map);

/// Constructive witness for the case u != 0, u^T c = 0: a fixed point with
/// first coordinate zero. Requires that precondition.
FixedPoint lemma_construct(const PwlMap<Rational>& map);

/// Full decision procedure: NondegeneracyFails iff u = 0; otherwise either a
/// fixed point exists (with witnesses) or every orbit diverges (with
/// certificate (u, s), normalized so s > 0).
Classification classify(const PwlMap<Rational>& map);
Classification classify(const PwlMap<double>& map);

}  // namespace pwlfix
