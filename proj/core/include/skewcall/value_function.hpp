#pragma once

#include "skewcall/free_boundary.hpp"

#include <map>
#include <string>
#include <vector>

namespace skewcall {

enum class Regime { OneSidedAlpha, OneSidedAtZ, OneSidedZ0, PointPlusRay, TwoIntervals };

const char* to_string(Regime r);

/// One closed-form piece on (lo, hi]: either cn x^n + cm x^m or x - K.
struct Piece {
    double lo, hi;
    bool affine;
    double cn = 0, cm = 0;
};

/// Closed component [lo, hi] of the stopping set; lo == hi encodes an
/// isolated point, hi == +inf the terminal ray.
struct Component {
    double lo, hi;
};

struct StoppingRegion {
    std::vector<Component> components;
    bool contains(double x) const;
};

/// The assembled closed-form value function: ordered pieces covering
/// (0, inf), the stopping region, the regime tag and the named solve
/// constants (Gamma, C/D, Cl/Dl/Cr/Dr, boundary points).
struct PiecewiseValueFunction {
    SkewGbmParams params;
    CaseProfile profile;
    Regime regime;
    std::vector<Piece> pieces;
    StoppingRegion region;
    std::map<std::string, double> constants;

    double evaluate(double x) const;
    double d_left(double x) const;
    double d_right(double x) const;
    /// Largest finite piece breakpoint.
    double rightmost_breakpoint() const;
};

/// Full regime dispatch: picks the one-sided, point-plus-ray or
/// two-interval construction from (case, z) and assembles the pieces.
PiecewiseValueFunction solve(const SkewGbmParams& p, const RootConfig& cfg);
PiecewiseValueFunction solve(const SkewGbmParams& p);

const StoppingRegion& stopping_rule(const PiecewiseValueFunction& vf);

/// Smooth-fit defect at z in the a = z regime of Cases I/II:
/// differences of v'/p' and v'/psi' across z, both read off the
/// assembled function and from the closed form.
struct SmoothFitGap {
    double gap_p, gap_psi;
    double gap_p_closed, gap_psi_closed;
};

SmoothFitGap smooth_fit_gap(const SkewGbmParams& p, const RootConfig& cfg = {});

}  // namespace skewcall
