#pragma once

#include "skewcall/value_function.hpp"

namespace skewcall {

struct VerifyConfig {
    int nodes = 4096;
    double span_lo_frac = 1e-3;   ///< grid starts at span_lo_frac * K
    double span_hi_mult = 10.0;   ///< grid ends at span_hi_mult * (rightmost breakpoint | z0 | z)
    double tol_gen = 1e-8;        ///< generator residual, relative to r*v
    double tol_obs_frac = 1e-10;  ///< obstacle violation, absolute, times K
    double tol_skew = 1e-10;      ///< skew condition at z, relative
    double tol_cont = 1e-9;  ///< piece continuity, relative
    double tol_fit = 1e-9;   ///< smooth fit at non-z stopping boundaries
};

/// Residuals of the variational inequality on the grid, one pass flag per
/// check. Failures are reported, never thrown.
struct VerificationReport {
    double obstacle_violation = 0;   ///< max((x-K)^+ - w)
    double gen_resid_continuation = 0;  ///< max |generator| / (r w), power pieces
    double gen_pos_stopping = 0;        ///< max positive (bx - r(x-K)) / (r w), affine pieces
    double skew_resid = 0;           ///< (1+b)w'_+(z) - (1-b)w'_-(z), signed, relative
    bool z_is_stopping = false;
    double continuity_defect = 0;    ///< max relative jump across piece breakpoints
    double smooth_fit_defect = 0;    ///< max |w' - 1| at stopping boundaries other than z
    // w/phi at the left grid end and w/psi at the right one must both decay
    // toward the boundary; each is compared against its value one decade
    // inside the grid
    double growth_ratio_lo = 0;
    double growth_ratio_lo_inner = 0;
    double growth_ratio_hi = 0;
    double growth_ratio_hi_inner = 0;

    bool pass_obstacle = false, pass_generator = false, pass_skew = false;
    bool pass_continuity = false, pass_smooth_fit = false, pass_growth = false;
    bool pass = false;
};

/// Geometric evaluation grid with all piece breakpoints inserted.
std::vector<double> standard_grid(const PiecewiseValueFunction& vf, const VerifyConfig& cfg = {});

VerificationReport verify(const PiecewiseValueFunction& vf, const VerifyConfig& cfg = {});

enum class DispatchBoundary { ZBeta, Z0, ZMinus, ZC, ZPlus };

const char* to_string(DispatchBoundary b);

/// Solves at z = boundary*(1 +/- offset) and returns the sup-norm
/// difference of the two value functions on the standard grid.
double regime_continuity_check(const SkewGbmParams& p, DispatchBoundary boundary,
                               double offset = 1e-8, const VerifyConfig& cfg = {});

}  // namespace skewcall
