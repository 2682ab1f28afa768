#pragma once

#include "skewcall/params.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace skewcall {

enum class Case { I, II, III, IV };

const char* to_string(Case c);

/// Roots, critical constants and the case tag of a parameter vector.
///
/// m < 0 < 1 < n solve (sigma^2/2) k^2 + (b - sigma^2/2) k - r = 0.
/// Critical points: zc = rK/(r-b), zbeta = nK/(n - (1+beta)/(1-beta))
/// (absent when n equals that ratio; negative in part of Case IV),
/// z0 = nK/(n-1). frakC in (0,1) exists only in Case III, where
/// psi(.;z) is concave exactly on [z, z/frakC].
struct CaseProfile {
    SkewGbmParams params;
    double m = 0, n = 0;
    double A = 0;       ///< psi upper-branch x^n coefficient
    double beta_c = 0;  ///< (n-1)/(n+2m-1)
    double zc = 0;
    std::optional<double> zbeta;  ///< absent iff n == (1+beta)/(1-beta)
    double z0 = 0;
    std::optional<double> frakC;  ///< Case III only
    Case cse = Case::I;

    /// (1+beta)/(1-beta), the slope ratio entering zbeta.
    double skew_ratio() const { return (1 + params.beta) / (1 - params.beta); }
    /// B(z') = 2 n beta z'^(n-m) / ((n-m)(1+beta)) for an arbitrary level.
    double B_at(double z_level) const;
};

/// Roots of the characteristic quadratic, (m, n) with m < 0 < n.
std::pair<double, double> characteristic_roots(const SkewGbmParams& p);

/// Validates, computes all constants and assigns the case tag.
/// Throws AssumptionViolated if r <= b, DegenerateBeta if beta == 0.
CaseProfile classify(const SkewGbmParams& p);

/// Sign report of psi''(.;z) on a probe grid, plus the structural
/// information that makes psi non-convex where it is: the Case III
/// concavity window and the one-sided derivative jump at z.
struct ConvexitySignature {
    std::vector<double> probes;
    std::vector<int> signs;                                ///< sign of psi'' at each probe
    std::optional<std::pair<double, double>> concave_window;  ///< [z, z/frakC], Case III
    double dpsi_left_at_z = 0;
    double dpsi_right_at_z = 0;
};

ConvexitySignature convexity_signature(const CaseProfile& pr, std::span<const double> probes);

/// Classical (beta = 0) perpetual American call: boundary a = nK/(n-1),
/// value (a-K)(x/a)^n below a and x-K above. Reference for limit tests.
double gbm_reference_boundary(double r, double b, double sigma, double K);
double gbm_reference_value(double r, double b, double sigma, double K, double x);

}  // namespace skewcall
