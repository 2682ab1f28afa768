#pragma once

#include "skewcall/model.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace skewcall {

/// Sign/log-magnitude representation for values whose plain double form
/// can overflow (powers x^n with large exponents).
struct LogScaled {
    double log_abs;  ///< ln|v|, -inf encodes v == 0
    int sign;        ///< -1, 0, +1

    double value() const;
    static LogScaled from(double v);
};

/// a * x^n + c * x^m evaluated through logs, stable for extreme x.
double power_pair_value(double a, double c, double n, double m, double x);

/// Coefficients of the minimal excessive pair at level z:
///   psi(x;z) = x^n (x<z),  A x^n + Bz x^m (x>=z)
///   phi(x;z) = phiC x^n + phiD x^m (x<z),  x^m (x>=z)
/// All four follow from continuity at z plus the skew derivative condition
/// (1+beta) g'_+(z) = (1-beta) g'_-(z).
struct ExcessivePair {
    double A, Bz, phiC, phiD;
};

/// psi(.;z), phi(.;z) and one-sided derivatives for a fixed level z
/// (which may differ from the level in the profile's parameter vector).
class Excessive {
  public:
    Excessive(const CaseProfile& pr, double z_level);
    explicit Excessive(const CaseProfile& pr) : Excessive(pr, pr.params.z) {}

    double z() const { return z_; }
    const ExcessivePair& constants() const { return c_; }

    double psi(double x) const;
    double psi_dminus(double x) const;
    double psi_dplus(double x) const;
    /// psi'' off z; at x == z returns the (left, right) pair and sets
    /// defined_at_x = false.
    std::pair<double, double> psi_d2(double x, bool& defined_at_x) const;

    double phi(double x) const;
    double phi_dminus(double x) const;
    double phi_dplus(double x) const;

    LogScaled psi_log(double x) const;

  private:
    double m_, n_, beta_, z_;
    ExcessivePair c_;
};

/// Scale function of the skew GBM, normalised so p(x1) = 0, p'(x1-) = 1.
/// p' jumps by (1-beta)/(1+beta) across z; elsewhere p'(x) ~ x^(-2b/sigma^2).
class ScaleFunction {
  public:
    ScaleFunction(const SkewGbmParams& p, double x1);
    explicit ScaleFunction(const SkewGbmParams& p) : ScaleFunction(p, p.K) {}

    double x1() const { return x1_; }
    double exponent() const { return e_; }          ///< -2b/sigma^2
    double jump_factor() const { return jump_; }    ///< (1-beta)/(1+beta)

    double density(double x) const;   ///< p'_+(x)
    double density_minus(double x) const;
    double value(double x) const;     ///< p(x)
    double inverse(double q) const;   ///< p^{-1}

  private:
    double antiderivative(double x) const;  ///< of u^e, zero at x1
    double anti_inverse(double w) const;

    double x1_, e_, jump_, z_;
};

/// General scale density exp(-int_{x1}^x 2b/sigma^2) * prod over atoms,
/// with the drift integral done by adaptive Simpson quadrature
/// (absolute tolerance per panel). Atoms are (z_j, beta_j).
double scale_density_general(double x,
                             const std::function<double(double)>& drift_over_sigma2,
                             const std::vector<std::pair<double, double>>& atoms,
                             double x1,
                             double quad_abs_tol = 1e-12);

}  // namespace skewcall
