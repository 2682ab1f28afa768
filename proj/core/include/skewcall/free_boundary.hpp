#pragma once

#include "skewcall/model.hpp"
#include "skewcall/root_finding.hpp"
#include "skewcall/special_functions.hpp"

#include <optional>

namespace skewcall {

/// Pair of free boundaries of the two-interval stopping region (Case IV,
/// z > z_plus), ordered z0 < gamma < z < zeta.
struct GammaZeta {
    double gamma;
    double zeta;
};

/// F(x;z) = [(n-1)x - nK] A x^(n-m) + [(m-1)x - mK] B(z).
double F(const CaseProfile& pr, double x, double z);

/// F(x;z) / (A z^(n-m)) — same roots and signs, conditioned for large
/// exponent spreads. All internal solves run on this form.
double F_hat(const CaseProfile& pr, double x, double z);

/// Free-boundary function alpha(z): the root of F(.;z) = 0 described by
/// the case analysis. Domains: Cases I/II z in (0, zbeta); Case III
/// z in (0, frakC*zc); Case IV any z > 0.
double alpha(const CaseProfile& pr, double z, const RootConfig& cfg = {});

/// g(x, z) = (alpha(z)-K)/psi(alpha(z);z) - (x-K)/psi(x;z).
double g(const CaseProfile& pr, double x, double z, const RootConfig& cfg = {});

/// Case III: the unique root of z -> g(z,z) in (K, frakC*zc).
double z_minus(const CaseProfile& pr, const RootConfig& cfg = {});

/// Case IV: the unique root of z -> g(z0, z) in (z0, inf).
double z_plus(const CaseProfile& pr, const RootConfig& cfg = {});

/// Case III diagnostic: for z in [z_minus, frakC*zc), the root of
/// g(., z) in (z, alpha(z)); equals z at z = z_minus.
double frakz(const CaseProfile& pr, double z, const RootConfig& cfg = {});

/// J(x;z) scaled by z^m / A (same sign); J and xi are Case III objects.
double J_hat(const CaseProfile& pr, double x, double z);
double J(const CaseProfile& pr, double x, double z);

/// Case III: unique root of J(.;z) in (zc, z0) for z in (0, zc).
double xi(const CaseProfile& pr, double z, const RootConfig& cfg = {});

/// Two-boundary system functions of Case IV (exact paper forms).
double G(const CaseProfile& pr, double x, double y, double z);
double H(const CaseProfile& pr, double x, double y, double z);
/// H scaled by z^m / A (same sign).
double H_hat(const CaseProfile& pr, double x, double y, double z);

/// Inner solve: L(x;z), the unique root of G(x, .; z) in (z, inf).
double inner_L(const CaseProfile& pr, double x, double z, const RootConfig& cfg = {});

/// Nested solve of the system G = H = 0. Empty exactly when z <= z_plus.
std::optional<GammaZeta> gamma_zeta(const CaseProfile& pr, double z, const RootConfig& cfg = {});

}  // namespace skewcall
