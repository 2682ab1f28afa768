#include "skewcall/model.hpp"

#include <cmath>
#include <tuple>

namespace skewcall {

void SkewGbmParams::validate() const {
    if (!(r > 0)) throw DomainError("r must be positive");
    if (!(K > 0)) throw DomainError("K must be positive");
    if (!(z > 0)) throw DomainError("z must be positive");
    if (!(sigma != 0) || !std::isfinite(sigma)) throw DomainError("sigma must be nonzero");
    if (!(beta > -1 && beta < 1)) throw DomainError("beta must lie in (-1,1)");
    if (beta == 0) throw DegenerateBeta("beta = 0 is the classical GBM; use the reference pricer");
    if (!std::isfinite(r) || !std::isfinite(b) || !std::isfinite(K) || !std::isfinite(z))
        throw DomainError("parameters must be finite");
}

void SkewGbmParams::validate_finite_value() const {
    validate();
    if (!(r > b)) throw AssumptionViolated("r <= b: value function is infinite");
}

const char* to_string(Case c) {
    switch (c) {
        case Case::I: return "I";
        case Case::II: return "II";
        case Case::III: return "III";
        case Case::IV: return "IV";
    }
    return "?";
}

std::pair<double, double> characteristic_roots(const SkewGbmParams& p) {
    const double s2 = p.sigma * p.sigma;
    const double h = p.b / s2 - 0.5;
    const double d = std::sqrt(h * h + 2 * p.r / s2);
    return {-h - d, -h + d};
}

double CaseProfile::B_at(double z_level) const {
    const double beta = params.beta;
    return 2 * n * beta * std::exp((n - m) * std::log(z_level)) / ((n - m) * (1 + beta));
}

CaseProfile classify(const SkewGbmParams& p) {
    p.validate_finite_value();
    CaseProfile pr;
    pr.params = p;
    std::tie(pr.m, pr.n) = characteristic_roots(p);
    const double m = pr.m, n = pr.n, beta = p.beta;

    pr.A = (n * (1 - beta) - m * (1 + beta)) / ((n - m) * (1 + beta));
    pr.beta_c = (n - 1) / (n + 2 * m - 1);
    pr.zc = p.r * p.K / (p.r - p.b);
    pr.z0 = n * p.K / (n - 1);
    const double ratio = pr.skew_ratio();
    if (n != ratio) pr.zbeta = n * p.K / (n - ratio);

    if (beta > 0) {
        pr.cse = Case::IV;
    } else if (p.b <= 0) {
        pr.cse = Case::I;
    } else {
        pr.cse = (beta >= pr.beta_c) ? Case::II : Case::III;
    }

    if (pr.cse == Case::III) {
        const double num = -(n - 1) * (n * (1 - beta) - m * (1 + beta));
        const double den = 2 * m * (m - 1) * beta;
        pr.frakC = std::pow(num / den, 1.0 / (n - m));
    }
    return pr;
}

ConvexitySignature convexity_signature(const CaseProfile& pr, std::span<const double> probes) {
    const SkewGbmParams& p = pr.params;
    const double m = pr.m, n = pr.n, A = pr.A;
    const double B = pr.B_at(p.z);
    ConvexitySignature sig;
    sig.probes.assign(probes.begin(), probes.end());
    sig.signs.reserve(probes.size());
    for (double x : probes) {
        if (!(x > 0) || x == p.z) throw DomainError("convexity probe must be in (0,inf) \\ {z}");
        double d2;
        if (x < p.z) {
            d2 = n * (n - 1) * std::pow(x, n - 2);
        } else {
            d2 = A * n * (n - 1) * std::pow(x, n - 2) + B * m * (m - 1) * std::pow(x, m - 2);
        }
        sig.signs.push_back(d2 > 0 ? 1 : (d2 < 0 ? -1 : 0));
    }
    if (pr.frakC) sig.concave_window = {p.z, p.z / *pr.frakC};
    sig.dpsi_left_at_z = n * std::pow(p.z, n - 1);
    sig.dpsi_right_at_z = A * n * std::pow(p.z, n - 1) + B * m * std::pow(p.z, m - 1);
    return sig;
}

double gbm_reference_boundary(double r, double b, double sigma, double K) {
    SkewGbmParams q{r, b, sigma, K, 1.0, 0.5};  // z, beta irrelevant for the roots
    auto [m, n] = characteristic_roots(q);
    (void)m;
    if (!(n > 1)) throw AssumptionViolated("r <= b: value function is infinite");
    return n * K / (n - 1);
}

double gbm_reference_value(double r, double b, double sigma, double K, double x) {
    if (!(x > 0)) throw DomainError("x must be positive");
    SkewGbmParams q{r, b, sigma, K, 1.0, 0.5};
    auto [m, n] = characteristic_roots(q);
    (void)m;
    if (!(n > 1)) throw AssumptionViolated("r <= b: value function is infinite");
    const double a = n * K / (n - 1);
    if (x >= a) return x - K;
    return (a - K) * std::exp(n * std::log(x / a));
}

}  // namespace skewcall
