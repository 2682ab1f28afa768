#include "skewcall/special_functions.hpp"

#include <cmath>
#include <limits>

namespace skewcall {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_positive(double x, const char* who) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": x must be in (0,inf)");
}
}  // namespace

double LogScaled::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

LogScaled LogScaled::from(double v) {
    if (v == 0) return {-kInf, 0};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

double power_pair_value(double a, double c, double n, double m, double x) {
    // sum of two signed exponentials with the larger magnitude factored out
    const double lx = std::log(x);
    if (a == 0 && c == 0) return 0.0;
    if (c == 0) return a * std::exp(n * lx);
    if (a == 0) return c * std::exp(m * lx);
    const double t1 = std::log(std::abs(a)) + n * lx;
    const double t2 = std::log(std::abs(c)) + m * lx;
    const double tmax = t1 > t2 ? t1 : t2;
    const double s1 = a > 0 ? 1.0 : -1.0;
    const double s2 = c > 0 ? 1.0 : -1.0;
    return std::exp(tmax) * (s1 * std::exp(t1 - tmax) + s2 * std::exp(t2 - tmax));
}

Excessive::Excessive(const CaseProfile& pr, double z_level)
    : m_(pr.m), n_(pr.n), beta_(pr.params.beta), z_(z_level) {
    if (!(z_level > 0)) throw DomainError("excessive level z must be positive");
    const double m = m_, n = n_, beta = beta_;
    c_.A = (n * (1 - beta) - m * (1 + beta)) / ((n - m) * (1 + beta));
    c_.Bz = 2 * n * beta * std::exp((n - m) * std::log(z_level)) / ((n - m) * (1 + beta));
    c_.phiD = (n * (1 - beta) - m * (1 + beta)) / ((n - m) * (1 - beta));
    c_.phiC = 2 * m * beta * std::exp((m - n) * std::log(z_level)) / ((n - m) * (1 - beta));
}

double Excessive::psi(double x) const {
    check_positive(x, "psi");
    if (x < z_) return std::exp(n_ * std::log(x));
    return power_pair_value(c_.A, c_.Bz, n_, m_, x);
}

double Excessive::psi_dminus(double x) const {
    check_positive(x, "psi_dminus");
    if (x <= z_) return n_ * std::exp((n_ - 1) * std::log(x));
    return power_pair_value(c_.A * n_, c_.Bz * m_, n_ - 1, m_ - 1, x);
}

double Excessive::psi_dplus(double x) const {
    check_positive(x, "psi_dplus");
    if (x < z_) return n_ * std::exp((n_ - 1) * std::log(x));
    return power_pair_value(c_.A * n_, c_.Bz * m_, n_ - 1, m_ - 1, x);
}

std::pair<double, double> Excessive::psi_d2(double x, bool& defined_at_x) const {
    check_positive(x, "psi_d2");
    const double below = n_ * (n_ - 1) * std::exp((n_ - 2) * std::log(x));
    const double above =
        power_pair_value(c_.A * n_ * (n_ - 1), c_.Bz * m_ * (m_ - 1), n_ - 2, m_ - 2, x);
    if (x == z_) {
        defined_at_x = false;
        return {below, above};
    }
    defined_at_x = true;
    const double v = x < z_ ? below : above;
    return {v, v};
}

double Excessive::phi(double x) const {
    check_positive(x, "phi");
    if (x >= z_) return std::exp(m_ * std::log(x));
    return power_pair_value(c_.phiC, c_.phiD, n_, m_, x);
}

double Excessive::phi_dminus(double x) const {
    check_positive(x, "phi_dminus");
    if (x > z_) return m_ * std::exp((m_ - 1) * std::log(x));
    return power_pair_value(c_.phiC * n_, c_.phiD * m_, n_ - 1, m_ - 1, x);
}

double Excessive::phi_dplus(double x) const {
    check_positive(x, "phi_dplus");
    if (x >= z_) return m_ * std::exp((m_ - 1) * std::log(x));
    return power_pair_value(c_.phiC * n_, c_.phiD * m_, n_ - 1, m_ - 1, x);
}

LogScaled Excessive::psi_log(double x) const {
    check_positive(x, "psi_log");
    const double lx = std::log(x);
    if (x < z_) return {n_ * lx, 1};
    // A x^n + Bz x^m with A > 0 and the x^n term dominating for large x
    const double t1 = std::log(c_.A) + n_ * lx;
    if (c_.Bz == 0) return {t1, 1};
    const double t2 = std::log(std::abs(c_.Bz)) + m_ * lx;
    const double s2 = c_.Bz > 0 ? 1.0 : -1.0;
    const double tmax = t1 > t2 ? t1 : t2;
    const double inner = std::exp(t1 - tmax) + s2 * std::exp(t2 - tmax);
    if (inner == 0) return {-kInf, 0};
    return {tmax + std::log(std::abs(inner)), inner > 0 ? 1 : -1};
}

ScaleFunction::ScaleFunction(const SkewGbmParams& p, double x1) : x1_(x1), z_(p.z) {
    p.validate();
    if (!(x1 > 0)) throw DomainError("scale normalization point must be positive");
    e_ = -2 * p.b / (p.sigma * p.sigma);
    jump_ = (1 - p.beta) / (1 + p.beta);
}

double ScaleFunction::density(double x) const {
    check_positive(x, "scale_density");
    const double base = std::exp(e_ * std::log(x / x1_));
    if (z_ >= x1_) return x >= z_ ? base * jump_ : base;
    return x >= z_ ? base : base / jump_;
}

double ScaleFunction::density_minus(double x) const {
    check_positive(x, "scale_density");
    const double base = std::exp(e_ * std::log(x / x1_));
    if (z_ >= x1_) return x > z_ ? base * jump_ : base;
    return x > z_ ? base : base / jump_;
}

double ScaleFunction::antiderivative(double x) const {
    if (e_ == -1.0) return x1_ * std::log(x / x1_);
    return x1_ * std::expm1((e_ + 1) * std::log(x / x1_)) / (e_ + 1);
}

double ScaleFunction::anti_inverse(double w) const {
    if (e_ == -1.0) return x1_ * std::exp(w / x1_);
    return x1_ * std::exp(std::log1p((e_ + 1) * w / x1_) / (e_ + 1));
}

double ScaleFunction::value(double x) const {
    check_positive(x, "scale");
    if (z_ >= x1_) {
        if (x <= z_) return antiderivative(x);
        return antiderivative(z_) + jump_ * (antiderivative(x) - antiderivative(z_));
    }
    if (x >= z_) return antiderivative(x);
    return antiderivative(z_) + (antiderivative(x) - antiderivative(z_)) / jump_;
}

double ScaleFunction::inverse(double q) const {
    if (!std::isfinite(q)) throw DomainError("scale_inverse: q must be finite");
    const double pz = value(z_);
    if (z_ >= x1_) {
        if (q <= pz) return anti_inverse(q);
        return anti_inverse(antiderivative(z_) + (q - pz) / jump_);
    }
    if (q >= pz) return anti_inverse(q);
    return anti_inverse(antiderivative(z_) + (q - pz) * jump_);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol) return left + right + delta / 15;
    if (depth <= 0)
        throw QuadratureFailure("adaptive quadrature failed to converge", a, b);
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double scale_density_general(double x, const std::function<double(double)>& drift_over_sigma2,
                             const std::vector<std::pair<double, double>>& atoms, double x1,
                             double quad_abs_tol) {
    check_positive(x, "scale_density_general");
    if (!(x1 > 0)) throw DomainError("scale normalization point must be positive");
    double integral = x <= x1 ? -integrate(drift_over_sigma2, x, x1, quad_abs_tol)
                              : integrate(drift_over_sigma2, x1, x, quad_abs_tol);
    double d = std::exp(-2 * integral);
    for (const auto& [zj, bj] : atoms) {
        if (!(bj > -1 && bj < 1)) throw DomainError("atom skewness must lie in (-1,1)");
        const double jf = (1 - bj) / (1 + bj);
        if (zj >= x1) {
            if (x >= zj) d *= jf;
        } else {
            if (x < zj) d /= jf;
        }
    }
    return d;
}

}  // namespace skewcall
