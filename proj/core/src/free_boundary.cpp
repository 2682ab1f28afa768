#include "skewcall/free_boundary.hpp"

#include <cmath>

namespace skewcall {

namespace {

constexpr double kExpandCapMult = 1e3;

double pow_log(double base, double expo) { return std::exp(expo * std::log(base)); }

// B(z) / (A z^(n-m)), independent of z
double B_over_Azn(const CaseProfile& pr) {
    const double m = pr.m, n = pr.n, beta = pr.params.beta;
    return 2 * n * beta / (n * (1 - beta) - m * (1 + beta));
}

void require_case(const CaseProfile& pr, Case want, const char* who) {
    if (pr.cse != want)
        throw CaseMismatch(std::string(who) + " requires Case " + to_string(want) +
                           ", parameters are Case " + to_string(pr.cse));
}

}  // namespace

double F_hat(const CaseProfile& pr, double x, double z) {
    if (!(x > 0) || !(z > 0)) throw DomainError("F: x and z must be positive");
    const double m = pr.m, n = pr.n, K = pr.params.K;
    return ((n - 1) * x - n * K) * pow_log(x / z, n - m) + ((m - 1) * x - m * K) * B_over_Azn(pr);
}

double F(const CaseProfile& pr, double x, double z) {
    return F_hat(pr, x, z) * pr.A * pow_log(z, pr.n - pr.m);
}

double alpha(const CaseProfile& pr, double z, const RootConfig& cfg) {
    if (!(z > 0)) throw DomainError("alpha: z must be positive");
    const double z0 = pr.z0;
    auto f = [&](double x) { return F_hat(pr, x, z); };
    double lo, hi;
    switch (pr.cse) {
        case Case::I:
        case Case::II: {
            const double zb = *pr.zbeta;
            if (!(z < zb)) throw DomainError("alpha (Cases I/II): z must lie in (0, zbeta)");
            lo = zb;
            hi = z0;
            break;
        }
        case Case::III: {
            const double edge = *pr.frakC * pr.zc;
            if (!(z < edge)) throw DomainError("alpha (Case III): z must lie in (0, frakC*zc)");
            lo = pr.zc;
            hi = z0;
            break;
        }
        case Case::IV: {
            const double ratio = pr.skew_ratio();
            if (pr.n > ratio && pr.zbeta && *pr.zbeta > 0 && z < *pr.zbeta) {
                lo = std::max(z, z0);
                hi = *pr.zbeta;
            } else if (pr.n > ratio && pr.zbeta && *pr.zbeta > 0 && z > *pr.zbeta) {
                lo = *pr.zbeta;
                hi = z;
            } else if (pr.n > ratio && pr.zbeta && z == *pr.zbeta) {
                return z;  // F(zbeta; zbeta) = 0
            } else {
                lo = std::max(z, z0);
                hi = expand_bracket_up(f, lo, lo * cfg.expand, cfg,
                                       kExpandCapMult * std::max(z0, z));
            }
            break;
        }
        default:
            throw CaseMismatch("alpha: unclassified profile");
    }
    return bracketed_root(f, lo, hi, cfg).x;
}

double g(const CaseProfile& pr, double x, double z, const RootConfig& cfg) {
    if (!(x > 0)) throw DomainError("g: x must be positive");
    const double a = alpha(pr, z, cfg);
    const Excessive ex(pr, z);
    const double K = pr.params.K;
    return (a - K) / ex.psi(a) - (x - K) / ex.psi(x);
}

double z_minus(const CaseProfile& pr, const RootConfig& cfg) {
    require_case(pr, Case::III, "z_minus");
    const double K = pr.params.K;
    const double edge = *pr.frakC * pr.zc;
    auto gbar = [&](double zz) { return g(pr, zz, zz, cfg); };
    const double lo = K * (1 + 1e-12);
    const double hi = edge * (1 - 1e-12);
    return bracketed_root(gbar, lo, hi, cfg).x;
}

double z_plus(const CaseProfile& pr, const RootConfig& cfg) {
    require_case(pr, Case::IV, "z_plus");
    const double z0 = pr.z0;
    auto gz0 = [&](double zz) { return g(pr, z0, zz, cfg); };
    const double lo = z0 * (1 + 1e-12);
    const double hi = expand_bracket_up(gz0, lo, z0 * cfg.expand, cfg, kExpandCapMult * z0);
    return bracketed_root(gz0, lo, hi, cfg).x;
}

double frakz(const CaseProfile& pr, double z, const RootConfig& cfg) {
    require_case(pr, Case::III, "frakz");
    const double zm = z_minus(pr, cfg);
    const double edge = *pr.frakC * pr.zc;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * zm);
    if (z < zm - tol || !(z < edge))
        throw DomainError("frakz: z must lie in [z_minus, frakC*zc)");
    const double a = alpha(pr, z, cfg);
    auto gx = [&](double x) { return g(pr, x, z, cfg); };
    const double glo = gx(z);
    if (glo >= 0) return z;  // z = z_minus within tolerance
    // g > 0 on (frakz, alpha); march toward alpha until a positive probe
    double probe = a;
    double fp = -1;
    for (int j = 1; j <= 60 && fp <= 0; ++j) {
        probe = a - (a - z) * std::pow(0.5, j);
        fp = gx(probe);
    }
    if (fp <= 0) throw BracketFailure("frakz: no positive probe of g found below alpha(z)");
    return bracketed_root(gx, z, probe, cfg).x;
}

double J_hat(const CaseProfile& pr, double x, double z) {
    if (!(x > 0) || !(z > 0)) throw DomainError("J: x and z must be positive");
    const double m = pr.m, n = pr.n, K = pr.params.K;
    return ((n - 1) * x - n * K) * pow_log(z / x, m) - ((m - 1) * x - m * K) * pow_log(z / x, n) -
           (n - m) * (z - K);
}

double J(const CaseProfile& pr, double x, double z) {
    return J_hat(pr, x, z) * pr.A * pow_log(z, -pr.m);
}

double xi(const CaseProfile& pr, double z, const RootConfig& cfg) {
    require_case(pr, Case::III, "xi");
    if (!(z > 0) || !(z < pr.zc)) throw DomainError("xi: z must lie in (0, zc)");
    auto f = [&](double x) { return J_hat(pr, x, z); };
    double hi = pr.z0;
    if (f(hi) <= 0) hi = expand_bracket_up(f, pr.zc, hi, cfg, kExpandCapMult * pr.z0);
    return bracketed_root(f, pr.zc, hi, cfg).x;
}

double G(const CaseProfile& pr, double x, double y, double z) {
    if (!(x > 0) || !(y > 0) || !(z > 0)) throw DomainError("G: arguments must be positive");
    const double m = pr.m, n = pr.n, K = pr.params.K;
    auto term = [&](double u) {
        return ((n - 1) * u - n * K) * pow_log(z / u, m) - ((m - 1) * u - m * K) * pow_log(z / u, n);
    };
    return term(y) - term(x);
}

double H_hat(const CaseProfile& pr, double x, double y, double z) {
    if (!(x > 0) || !(y > 0) || !(z > 0)) throw DomainError("H: arguments must be positive");
    const double m = pr.m, n = pr.n, K = pr.params.K, beta = pr.params.beta;
    const double lead = (1 - beta) * (n - m) / (n * (1 - beta) - m * (1 + beta));
    return pow_log(z / y, n) * F_hat(pr, y, z) - lead * ((n - 1) * x - n * K) * pow_log(z / x, m);
}

double H(const CaseProfile& pr, double x, double y, double z) {
    return H_hat(pr, x, y, z) * pr.A * pow_log(z, -pr.m);
}

double inner_L(const CaseProfile& pr, double x, double z, const RootConfig& cfg) {
    auto f = [&](double y) { return G(pr, x, y, z); };
    const double lo = z;
    const double hi = expand_bracket_up(f, lo, z * cfg.expand, cfg,
                                        kExpandCapMult * std::max(pr.z0, z));
    return bracketed_root(f, lo, hi, cfg).x;
}

std::optional<GammaZeta> gamma_zeta(const CaseProfile& pr, double z, const RootConfig& cfg) {
    require_case(pr, Case::IV, "gamma_zeta");
    if (!(z > 0)) throw DomainError("gamma_zeta: z must be positive");
    const double z0 = pr.z0;
    if (!(z > z0)) return std::nullopt;
    auto k = [&](double x) { return H_hat(pr, x, inner_L(pr, x, z, cfg), z); };
    // keep the outer bracket away from z: G(x, z; z) ~ -(z-x)^2 near z
    // (dG/dy vanishes at y = z), so its floating-point sign is unreliable
    // closer than ~1e-6 z
    const double lo = z0 * (1 + 1e-12);
    const double hi = z * (1 - 1e-6);
    if (!(lo < hi)) return std::nullopt;
    const double klo = k(lo);
    if (!(klo > 0)) return std::nullopt;  // z <= z_plus
    const double khi = k(hi);
    if (!(khi < 0)) return std::nullopt;  // numerically at the existence edge
    const double gamma = bracketed_root(k, lo, hi, cfg).x;
    const double zeta = inner_L(pr, gamma, z, cfg);
    if (!(z0 < gamma && gamma < z && z < zeta)) return std::nullopt;
    return GammaZeta{gamma, zeta};
}

}  // namespace skewcall
