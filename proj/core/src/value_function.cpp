#include "skewcall/value_function.hpp"

#include <cmath>
#include <limits>

namespace skewcall {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::OneSidedAlpha: return "OneSidedAlpha";
        case Regime::OneSidedAtZ: return "OneSidedAtZ";
        case Regime::OneSidedZ0: return "OneSidedZ0";
        case Regime::PointPlusRay: return "PointPlusRay";
        case Regime::TwoIntervals: return "TwoIntervals";
    }
    return "?";
}

bool StoppingRegion::contains(double x) const {
    for (const auto& c : components)
        if (x >= c.lo && x <= c.hi) return true;
    return false;
}

double PiecewiseValueFunction::evaluate(double x) const {
    if (!(x > 0)) throw DomainError("evaluate: x must be positive");
    for (const auto& pc : pieces) {
        if (x <= pc.hi || pc.hi == kInf) {
            if (pc.affine) return x - params.K;
            return power_pair_value(pc.cn, pc.cm, profile.n, profile.m, x);
        }
    }
    throw DomainError("evaluate: pieces do not cover x");
}

namespace {

double piece_derivative(const PiecewiseValueFunction& vf, const Piece& pc, double x) {
    if (pc.affine) return 1.0;
    return power_pair_value(pc.cn * vf.profile.n, pc.cm * vf.profile.m, vf.profile.n - 1,
                            vf.profile.m - 1, x);
}

}  // namespace

double PiecewiseValueFunction::d_left(double x) const {
    if (!(x > 0)) throw DomainError("d_left: x must be positive");
    for (const auto& pc : pieces)
        if (x <= pc.hi || pc.hi == kInf) return piece_derivative(*this, pc, x);
    throw DomainError("d_left: pieces do not cover x");
}

double PiecewiseValueFunction::d_right(double x) const {
    if (!(x > 0)) throw DomainError("d_right: x must be positive");
    for (const auto& pc : pieces)
        if (x < pc.hi || pc.hi == kInf) return piece_derivative(*this, pc, x);
    throw DomainError("d_right: pieces do not cover x");
}

double PiecewiseValueFunction::rightmost_breakpoint() const {
    double r = 0;
    for (const auto& pc : pieces)
        if (pc.hi != kInf) r = std::max(r, pc.hi);
    return r;
}

namespace {

// w = Gamma psi(.;z) up to a, x-K beyond (eqs (w-)/(Gamma))
void assemble_one_sided(PiecewiseValueFunction& vf, double a) {
    const auto& p = vf.params;
    const auto& pr = vf.profile;
    const Excessive ex(pr);
    const double Gamma = (a - p.K) / ex.psi(a);
    vf.constants["Gamma"] = Gamma;
    vf.constants["a"] = a;
    if (a <= p.z) {
        vf.pieces = {{0, a, false, Gamma, 0}, {a, kInf, true}};
    } else {
        const double B = ex.constants().Bz;
        vf.pieces = {{0, p.z, false, Gamma, 0},
                     {p.z, a, false, Gamma * ex.constants().A, Gamma * B},
                     {a, kInf, true}};
    }
    vf.region.components = {{a, kInf}};
}

}  // namespace

PiecewiseValueFunction solve(const SkewGbmParams& p, const RootConfig& cfg) {
    const CaseProfile pr = classify(p);
    PiecewiseValueFunction vf;
    vf.params = p;
    vf.profile = pr;
    const double z = p.z, K = p.K;
    const double n = pr.n, m = pr.m;

    switch (pr.cse) {
        case Case::I:
        case Case::II: {
            const double zb = *pr.zbeta;
            if (z < zb) {
                vf.regime = Regime::OneSidedAlpha;
                assemble_one_sided(vf, alpha(pr, z, cfg));
            } else if (z <= pr.z0) {
                vf.regime = Regime::OneSidedAtZ;
                assemble_one_sided(vf, z);
            } else {
                vf.regime = Regime::OneSidedZ0;
                assemble_one_sided(vf, pr.z0);
            }
            return vf;
        }
        case Case::III: {
            const double zm = z_minus(pr, cfg);
            vf.constants["z_minus"] = zm;
            if (z <= zm) {
                vf.regime = Regime::OneSidedAlpha;
                assemble_one_sided(vf, alpha(pr, z, cfg));
            } else if (z < pr.zc) {
                vf.regime = Regime::PointPlusRay;
                const double x = xi(pr, z, cfg);
                const double C = -((m - 1) * x - m * K) * std::pow(x, -n) / (n - m);
                const double D = ((n - 1) * x - n * K) * std::pow(x, -m) / (n - m);
                const double G0 = (z - K) * std::pow(z, -n);
                vf.constants["xi"] = x;
                vf.constants["C"] = C;
                vf.constants["D"] = D;
                vf.constants["Gamma"] = G0;
                vf.pieces = {{0, z, false, G0, 0}, {z, x, false, C, D}, {x, kInf, true}};
                vf.region.components = {{z, z}, {x, kInf}};
            } else if (z <= pr.z0) {
                vf.regime = Regime::OneSidedAtZ;
                assemble_one_sided(vf, z);
            } else {
                vf.regime = Regime::OneSidedZ0;
                assemble_one_sided(vf, pr.z0);
            }
            return vf;
        }
        case Case::IV: {
            const double zp = z_plus(pr, cfg);
            vf.constants["z_plus"] = zp;
            std::optional<GammaZeta> gz;
            if (z > zp) gz = gamma_zeta(pr, z, cfg);
            if (!gz) {
                // z <= z_plus, or z beyond it by less than the solvable
                // margin; the one-sided form coincides with the two-interval
                // one at z_plus
                vf.regime = Regime::OneSidedAlpha;
                assemble_one_sided(vf, alpha(pr, z, cfg));
                return vf;
            }
            const double ga = gz->gamma, zt = gz->zeta;
            const double Cl = -((m - 1) * ga - m * K) * std::pow(ga, -n) / (n - m);
            const double Dl = ((n - 1) * ga - n * K) * std::pow(ga, -m) / (n - m);
            const double Cr = -((m - 1) * zt - m * K) * std::pow(zt, -n) / (n - m);
            const double Dr = ((n - 1) * zt - n * K) * std::pow(zt, -m) / (n - m);
            const double z0 = pr.z0;
            vf.regime = Regime::TwoIntervals;
            vf.constants["gamma"] = ga;
            vf.constants["zeta"] = zt;
            vf.constants["Cl"] = Cl;
            vf.constants["Dl"] = Dl;
            vf.constants["Cr"] = Cr;
            vf.constants["Dr"] = Dr;
            vf.constants["Gamma"] = std::pow(z0, -n + 1) / n;
            vf.pieces = {{0, z0, false, std::pow(z0, -n + 1) / n, 0},
                         {z0, ga, true},
                         {ga, z, false, Cl, Dl},
                         {z, zt, false, Cr, Dr},
                         {zt, kInf, true}};
            vf.region.components = {{z0, ga}, {zt, kInf}};
            return vf;
        }
    }
    throw CaseMismatch("solve: unclassified profile");
}

PiecewiseValueFunction solve(const SkewGbmParams& p) {
    return solve(p, RootConfig::defaults(p.K));
}

const StoppingRegion& stopping_rule(const PiecewiseValueFunction& vf) { return vf.region; }

SmoothFitGap smooth_fit_gap(const SkewGbmParams& p, const RootConfig& cfg) {
    const CaseProfile pr = classify(p);
    if (pr.cse != Case::I && pr.cse != Case::II)
        throw CaseMismatch("smooth_fit_gap requires Cases I or II");
    const double zb = *pr.zbeta;
    if (!(p.z >= zb && p.z <= pr.z0))
        throw DomainError("smooth_fit_gap: z must lie in [zbeta, z0]");

    const PiecewiseValueFunction vf = solve(p, cfg);
    const double vl = vf.d_left(p.z), vr = vf.d_right(p.z);

    const Excessive ex(pr);
    const double psl = ex.psi_dminus(p.z), psr = ex.psi_dplus(p.z);
    const ScaleFunction sc(p);
    const double pl = sc.density_minus(p.z), prt = sc.density(p.z);

    SmoothFitGap out;
    out.gap_psi = vr / psr - vl / psl;
    out.gap_p = vr / prt - vl / pl;
    const double ratio = pr.skew_ratio();
    out.gap_psi_closed = -(pr.n - ratio) * (p.z - zb) / (pr.n * std::pow(p.z, pr.n));
    out.gap_p_closed = -(pr.n - ratio) * (p.z - zb) / (p.z * pl);
    return out;
}

}  // namespace skewcall
