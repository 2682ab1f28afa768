#include "skewcall/vi_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skewcall {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double char_poly(const SkewGbmParams& p, double k) {
    return 0.5 * p.sigma * p.sigma * k * (k - 1) + p.b * k - p.r;
}
}  // namespace

const char* to_string(DispatchBoundary b) {
    switch (b) {
        case DispatchBoundary::ZBeta: return "zbeta";
        case DispatchBoundary::Z0: return "z0";
        case DispatchBoundary::ZMinus: return "z_minus";
        case DispatchBoundary::ZC: return "zc";
        case DispatchBoundary::ZPlus: return "z_plus";
    }
    return "?";
}

std::vector<double> standard_grid(const PiecewiseValueFunction& vf, const VerifyConfig& cfg) {
    const double K = vf.params.K;
    const double lo = cfg.span_lo_frac * K;
    const double hi =
        cfg.span_hi_mult * std::max({vf.rightmost_breakpoint(), vf.profile.z0, vf.params.z});
    std::vector<double> xs;
    xs.reserve(cfg.nodes + 8);
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < cfg.nodes; ++i)
        xs.push_back(lo * std::exp(ratio * i / (cfg.nodes - 1.0)));
    for (const auto& pc : vf.pieces)
        if (pc.hi != kInf) xs.push_back(pc.hi);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

VerificationReport verify(const PiecewiseValueFunction& vf, const VerifyConfig& cfg) {
    const SkewGbmParams& p = vf.params;
    const CaseProfile& pr = vf.profile;
    const double qn = char_poly(p, pr.n), qm = char_poly(p, pr.m);
    VerificationReport rep;
    rep.z_is_stopping = vf.region.contains(p.z);

    const auto xs = standard_grid(vf, cfg);

    // obstacle on the full grid
    for (double x : xs) {
        const double w = vf.evaluate(x);
        const double ob = std::max(x - p.K, 0.0);
        rep.obstacle_violation = std::max(rep.obstacle_violation, ob - w);
    }

    // generator, analytically per piece at grid nodes strictly inside the piece
    for (const auto& pc : vf.pieces) {
        for (double x : xs) {
            if (!(x > pc.lo && x < pc.hi)) continue;
            if (x == p.z) continue;
            const double w = vf.evaluate(x);
            const double denom = p.r * std::max(w, 1e-300);
            if (pc.affine) {
                const double gen = p.b * x - p.r * (x - p.K);
                rep.gen_pos_stopping = std::max(rep.gen_pos_stopping, gen / denom);
            } else {
                const double gen = pc.cn * std::exp(pr.n * std::log(x)) * qn +
                                   pc.cm * std::exp(pr.m * std::log(x)) * qm;
                rep.gen_resid_continuation =
                    std::max(rep.gen_resid_continuation, std::abs(gen) / denom);
            }
        }
    }

    // skew condition at z
    {
        const double dl = vf.d_left(p.z), dr = vf.d_right(p.z);
        const double lhs = (1 + p.beta) * dr - (1 - p.beta) * dl;
        const double scale = std::abs((1 + p.beta) * dr) + std::abs((1 - p.beta) * dl);
        rep.skew_resid = lhs / std::max(scale, 1e-300);
    }

    // continuity across piece breakpoints
    for (size_t i = 0; i + 1 < vf.pieces.size(); ++i) {
        const double bp = vf.pieces[i].hi;
        const double wl = vf.evaluate(bp);
        const Piece& nxt = vf.pieces[i + 1];
        const double wr = nxt.affine ? bp - p.K
                                     : power_pair_value(nxt.cn, nxt.cm, pr.n, pr.m, bp);
        const double defect = std::abs(wl - wr) / std::max({std::abs(wl), std::abs(wr), 1e-300});
        rep.continuity_defect = std::max(rep.continuity_defect, defect);
    }

    // smooth fit at stopping-region endpoints other than z
    for (const auto& comp : vf.region.components) {
        for (double bdry : {comp.lo, comp.hi}) {
            if (bdry == kInf || bdry == p.z) continue;
            const double dl = vf.d_left(bdry), dr = vf.d_right(bdry);
            rep.smooth_fit_defect =
                std::max({rep.smooth_fit_defect, std::abs(dl - 1.0), std::abs(dr - 1.0)});
        }
    }

    // growth ratios at the grid extremes
    {
        const Excessive ex(pr);
        const double xlo = xs.front(), xhi = xs.back();
        rep.growth_ratio_lo = vf.evaluate(xlo) / ex.phi(xlo);
        rep.growth_ratio_lo_inner = vf.evaluate(10 * xlo) / ex.phi(10 * xlo);
        rep.growth_ratio_hi = vf.evaluate(xhi) / ex.psi(xhi);
        rep.growth_ratio_hi_inner = vf.evaluate(xhi / 10) / ex.psi(xhi / 10);
    }

    rep.pass_obstacle = rep.obstacle_violation <= cfg.tol_obs_frac * p.K;
    rep.pass_generator =
        rep.gen_resid_continuation <= cfg.tol_gen && rep.gen_pos_stopping <= cfg.tol_gen;
    rep.pass_skew = rep.z_is_stopping ? rep.skew_resid <= cfg.tol_skew
                                      : std::abs(rep.skew_resid) <= cfg.tol_skew;
    rep.pass_continuity = rep.continuity_defect <= cfg.tol_cont;
    rep.pass_smooth_fit = rep.smooth_fit_defect <= cfg.tol_fit;
    rep.pass_growth = rep.growth_ratio_lo < rep.growth_ratio_lo_inner &&
                      rep.growth_ratio_hi < rep.growth_ratio_hi_inner;
    rep.pass = rep.pass_obstacle && rep.pass_generator && rep.pass_skew && rep.pass_continuity &&
               rep.pass_smooth_fit && rep.pass_growth;
    return rep;
}

double regime_continuity_check(const SkewGbmParams& p, DispatchBoundary boundary, double offset,
                               const VerifyConfig& cfg) {
    const CaseProfile pr = classify(p);
    double bval = 0;
    switch (boundary) {
        case DispatchBoundary::ZBeta:
            if (pr.cse != Case::I && pr.cse != Case::II)
                throw CaseMismatch("zbeta boundary applies to Cases I/II");
            bval = *pr.zbeta;
            break;
        case DispatchBoundary::Z0:
            if (pr.cse == Case::IV) throw CaseMismatch("z0 boundary applies to Cases I-III");
            bval = pr.z0;
            break;
        case DispatchBoundary::ZMinus:
            if (pr.cse != Case::III) throw CaseMismatch("z_minus boundary applies to Case III");
            bval = z_minus(pr, RootConfig::defaults(p.K));
            break;
        case DispatchBoundary::ZC:
            if (pr.cse != Case::III) throw CaseMismatch("zc boundary applies to Case III");
            bval = pr.zc;
            break;
        case DispatchBoundary::ZPlus:
            if (pr.cse != Case::IV) throw CaseMismatch("z_plus boundary applies to Case IV");
            bval = z_plus(pr, RootConfig::defaults(p.K));
            break;
    }
    SkewGbmParams lo_p = p, hi_p = p;
    lo_p.z = bval * (1 - offset);
    hi_p.z = bval * (1 + offset);
    const auto vlo = solve(lo_p);
    const auto vhi = solve(hi_p);
    const auto xs = standard_grid(vlo, cfg);
    double sup = 0;
    for (double x : xs) sup = std::max(sup, std::abs(vlo.evaluate(x) - vhi.evaluate(x)));
    return sup;
}

}  // namespace skewcall
