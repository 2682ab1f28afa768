#include "skewcall/fd_solver.hpp"

#include <cmath>

namespace skewcall {

FdConfig FdConfig::standard(const PiecewiseValueFunction& vf, int nodes) {
    FdConfig cfg;
    cfg.nodes = nodes;
    const double K = vf.params.K;
    cfg.y_lo = std::log(1e-3 * K);
    cfg.y_hi = std::log(std::max({10 * vf.profile.z0, 2 * vf.rightmost_breakpoint(),
                                  2 * vf.params.z}));
    cfg.omega = tuned_omega(nodes);
    return cfg;
}

double FdConfig::tuned_omega(int nodes) {
    return 2.0 / (1.0 + std::sin(3.14159265358979323846 / nodes));
}

FdResult fd_solve(const SkewGbmParams& p, const FdConfig& cfg) {
    p.validate_finite_value();
    if (cfg.nodes < 500) throw DomainError("fd_solve: node count must be >= 500");
    if (!(cfg.omega > 1 && cfg.omega < 2)) throw DomainError("fd_solve: omega must be in (1,2)");
    const double lz = std::log(p.z);
    if (!(cfg.y_lo < lz && lz < cfg.y_hi))
        throw DomainError("fd_solve: ln z must lie inside (y_lo, y_hi)");

    const int N = cfg.nodes;
    // force ln z onto a node by adjusting the spacing
    const double h0 = (cfg.y_hi - cfg.y_lo) / N;
    int j = static_cast<int>(std::lround((lz - cfg.y_lo) / h0));
    j = std::max(1, std::min(N - 1, j));
    const double h = (lz - cfg.y_lo) / j;

    FdResult res;
    res.interface_index = j;
    res.y.resize(N + 1);
    res.x.resize(N + 1);
    res.v.resize(N + 1);
    std::vector<double> payoff(N + 1);
    for (int i = 0; i <= N; ++i) {
        res.y[i] = cfg.y_lo + h * i;
        res.x[i] = std::exp(res.y[i]);
        payoff[i] = std::max(res.x[i] - p.K, 0.0);
        res.v[i] = payoff[i];
    }
    res.v[0] = 0.0;
    res.v[N] = res.x[N] - p.K;

    const double mu = p.b - 0.5 * p.sigma * p.sigma;
    const double s2 = p.sigma * p.sigma;
    const double lo_c = 0.5 * s2 / (h * h) - mu / (2 * h);
    const double up_c = 0.5 * s2 / (h * h) + mu / (2 * h);
    const double dg_c = -(s2 / (h * h) + p.r);
    // interface row: (1+beta)(v[j+1]-v[j]) - (1-beta)(v[j]-v[j-1])
    const double lo_j = 1 - p.beta, up_j = 1 + p.beta, dg_j = -2.0;

    double* v = res.v.data();
    const double* ob = payoff.data();
    double update = 0;
    long sweep = 0;
    for (; sweep < cfg.max_sweeps; ++sweep) {
        update = 0;
        for (int i = 1; i < N; ++i) {
            const double lo = (i == j) ? lo_j : lo_c;
            const double up = (i == j) ? up_j : up_c;
            const double dg = (i == j) ? dg_j : dg_c;
            const double gs = -(lo * v[i - 1] + up * v[i + 1]) / dg;
            double vn = v[i] + cfg.omega * (gs - v[i]);
            if (vn < ob[i]) vn = ob[i];
            const double d = std::abs(vn - v[i]);
            if (d > update) update = d;
            v[i] = vn;
        }
        if (update <= cfg.lcp_tol) break;
    }
    res.sweeps = sweep + 1;
    res.final_update = update;
    if (update > cfg.lcp_tol)
        throw NonConvergence("fd_solve: PSOR hit the sweep cap", update);

    res.active.resize(N + 1);
    for (int i = 0; i <= N; ++i)
        res.active[i] = (res.v[i] - payoff[i] <= 16 * cfg.lcp_tol) ? 1 : 0;
    return res;
}

FdComparison fd_compare(const PiecewiseValueFunction& vf, const FdConfig& cfg) {
    FdComparison cmp;
    cmp.fd = fd_solve(vf.params, cfg);
    const auto& fd = cmp.fd;
    cmp.v_analytic.resize(fd.x.size());
    double vmax = 0, dmax = 0;
    for (size_t i = 0; i < fd.x.size(); ++i) {
        cmp.v_analytic[i] = vf.evaluate(fd.x[i]);
        vmax = std::max(vmax, cmp.v_analytic[i]);
        dmax = std::max(dmax, std::abs(fd.v[i] - cmp.v_analytic[i]));
    }
    cmp.err_rel_to_max = dmax / vmax;

    const double K = vf.params.K;
    const double p_lo = std::log(0.3 * K), p_hi = std::log(0.9 * fd.x.back());
    const int P = 64;
    const double h = fd.y[1] - fd.y[0];
    for (int k = 0; k < P; ++k) {
        const double yq = p_lo + (p_hi - p_lo) * k / (P - 1.0);
        const double t = (yq - fd.y.front()) / h;
        const size_t i0 = std::min(fd.y.size() - 2, static_cast<size_t>(std::max(0.0, std::floor(t))));
        const double w = t - i0;
        const double vq = fd.v[i0] * (1 - w) + fd.v[i0 + 1] * w;
        const double va = vf.evaluate(std::exp(yq));
        cmp.probe_x.push_back(std::exp(yq));
        cmp.probe_err.push_back(std::abs(vq - va) / va);
        cmp.err_probe_rel = std::max(cmp.err_probe_rel, cmp.probe_err.back());
    }
    return cmp;
}

}  // namespace skewcall
