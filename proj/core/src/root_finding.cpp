#include "skewcall/root_finding.hpp"

#include <cmath>

namespace skewcall {

RootResult bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                          const RootConfig& cfg) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return {lo, 0.0, 0};
    if (fhi == 0) return {hi, 0.0, 0};
    if ((flo > 0) == (fhi > 0))
        throw BracketFailure("no sign change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    int it = 0;
    double x = lo, fx = flo;
    while (it++ < cfg.max_iter) {
        const double width = hi - lo;
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::max(std::abs(lo), std::abs(hi)));
        if (width <= tol) break;
        // secant proposal, fall back to bisection when it leaves the bracket
        double cand = lo - flo * (hi - lo) / (fhi - flo);
        const double guard = 0.01 * width;
        if (!(cand > lo + guard && cand < hi - guard)) cand = 0.5 * (lo + hi);
        x = cand;
        fx = f(x);
        if (fx == 0) return {x, 0.0, it};
        if ((fx > 0) == (fhi > 0)) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    // report the endpoint with the smaller residual
    if (std::abs(flo) <= std::abs(fhi)) return {lo, flo, it};
    return {hi, fhi, it};
}

double expand_bracket_up(const std::function<double(double)>& f, double lo, double hi,
                         const RootConfig& cfg, double cap) {
    const double flo = f(lo);
    double fhi = f(hi);
    while ((fhi > 0) == (flo > 0) && fhi != 0) {
        if (hi >= cap)
            throw BracketFailure("bracket expansion exceeded cap " + std::to_string(cap));
        hi = std::min(hi * cfg.expand, cap);
        fhi = f(hi);
    }
    return hi;
}

}  // namespace skewcall
