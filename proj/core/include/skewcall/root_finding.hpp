#pragma once

#include "skewcall/errors.hpp"

#include <functional>

namespace skewcall {

struct RootConfig {
    double rel_tol = 1e-13;
    double abs_tol = 1e-14;  ///< callers scale by K via defaults()
    int max_iter = 200;
    double expand = 2.0;  ///< bracket expansion factor

    static RootConfig defaults(double K) {
        RootConfig c;
        c.abs_tol = 1e-14 * K;
        return c;
    }
};

struct RootResult {
    double x;
    double fx;
    int iterations;
};

/// Bracketed root solve on [lo, hi] where f(lo) and f(hi) have opposite
/// signs (or one endpoint is an exact root). Bisection with a guarded
/// secant step; the sign-change bracket is maintained throughout.
RootResult bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                          const RootConfig& cfg);

/// Expands [lo, hi] upward by cfg.expand until f changes sign against
/// f(lo), honoring the cap. Returns the final hi.
double expand_bracket_up(const std::function<double(double)>& f, double lo, double hi,
                         const RootConfig& cfg, double cap);

}  // namespace skewcall
