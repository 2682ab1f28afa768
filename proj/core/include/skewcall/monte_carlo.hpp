#pragma once

#include "skewcall/value_function.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace skewcall {

struct McConfig {
    long paths = 100000;
    double dt = 0;       ///< default 1e-4 / r
    double horizon = 0;  ///< default ln(1e4) / r, so e^{-rT} <= 1e-4
    std::uint64_t seed = 20240901;
    bool antithetic = true;
    int workers = 1;

    static McConfig defaults(const SkewGbmParams& p, long paths = 100000);
};

struct McResult {
    double mean = 0;
    double se = 0;
    long paths = 0;
    double dt = 0;
    double horizon = 0;
    std::uint64_t seed = 0;
};

/// Counter-derived per-path stream: stream(seed, k) is reproducible and
/// independent of evaluation order.
std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path_index);

/// One Euler path of X sampled at step boundaries. The skew level is
/// removed by the piecewise-linear transform Z = S(ln X - ln z) with
/// slopes (1+beta) below 0 and (1-beta) above.
std::vector<double> simulate_path(const SkewGbmParams& p, double x0, double dt, double horizon,
                                  std::mt19937_64& rng);

/// Discounted payoff of the first-entry rule into `region`, truncated at
/// the horizon (zero contribution afterwards). Entry on a step counts if
/// the state lands in a component or the step segment straddles one;
/// straddles pay at the first boundary touched.
McResult mc_estimate(const SkewGbmParams& p, const StoppingRegion& region, double x0,
                     const McConfig& cfg);

/// Skew excursion statistic: paths start at z; the estimate is the pooled
/// frequency of {X > z} over steps k in [k_lo, k_hi], with the standard
/// error clustered by path (samples within a path are correlated).
struct SignStatistic {
    double estimate = 0;
    double se = 0;  ///< clustered by path
    long samples = 0;
};

SignStatistic skew_sign_statistic(const SkewGbmParams& p, double dt, int k_lo, int k_hi,
                                  long paths, std::uint64_t seed);

/// Occupation fractions above/below z over [0, horizon], pooled over paths
/// started at z.
std::pair<double, double> occupation_fractions(const SkewGbmParams& p, double dt, double horizon,
                                               long paths, std::uint64_t seed);

}  // namespace skewcall
