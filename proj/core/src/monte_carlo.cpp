#include "skewcall/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <thread>

namespace skewcall {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Marsaglia polar normals on top of the path stream; cheap and
// deterministic for a fixed seed.
class NormalSampler {
  public:
    explicit NormalSampler(std::mt19937_64& rng) : rng_(rng) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_ = true;
        return u * f;
    }

  private:
    double uniform() {
        return (rng_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64& rng_;
    double cached_ = 0;
    bool have_ = false;
};

struct Transform {
    double beta, ell;
    double to_Z(double y) const {
        const double d = y - ell;
        return d < 0 ? (1 + beta) * d : (1 - beta) * d;
    }
    double to_y(double Z) const {
        return ell + (Z < 0 ? Z / (1 + beta) : Z / (1 - beta));
    }
};

// Stopping-region component in Z coordinates, with the payoff x-values of
// its endpoints cached.
struct ZComponent {
    double lo, hi;  // hi may be +inf
    double x_lo, x_hi;
    bool point;
};

std::vector<ZComponent> region_in_Z(const StoppingRegion& region, const Transform& tr) {
    std::vector<ZComponent> out;
    for (const auto& c : region.components) {
        ZComponent zc;
        zc.lo = tr.to_Z(std::log(c.lo));
        zc.hi = c.hi == kInf ? kInf : tr.to_Z(std::log(c.hi));
        zc.x_lo = c.lo;
        zc.x_hi = c.hi;
        zc.point = c.lo == c.hi;
        out.push_back(zc);
    }
    return out;
}

// First-entry detection for one step. A step that lands in (or jumps
// over) a component touched its near boundary; a same-side step may still
// have touched it in between, which the Brownian bridge of the frozen-
// coefficient step samples exactly: P(touch) = exp(-2 d0 d1 / var_step).
// Returns the payoff x-point, or NaN when the region was not entered.
template <typename Uniform>
double entry_point(const std::vector<ZComponent>& comps, double z_prev, double z_new,
                   double var_step, Uniform&& uniform) {
    const bool up = z_new >= z_prev;
    const size_t nc = comps.size();
    auto bridge = [&](double d0, double d1) {
        const double q = 2.0 * d0 * d1 / var_step;
        if (q > 40.0) return false;
        return uniform() < std::exp(-q);
    };
    for (size_t ii = 0; ii < nc; ++ii) {
        const ZComponent& c = comps[up ? ii : nc - 1 - ii];
        if (c.point) {
            const double d0 = z_prev - c.lo, d1 = z_new - c.lo;
            if (d0 * d1 <= 0.0 || bridge(d0, d1)) return c.x_lo;
            continue;
        }
        if (z_new >= c.lo && (c.hi == kInf || z_new <= c.hi))
            return z_prev < c.lo ? c.x_lo : c.x_hi;
        if (z_prev < c.lo && c.hi != kInf && z_new > c.hi) return c.x_lo;
        if (c.hi != kInf && z_prev > c.hi && z_new < c.lo) return c.x_hi;
        if (z_prev < c.lo && z_new < c.lo) {
            if (bridge(c.lo - z_prev, c.lo - z_new)) return c.x_lo;
        } else if (c.hi != kInf && z_prev > c.hi && z_new > c.hi) {
            if (bridge(z_prev - c.hi, z_new - c.hi)) return c.x_hi;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

McConfig McConfig::defaults(const SkewGbmParams& p, long paths) {
    McConfig cfg;
    cfg.paths = paths;
    cfg.dt = 1e-4 / p.r;
    cfg.horizon = std::log(1e4) / p.r;
    return cfg;
}

std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(path_index)));
}

std::vector<double> simulate_path(const SkewGbmParams& p, double x0, double dt, double horizon,
                                  std::mt19937_64& rng) {
    p.validate();
    if (!(x0 > 0)) throw DomainError("simulate_path: x0 must be positive");
    if (!(dt > 0) || !(horizon > 0)) throw DomainError("simulate_path: dt and horizon must be positive");
    const Transform tr{p.beta, std::log(p.z)};
    const double mu = p.b - 0.5 * p.sigma * p.sigma;
    const double sdt = p.sigma * std::sqrt(dt);
    const double cneg = 1 + p.beta, cpos = 1 - p.beta;
    const long n = static_cast<long>(std::ceil(horizon / dt));
    NormalSampler normal(rng);
    std::vector<double> xs;
    xs.reserve(n + 1);
    double Z = tr.to_Z(std::log(x0));
    xs.push_back(x0);
    for (long k = 0; k < n; ++k) {
        const double c = Z > 0 ? cpos : cneg;
        Z += c * (mu * dt + sdt * normal());
        xs.push_back(std::exp(tr.to_y(Z)));
    }
    return xs;
}

McResult mc_estimate(const SkewGbmParams& p, const StoppingRegion& region, double x0,
                     const McConfig& cfg) {
    p.validate_finite_value();
    if (!(x0 > 0)) throw DomainError("mc_estimate: x0 must be positive");
    McResult res;
    res.dt = cfg.dt > 0 ? cfg.dt : 1e-4 / p.r;
    res.horizon = cfg.horizon > 0 ? cfg.horizon : std::log(1e4) / p.r;
    res.seed = cfg.seed;

    // x0 already in the region: tau = 0
    if (region.contains(x0)) {
        res.mean = x0 - p.K;
        res.se = 0;
        res.paths = cfg.paths;
        return res;
    }

    const Transform tr{p.beta, std::log(p.z)};
    const auto comps = region_in_Z(region, tr);
    const double mu = p.b - 0.5 * p.sigma * p.sigma;
    const double dt = res.dt;
    const double sdt = p.sigma * std::sqrt(dt);
    const double cneg = 1 + p.beta, cpos = 1 - p.beta;
    const long nsteps = static_cast<long>(std::ceil(res.horizon / dt));
    const double z0coord = tr.to_Z(std::log(x0));
    const double mdt = mu * dt;

    const long groups = cfg.antithetic ? (cfg.paths + 1) / 2 : cfg.paths;

    struct Acc {
        long n = 0;
        double mean = 0, m2 = 0;
        void add(double v) {
            ++n;
            const double d = v - mean;
            mean += d / n;
            m2 += d * (v - mean);
        }
        void merge(const Acc& o) {
            if (o.n == 0) return;
            const double d = o.mean - mean;
            const long t = n + o.n;
            mean += d * o.n / t;
            m2 += o.m2 + d * d * static_cast<double>(n) * o.n / t;
            n = t;
        }
    };

    const double var_neg = cneg * cneg * sdt * sdt;
    const double var_pos = cpos * cpos * sdt * sdt;

    auto run_group = [&](std::uint64_t gi, Acc& acc) {
        const int reps = cfg.antithetic ? 2 : 1;
        double pair_sum = 0;
        for (int repl = 0; repl < reps; ++repl) {
            // the antithetic partner replays the same stream with negated
            // normal draws (paths can differ in length, so no caching)
            std::mt19937_64 rng = path_stream(cfg.seed, gi);
            NormalSampler normal(rng);
            auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
            const double sign = repl == 0 ? 1.0 : -1.0;
            double Z = z0coord;
            double pay = 0.0;
            for (long k = 1; k <= nsteps; ++k) {
                const double xi = sign * normal();
                const bool below = Z <= 0;
                const double c = below ? cneg : cpos;
                const double znext = Z + c * (mdt + sdt * xi);
                const double hit_x =
                    entry_point(comps, Z, znext, below ? var_neg : var_pos, uniform);
                if (!std::isnan(hit_x)) {
                    pay = std::exp(-p.r * k * dt) * std::max(hit_x - p.K, 0.0);
                    break;
                }
                Z = znext;
            }
            pair_sum += pay;
        }
        acc.add(pair_sum / reps);
    };

    const int workers = std::max(1, cfg.workers);
    std::vector<Acc> accs(workers);
    if (workers == 1) {
        for (long gi = 0; gi < groups; ++gi) run_group(gi, accs[0]);
    } else {
        std::vector<std::thread> ts;
        const long per = (groups + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            ts.emplace_back([&, w] {
                const long lo = w * per, hi = std::min<long>(groups, (w + 1) * per);
                for (long gi = lo; gi < hi; ++gi) run_group(gi, accs[w]);
            });
        }
        for (auto& t : ts) t.join();
    }
    Acc total;
    for (const auto& a : accs) total.merge(a);

    res.mean = total.mean;
    res.se = total.n > 1 ? std::sqrt(total.m2 / (total.n - 1) / total.n) : 0.0;
    res.paths = groups * (cfg.antithetic ? 2 : 1);
    return res;
}

SignStatistic skew_sign_statistic(const SkewGbmParams& p, double dt, int k_lo, int k_hi,
                                  long paths, std::uint64_t seed) {
    p.validate();
    if (!(0 < k_lo && k_lo <= k_hi)) throw DomainError("skew_sign_statistic: need 0 < k_lo <= k_hi");
    const double mu = p.b - 0.5 * p.sigma * p.sigma;
    const double sdt = p.sigma * std::sqrt(dt);
    const double cneg = 1 + p.beta, cpos = 1 - p.beta;
    const double mdt = mu * dt;

    double sum = 0, sumsq = 0;
    for (long pi = 0; pi < paths; ++pi) {
        std::mt19937_64 rng = path_stream(seed, pi);
        NormalSampler normal(rng);
        double Z = 0.0;  // start at the level z
        long above = 0;
        for (int k = 1; k <= k_hi; ++k) {
            const double c = Z > 0 ? cpos : cneg;
            Z += c * (mdt + sdt * normal());
            if (k >= k_lo && Z > 0) ++above;
        }
        const double frac = static_cast<double>(above) / (k_hi - k_lo + 1);
        sum += frac;
        sumsq += frac * frac;
    }
    SignStatistic s;
    s.samples = paths * static_cast<long>(k_hi - k_lo + 1);
    s.estimate = sum / paths;
    const double var = (sumsq - sum * sum / paths) / (paths - 1);
    s.se = std::sqrt(var / paths);
    return s;
}

std::pair<double, double> occupation_fractions(const SkewGbmParams& p, double dt, double horizon,
                                               long paths, std::uint64_t seed) {
    p.validate();
    const double mu = p.b - 0.5 * p.sigma * p.sigma;
    const double sdt = p.sigma * std::sqrt(dt);
    const double cneg = 1 + p.beta, cpos = 1 - p.beta;
    const long nsteps = static_cast<long>(std::ceil(horizon / dt));
    long above = 0, total = 0;
    for (long pi = 0; pi < paths; ++pi) {
        std::mt19937_64 rng = path_stream(seed, pi);
        NormalSampler normal(rng);
        double Z = 0.0;
        for (long k = 0; k < nsteps; ++k) {
            const double c = Z > 0 ? cpos : cneg;
            Z += c * (mu * dt + sdt * normal());
            if (Z > 0) ++above;
            ++total;
        }
    }
    const double fa = static_cast<double>(above) / total;
    return {fa, 1 - fa};
}

}  // namespace skewcall
