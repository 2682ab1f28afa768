#pragma once

#include "skewcall/value_function.hpp"

#include <cstdint>
#include <vector>

namespace skewcall {

/// Projected-SOR obstacle solver on a uniform grid in y = ln x, with the
/// discrete skew interface row at y = ln z (forced onto a node).
struct FdConfig {
    int nodes = 4000;        ///< >= 500
    double y_lo = 0, y_hi = 0;
    double omega = 1.6;      ///< in (1,2)
    double lcp_tol = 1e-10;  ///< max-update stopping tolerance
    long max_sweeps = 200000;

    /// Spec grid: [ln(1e-3 K), ln(10 z0 | 2 * rightmost breakpoint | 2 z)].
    static FdConfig standard(const PiecewiseValueFunction& vf, int nodes = 4000);
    /// Near-optimal SOR relaxation for this node count.
    static double tuned_omega(int nodes);
};

struct FdResult {
    std::vector<double> y, x, v;
    std::vector<std::uint8_t> active;  ///< 1 where the obstacle binds
    int interface_index = -1;          ///< node carrying ln z
    long sweeps = 0;
    double final_update = 0;
};

FdResult fd_solve(const SkewGbmParams& p, const FdConfig& cfg);

/// FD-vs-analytic comparison metrics used by the oracle CLI and the
/// acceptance suite.
struct FdComparison {
    FdResult fd;
    std::vector<double> v_analytic;      ///< on the FD grid
    double err_rel_to_max = 0;           ///< ||v_fd - v||_inf / ||v||_inf on the grid
    double err_probe_rel = 0;            ///< max over probes of |v_fd - v| / v
    std::vector<double> probe_x, probe_err;
};

/// 64 log-spaced probes in [0.3 K, 0.9 x_max]; FD interpolated linearly in y.
FdComparison fd_compare(const PiecewiseValueFunction& vf, const FdConfig& cfg);

}  // namespace skewcall
