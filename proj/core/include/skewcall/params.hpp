#pragma once

#include "skewcall/errors.hpp"

namespace skewcall {

/// Model parameters of the skew geometric Brownian motion call problem:
/// dX = b X dt + beta dL^z + sigma X dW, reward (x - K)^+, discount r.
struct SkewGbmParams {
    double r;      ///< discount rate, > 0
    double b;      ///< drift rate
    double sigma;  ///< volatility, != 0
    double K;      ///< strike, > 0
    double z;      ///< skew level, > 0
    double beta;   ///< skewness in (-1,1) \ {0}

    /// Domain validation. Does not check r > b; that is the classifier's job.
    void validate() const;

    /// Full validation including the r > b finiteness assumption.
    void validate_finite_value() const;
};

}  // namespace skewcall
