#pragma once

#include <stdexcept>
#include <string>

namespace skewcall {

/// r <= b: the perpetual call value is +infinity (no finite solution exists).
struct AssumptionViolated : std::runtime_error {
    explicit AssumptionViolated(const std::string& what) : std::runtime_error(what) {}
};

/// beta == 0: outside the skew model; use the classical GBM reference pricer.
struct DegenerateBeta : std::runtime_error {
    explicit DegenerateBeta(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Operation invoked for a parameter case it is not defined in.
struct CaseMismatch : std::runtime_error {
    explicit CaseMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// No sign change found while expanding a root bracket.
struct BracketFailure : std::runtime_error {
    explicit BracketFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver hit its sweep cap; carries the final residual.
struct NonConvergence : std::runtime_error {
    double residual;
    NonConvergence(const std::string& what, double resid)
        : std::runtime_error(what), residual(resid) {}
};

/// Adaptive quadrature failed to meet tolerance; carries the offending interval.
struct QuadratureFailure : std::runtime_error {
    double lo, hi;
    QuadratureFailure(const std::string& what, double a, double b)
        : std::runtime_error(what), lo(a), hi(b) {}
};

}  // namespace skewcall
