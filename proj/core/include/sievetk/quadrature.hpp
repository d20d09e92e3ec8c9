#pragma once

#include <cstdint>
#include <functional>

namespace sievetk {

struct QuadratureOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    int max_depth = 40;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;  // false on depth exhaustion; value/estimate still carry the partial result
    std::uint64_t evaluations = 0;
};

// Adaptive bisection with an embedded Gauss(7)/Kronrod(15) error estimate.
// Deterministic for fixed inputs; empty intervals (a >= b) integrate to 0.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Region with dimension 1 or 2.  For dimension 2 the inner bounds may depend
// on the outer variable and the integrand is f(outer, inner); rows where
// inner_lo >= inner_hi contribute 0.
struct QuadratureRegion {
    int dimension = 1;
    double lo = 0.0;
    double hi = 0.0;
    std::function<double(double)> integrand_1d;
    std::function<double(double)> inner_lo;
    std::function<double(double)> inner_hi;
    std::function<double(double, double)> integrand_2d;
    QuadratureOptions opts;
};

QuadratureResult integrate(const QuadratureRegion& region);

}  // namespace sievetk
