#include "sievetk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sievetk {

namespace {

// Kronrod-15 nodes on [0,1] (positive half), Gauss-7 weights where the node
// is shared, Kronrod weights for all.
struct NodeRow {
    double x, gauss_w, kronrod_w;
};
constexpr NodeRow kG7K15[8] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct CellEstimate {
    double value;
    double error;
};

CellEstimate g7k15(const std::function<double(double)>& f, double a, double b,
                   std::uint64_t& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g = kG7K15[0].gauss_w * f0;
    double k = kG7K15[0].kronrod_w * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kG7K15[i].x;
        const double fi = f(mid + dx) + f(mid - dx);
        g += kG7K15[i].gauss_w * fi;
        k += kG7K15[i].kronrod_w * fi;
    }
    evals += 15;
    g *= half;
    k *= half;
    // |g - k| is a conservative bound for the Kronrod error on smooth cells.
    const double err = std::abs(g - k) + std::abs(k) * 1e-16;
    return {k, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    QuadratureResult result;
    if (!(a < b)) return result;  // empty region
    struct Cell {
        double a, b;
        int depth;
    };
    std::vector<Cell> stack{{a, b, 0}};
    const double total_width = b - a;
    // First pass value for the relative-tolerance scale.
    std::uint64_t evals = 0;
    const CellEstimate whole = g7k15(f, a, b, evals);
    double scale = std::abs(whole.value);
    double value = 0.0, err = 0.0;
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        const CellEstimate e = g7k15(f, c.a, c.b, evals);
        const double budget =
            std::max(opts.abs_tol, opts.rel_tol * scale) * (c.b - c.a) / total_width;
        if (e.error <= budget || c.depth >= opts.max_depth) {
            value += e.value;
            err += e.error;
            if (c.depth >= opts.max_depth && e.error > budget) result.converged = false;
            continue;
        }
        const double mid = 0.5 * (c.a + c.b);
        // Deterministic order: right pushed first so the left half processes first.
        stack.push_back({mid, c.b, c.depth + 1});
        stack.push_back({c.a, mid, c.depth + 1});
        scale = std::max(scale, std::abs(value));
    }
    result.value = value;
    result.error_estimate = err;
    result.evaluations = evals;
    return result;
}

QuadratureResult integrate(const QuadratureRegion& region) {
    if (region.dimension == 1)
        return integrate(region.integrand_1d, region.lo, region.hi, region.opts);
    if (region.dimension != 2)
        throw std::invalid_argument("QuadratureRegion: dimension must be 1 or 2");
    if (!(region.lo < region.hi)) return {};

    QuadratureOptions inner_opts = region.opts;
    const double outer_width = region.hi - region.lo;
    inner_opts.abs_tol = std::max(region.opts.abs_tol / outer_width * 0.125, 1e-15);
    inner_opts.rel_tol = std::max(region.opts.rel_tol * 0.125, 1e-14);

    bool inner_ok = true;
    double worst_inner_err = 0.0;
    std::uint64_t inner_evals = 0;
    auto outer_f = [&](double x) {
        const double lo = region.inner_lo(x);
        const double hi = region.inner_hi(x);
        if (!(lo < hi)) return 0.0;
        const QuadratureResult r = integrate(
            [&](double y) { return region.integrand_2d(x, y); }, lo, hi, inner_opts);
        inner_ok = inner_ok && r.converged;
        worst_inner_err = std::max(worst_inner_err, r.error_estimate);
        inner_evals += r.evaluations;
        return r.value;
    };
    QuadratureResult out = integrate(outer_f, region.lo, region.hi, region.opts);
    out.converged = out.converged && inner_ok;
    out.error_estimate += worst_inner_err * outer_width;
    out.evaluations += inner_evals;
    return out;
}

}  // namespace sievetk
