#include "sievetk/constants.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sievetk/group_fourier.hpp"
#include "sievetk/math_util.hpp"

namespace sievetk {

double cal_F_sharp(double d1, double d2, double d3) {
    for (double d : {d1, d2, d3})
        if (!(d > 0.0 && d <= 1.0))
            throw std::invalid_argument("cal_F_sharp: arguments must lie in (0, 1]");
    const double cross = std::abs(std::sin(kPi * d2)) / (kPi * d1 * d2 * d3) *
                         std::sqrt((d1 - d1 * d1) * (d3 - d3 * d3));
    return 1.0 - cross;
}

double kappa_shorts(double rho, double alpha, double eps) {
    const double denom = rho - 1.0 + alpha;
    if (!(denom > 0.0))
        throw std::invalid_argument("kappa_shorts: rho - 1 + alpha must be positive");
    return 2.0 * rho / denom + eps;
}

ShortsConstant shorts_constant(double alpha, double eps, const QuadratureOptions& opts) {
    if (!(alpha > 0.5 + eps && alpha < 1.0))
        throw std::invalid_argument("shorts_constant: alpha must lie in (1/2 + eps, 1)");
    const double theta = alpha - eps;
    const double a2_lo = (theta - 0.5) / 3.0;
    if (!(a2_lo > 1.0 - alpha))
        throw std::invalid_argument(
            "shorts_constant: integration region touches the kappa singularity "
            "(alpha too small)");
    QuadratureRegion region;
    region.dimension = 2;
    region.lo = a2_lo;
    region.hi = 1.0 / 3.0;
    region.inner_lo = [theta](double a2) { return std::max(a2, theta - 3.0 * a2); };
    region.inner_hi = [](double a2) { return std::min(0.5, 1.0 - 2.0 * a2); };
    region.integrand_2d = [alpha, eps](double a2, double a1) {
        const double a3 = 1.0 - a1 - a2;
        const double d1 = 1.0 / kappa_shorts(a1, alpha, eps);
        const double d2 = 1.0 / kappa_shorts(a2, alpha, eps);
        const double d3 = 1.0 / kappa_shorts(a3, alpha, eps);
        return cal_F_sharp(d1, d2, d3) / (a1 * a2 * a3);
    };
    region.opts = opts;
    const QuadratureResult integral = integrate(region);

    ShortsConstant out;
    out.theta = theta;
    out.integral = integral.value;
    out.log_term = (2.0 / theta) * std::log(1.0 / (2.0 * theta - 1.0));
    out.value = out.integral - out.log_term;
    out.error_estimate = integral.error_estimate;
    out.converged = integral.converged;
    return out;
}

AlphaThreshold find_alpha_threshold(double target, double eps, double lo, double hi,
                                    double tol, int grid_points,
                                    const QuadratureOptions& opts) {
    AlphaThreshold out;
    auto fn = [&](double alpha) { return shorts_constant(alpha, eps, opts).value - target; };
    double prev = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double a = lo + (hi - lo) * static_cast<double>(i) / (grid_points - 1);
        const double v = fn(a) + target;
        out.grid.emplace_back(a, v);
        if (i > 0 && v < prev) out.monotone_on_grid = false;
        prev = v;
    }
    double flo = fn(lo), fhi = fn(hi);
    if (flo > 0.0) {
        // Degenerate: the whole bracket already exceeds the target.
        out.alpha_star = lo;
        out.value_at_root = flo + target;
        return out;
    }
    if (!(flo <= 0.0 && fhi >= 0.0)) {
        std::ostringstream msg;
        msg << "find_alpha_threshold: no sign change on bracket; grid:";
        for (auto& [a, v] : out.grid) msg << " (" << a << ", " << v << ")";
        throw std::runtime_error(msg.str());
    }
    double a = lo, b = hi;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (fn(mid) <= 0.0)
            a = mid;
        else
            b = mid;
    }
    out.alpha_star = 0.5 * (a + b);
    out.value_at_root = fn(out.alpha_star) + target;
    return out;
}

double theta_linnik(double rho, double B, double eps_prime) {
    return 1.0 - 1.0 / (rho * B) - eps_prime;
}

double kappa_linnik(double B, double eps_prime) {
    if (!(B > 6.0)) throw std::invalid_argument("kappa_linnik: B must exceed 6");
    return 2.0 + 2.0 * std::log((B - 3.0) / (B - 6.0)) / std::log(2.0) + eps_prime;
}

double linnik_inner_integral(double theta) {
    if (!(theta > 0.5 && theta <= 1.0))
        throw std::invalid_argument("linnik_inner_integral: theta must lie in (1/2, 1]");
    if (theta == 1.0) return 0.0;
    return (2.0 / theta) * std::log(1.0 / (2.0 * theta - 1.0));
}

LinnikConstant linnik_constant(double eta, double B, double eps_prime,
                               const QuadratureOptions& opts) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::invalid_argument("linnik_constant: eta must lie in (0, 1)");
    LinnikConstant out;
    out.kappa = kappa_linnik(B, eps_prime);
    out.kappa_in_window = out.kappa > 2.0 && out.kappa < 2.0 + 1.0 / 12.0;
    const double delta = 1.0 / out.kappa;
    const double eta_scaled = eta / out.kappa;
    if (!(eta_scaled < delta))
        throw std::invalid_argument("linnik_constant: eta/kappa must stay below 1/kappa");
    out.f_term = std::pow(std::log(2.0), 3) / 3.0 * cal_F(delta, eta_scaled);
    // Outer integral over rho with the inner beta-integral in closed form.
    const QuadratureResult integral = integrate(
        [&](double rho) {
            const double theta = theta_linnik(rho, B, eps_prime);
            if (!(theta > 0.5)) {
                // theta <= 1/2 would make the inner interval empty-to-invalid;
                // treat as a hard domain violation.
                throw std::domain_error("linnik_constant: theta_B(rho) <= 1/2 on the range");
            }
            return linnik_inner_integral(theta) / rho;
        },
        0.5, 1.0, opts);
    out.integral = integral.value;
    out.error_estimate = integral.error_estimate;
    out.converged = integral.converged;
    out.value = out.f_term - out.integral;
    return out;
}

double eta_minus(double L1, double L2) {
    if (!(L2 >= L1 && L1 >= 1.0))
        throw std::invalid_argument("eta_minus: need L2 >= L1 >= 1");
    if (L2 == L1) return 0.0;
    return 2.0 * (1.0 - L2 / (L1 + L2 - 1.0)) * std::log((L2 - 1.0) / L1) /
           std::log(L2 / L1);
}

bool eta_minus_window_ok(double L1, double L2, double eps) {
    return L1 + 1.0 + eps <= L2 && L2 <= 3.0 * L1 + 1.0;
}

double eta_plus(double L1, double L2, const SieveFunctionTable& f2_table,
                const SieveFunctionTable& F2_table) {
    if (!(L2 > L1 && L1 >= 1.0))
        throw std::invalid_argument("eta_plus: need L2 > L1 >= 1");
    if (f2_table.kind != SieveKind::f2 || F2_table.kind != SieveKind::F2)
        throw std::invalid_argument("eta_plus: tables must be the (f2, F2) pair");
    const double s_f = (2.0 * L2 - 3.0) / L1;
    const double s_F = (L2 - 3.0) / L1;
    return f2_table.eval(s_f) / F2_table.eval(s_F) / std::log(L2 / L1);
}

namespace {

double coset_ratio(double B1, double eps_prime) {
    return std::log(2.0 / 1.01) /
           (2.0 * std::log((B1 / 3.0 - 1.0) / (1.01 * B1 / 6.0 - 1.0)) + eps_prime);
}

}  // namespace

LinnikGates verify_linnik_case_analysis(const LinnikScanConfig& config,
                                        const SieveFunctionTable& f2_table,
                                        const SieveFunctionTable& F2_table) {
    if (!(config.L > 12.0))
        throw std::invalid_argument("verify_linnik_case_analysis: L must exceed 12");
    if (config.grid < 2)
        throw std::invalid_argument("verify_linnik_case_analysis: grid must be >= 2");
    LinnikGates g;
    g.kappa_in_window = true;
    g.c_positive = true;
    g.eta_minus_ok = true;
    g.c_min = std::numeric_limits<double>::infinity();
    g.eta_minus_min = std::numeric_limits<double>::infinity();
    g.ratio_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < config.grid; ++i) {
        const double B = config.L / 2.0 +
                         (config.L - config.L / 2.0) * static_cast<double>(i) /
                             (config.grid - 1);
        const LinnikConstant c = linnik_constant(config.eta, B, config.eps_prime, config.quad);
        if (c.value < g.c_min) {
            g.c_min = c.value;
            g.c_argmin = B;
        }
        g.kappa_in_window = g.kappa_in_window && c.kappa_in_window;
        g.c_positive = g.c_positive && c.value > 0.0;
        const double em = eta_minus(B / 6.0, B / 3.0);
        g.eta_minus_min = std::min(g.eta_minus_min, em);
        g.eta_minus_ok = g.eta_minus_ok && em >= 0.62;
        const double ratio = coset_ratio(B, config.eps_prime);
        g.ratio_min = std::min(g.ratio_min, ratio);
    }
    g.eta_plus_value = eta_plus(config.L / 12.0, config.L / 3.0, f2_table, F2_table);
    g.eta_plus_ok = g.eta_plus_value >= 0.25;
    g.ratio_ok = g.ratio_min >= 0.4876;
    g.chain = (1.0 - 2.0 * 0.13) * g.ratio_min;
    g.chain_ok = g.chain >= 0.36 && g.chain > 0.25;
    g.coset_constant_ok = 0.125 * std::log(2.0) / std::log(2.0 / 1.01) < 0.13;
    return g;
}

CheckReport linnik_case_report(const LinnikScanConfig& config, const SieveFunctionTable& f2_table,
                               const SieveFunctionTable& F2_table, std::uint64_t seed) {
    const LinnikGates g = verify_linnik_case_analysis(config, f2_table, F2_table);
    json inputs{{"L", config.L}, {"eta", config.eta}, {"eps_prime", config.eps_prime},
                {"grid", config.grid}};
    json values{{"c_min", g.c_min},
                {"c_argmin_B", g.c_argmin},
                {"kappa_in_window", g.kappa_in_window},
                {"eta_minus_min", g.eta_minus_min},
                {"eta_plus", g.eta_plus_value},
                {"ratio_min", g.ratio_min},
                {"chain", g.chain}};
    json bounds{{"c_min", 0.0},
                {"eta_minus_min", 0.62},
                {"eta_plus", 0.25},
                {"ratio_min", 0.4876},
                {"chain", 0.36}};
    json gates = json::array();
    gates.push_back({{"gate", "linnik-constant-positive"}, {"pass", g.c_positive && g.kappa_in_window}});
    gates.push_back({{"gate", "eta-minus"}, {"pass", g.eta_minus_ok}});
    gates.push_back({{"gate", "eta-plus"}, {"pass", g.eta_plus_ok}});
    gates.push_back({{"gate", "ratio-chain"}, {"pass", g.ratio_ok && g.chain_ok}});
    gates.push_back({{"gate", "coset-constant"}, {"pass", g.coset_constant_ok}});
    values["gates"] = gates;
    const double margin =
        std::min({g.c_min, g.eta_minus_min - 0.62, g.eta_plus_value - 0.25,
                  g.ratio_min - 0.4876, g.chain - 0.36});
    CheckReport r = CheckReport::asserted("constants.linnik-gates", "linnik-case-analysis",
                                          inputs, values, bounds, margin, seed);
    if (r.passed() != g.all()) r.status = g.all() ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

LThreshold find_L_threshold(double eta, double eps_prime, double lo, double hi, double tol,
                            int b_grid, const SieveFunctionTable& f2_table,
                            const SieveFunctionTable& F2_table, const QuadratureOptions& opts) {
    LThreshold out;
    auto pass_at = [&](double L) {
        LinnikScanConfig cfg;
        cfg.L = L;
        cfg.eta = eta;
        cfg.eps_prime = eps_prime;
        cfg.grid = b_grid;
        cfg.quad = opts;
        return verify_linnik_case_analysis(cfg, f2_table, F2_table);
    };
    // Coarse 0.1-resolution prescan.
    const double coarse = 0.1;
    double first_pass = -1.0, last_fail = -1.0;
    bool seen_pass = false;
    for (double L = lo; L <= hi + 1e-9; L += coarse) {
        const LinnikGates g = pass_at(L);
        out.grid.emplace_back(L, g.all());
        if (g.all()) {
            if (!seen_pass) first_pass = L;
            seen_pass = true;
        } else {
            last_fail = L;
            if (seen_pass)
                throw std::runtime_error(
                    "find_L_threshold: gate pass region is not up-closed on the grid");
        }
    }
    if (!seen_pass) throw std::runtime_error("find_L_threshold: no passing L on the bracket");
    if (last_fail < 0.0) {
        out.L_star = lo;  // everything passes; bracket too high
        out.binding_gate = "none";
        return out;
    }
    double a = last_fail, b = first_pass;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (pass_at(mid).all())
            b = mid;
        else
            a = mid;
    }
    out.L_star = b;
    const LinnikGates below = pass_at(a);
    if (!below.c_positive || !below.kappa_in_window)
        out.binding_gate = "linnik-constant-positive";
    else if (!below.eta_minus_ok)
        out.binding_gate = "eta-minus";
    else if (!below.eta_plus_ok)
        out.binding_gate = "eta-plus";
    else if (!below.ratio_ok || !below.chain_ok)
        out.binding_gate = "ratio-chain";
    else
        out.binding_gate = "coset-constant";
    return out;
}

}  // namespace sievetk
