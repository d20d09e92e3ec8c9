#pragma once

#include <string>
#include <vector>

#include "sievetk/quadrature.hpp"
#include "sievetk/report.hpp"
#include "sievetk/sieve_functions.hpp"

namespace sievetk {

// calFsharp(d1,d2,d3) = 1 - |sin(pi d2)| / (pi d1 d2 d3) * sqrt((d1-d1^2)(d3-d3^2)).
double cal_F_sharp(double d1, double d2, double d3);

// kappa(rho) = 2 rho / (rho - 1 + alpha) + eps.
double kappa_shorts(double rho, double alpha, double eps);

struct ShortsConstant {
    double value = 0.0;       // c(alpha)
    double integral = 0.0;    // the double integral of calFsharp/(a1 a2 a3)
    double log_term = 0.0;    // (2/theta) log(1/(2 theta - 1))
    double theta = 0.0;       // alpha - eps
    double error_estimate = 0.0;
    bool converged = true;
};
// c(alpha) with theta = alpha - eps; the outer variable runs over
// alpha2 in [(theta-1/2)/3, 1/3], the inner over
// alpha1 in [max{alpha2, theta-3 alpha2}, min{1/2, 1-2 alpha2}].
ShortsConstant shorts_constant(double alpha, double eps, const QuadratureOptions& opts = {});

struct AlphaThreshold {
    double alpha_star = 0.0;
    double value_at_root = 0.0;
    bool monotone_on_grid = true;
    std::vector<std::pair<double, double>> grid;  // (alpha, c(alpha))
};
// Bisection of c(alpha) - target on [lo, hi] to tolerance tol, plus a
// monotonicity survey of c on a grid over the bracket.  Throws if there is
// no sign change (the grid is attached to the exception message).
AlphaThreshold find_alpha_threshold(double target, double eps, double lo, double hi,
                                    double tol, int grid_points = 16,
                                    const QuadratureOptions& opts = {});

// theta_B(rho) = 1 - 1/(rho B) - eps'.
double theta_linnik(double rho, double B, double eps_prime);
// kappa_B = 2 + 2 log((B-3)/(B-6)) / log 2 + eps' (the O(eps') realized as
// +eps', the direction that weakens the lower bound).
double kappa_linnik(double B, double eps_prime);
// Inner integral in closed form: int_{theta/2}^{1/2} 2/((theta-b) b) db
// = (2/theta) log(1/(2 theta - 1)).
double linnik_inner_integral(double theta);

struct LinnikConstant {
    double value = 0.0;     // C(eta, kappa_B, theta_B)
    double f_term = 0.0;    // (log^3 2 / 3) calF(1/kappa, eta/kappa)
    double integral = 0.0;  // double integral subtracted from f_term
    double kappa = 0.0;
    double error_estimate = 0.0;
    bool kappa_in_window = true;  // kappa in (2, 2 + 1/12)
    bool converged = true;
};
LinnikConstant linnik_constant(double eta, double B, double eps_prime,
                               const QuadratureOptions& opts = {});

// eta^-(L1, L2) = 2 (1 - L2/(L1+L2-1)) log((L2-1)/L1) / log(L2/L1).
double eta_minus(double L1, double L2);
// The proposition window L1 + 1 + eps <= L2 <= 3 L1 + 1, reported not enforced.
bool eta_minus_window_ok(double L1, double L2, double eps = 0.0);
// eta^+(L1, L2) = f2((2 L2 - 3)/L1) / F2((L2 - 3)/L1) / log(L2/L1).
double eta_plus(double L1, double L2, const SieveFunctionTable& f2_table,
                const SieveFunctionTable& F2_table);

struct LinnikScanConfig {
    double L = 0.0;
    double eta = 0.249;
    double eps_prime = 1e-3;
    int grid = 64;
    QuadratureOptions quad;
};

// The four numeric gates of the case analysis at exponent L:
//  (i)   C(eta, kappa_B, theta_B) > 0 for every B in [L/2, L] (with kappa_B
//        inside the (2, 2+1/12) hypothesis window),
//  (ii)  eta^-(B/6, B/3) >= 0.62 for every B in [L/2, L],
//  (iii) eta^+(L/12, L/3) >= 0.25,
//  (iv)  min over B1 in [L/2, L] of
//        log(2/1.01) / (2 log((B1/3-1)/(1.01 B1/6-1)) + eps') >= 0.4876,
//        and (1 - 2*0.13) * (that minimum) >= 0.36 (> 1/4, the contradiction).
struct LinnikGates {
    bool c_positive = false;
    double c_min = 0.0;
    double c_argmin = 0.0;
    bool kappa_in_window = false;
    bool eta_minus_ok = false;
    double eta_minus_min = 0.0;
    bool eta_plus_ok = false;
    double eta_plus_value = 0.0;
    bool ratio_ok = false;
    double ratio_min = 0.0;
    double chain = 0.0;
    bool chain_ok = false;
    bool coset_constant_ok = false;  // 0.125 log 2 / log(2/1.01) < 0.13
    bool all() const {
        return c_positive && kappa_in_window && eta_minus_ok && eta_plus_ok && ratio_ok &&
               chain_ok && coset_constant_ok;
    }
};

LinnikGates verify_linnik_case_analysis(const LinnikScanConfig& config,
                                        const SieveFunctionTable& f2_table,
                                        const SieveFunctionTable& F2_table);
CheckReport linnik_case_report(const LinnikScanConfig& config, const SieveFunctionTable& f2_table,
                               const SieveFunctionTable& F2_table, std::uint64_t seed = 0);

struct LThreshold {
    double L_star = 0.0;
    std::string binding_gate;  // the gate that fails just below L_star
    std::vector<std::pair<double, bool>> grid;  // (L, all gates pass)
};
// Smallest L (0.1-resolution prescan, then bisection to tol) whose gate
// suite passes entirely; requires the pass region to be up-closed on the
// scanned grid.
LThreshold find_L_threshold(double eta, double eps_prime, double lo, double hi, double tol,
                            int b_grid, const SieveFunctionTable& f2_table,
                            const SieveFunctionTable& F2_table,
                            const QuadratureOptions& opts = {});

}  // namespace sievetk
