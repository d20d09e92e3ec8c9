#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "sievetk/math_util.hpp"
#include "sievetk/report.hpp"

namespace sievetk {

// Declared block structure of a density h: Z -> [0,1], matching the
// convolution hypothesis that every length-(nu^3 M) block average is
// delta + O(nu^2); nu = Q0^{-1/2} and h lives on [-beta*M, beta*M].
struct BlockProfile {
    double delta = 0.0;
    double beta = 1.0;
    int q0 = 0;
    double nu() const;
};

struct IntegerDensity {
    std::int64_t M = 0;
    std::vector<double> values;  // index k + M for k in [-M, M]
    std::optional<BlockProfile> profile;

    double at(std::int64_t k) const { return values[static_cast<std::size_t>(k + M)]; }
    double& at(std::int64_t k) { return values[static_cast<std::size_t>(k + M)]; }
    double mean() const;  // E_{|k| <= M}

    static IntegerDensity constant(std::int64_t M, double delta, double beta = 1.0);
    static IntegerDensity ap_indicator(std::int64_t M, std::int64_t q, std::int64_t r);
    static IntegerDensity indicator_zero(std::int64_t M);
    // Blockwise-constant density with per-block jitter of at most
    // jitter_amplitude around delta (clipped to the profile hypothesis).
    static IntegerDensity block_random(std::int64_t M, double delta, double beta, int q0,
                                       double jitter_amplitude, Rng& rng);
};

// hcheck(theta) = E_{|k| <= M} h(k) e(k theta).
std::complex<double> int_fourier(const IntegerDensity& h, double theta);

// [0,1) = major arc [-1/Q, 1/Q] + arcs around a/q for 2 <= q <= Q0 (family
// m1) + the rest (family m2), with Q = nu * M = Q0^{-1/2} M.
struct ArcDecomposition {
    int q0 = 0;
    double Q = 0.0;

    enum class Family { major, m1, m2 };
    struct Classified {
        Family family;
        int q = 0;  // denominator for m1 hits
        int a = 0;
    };

    static ArcDecomposition make(int q0, std::int64_t M);
    Classified classify(double theta) const;
};

// Largest deviation of a full block average from the declared delta, in
// units of nu^2 (the hypothesis allows O(nu^2)).
double max_block_deviation(const IntegerDensity& h);

// sum_{l in [0, K)} (h1*h2*h3)(l), exact lattice evaluation.
double windowed_triple_convolution_direct(const IntegerDensity& h1, const IntegerDensity& h2,
                                          const IntegerDensity& h3, std::int64_t K);
// Same via quadrature of hcheck1 hcheck2 hcheck3 against the window kernel
// on a uniform grid of >= 4(3M+K) nodes (exact for trigonometric
// polynomials of that degree, up to rounding).
double windowed_triple_convolution_fourier(const IntegerDensity& h1, const IntegerDensity& h2,
                                           const IntegerDensity& h3, std::int64_t K);

// K * sum_{|k2| <= B} (2M - |k2|): the closed-form main-term lattice count.
double lattice_window_count(std::int64_t M, std::int64_t B, std::int64_t K);

std::int64_t factorial_checked(int q0);  // Q0! (throws if it overflows)

struct TripconvBound {
    double value;        // beta K (2M+1)^2 * bracket, error term dropped
    double bracket;      // delta1 delta2 delta3 (1 - beta/4) - cross term
    double error_scale;  // Q0^{-1/4}, reported separately
};
// Preconditions: delta_j in (0, 1/2], beta in (Q0^{-1/4}, 1].
TripconvBound tripconv_lower_bound(double delta1, double delta2, double delta3, double beta,
                                   std::int64_t M, std::int64_t K, int q0);

// Compares the direct windowed sum against the main-expression lower bound.
// The inequality is asserted only when every measured block deviation is
// within deviation_budget * nu^2; otherwise the report downgrades to
// out-of-hypothesis.  Dual-route agreement at 1e-6 relative is always part
// of the assertion.
CheckReport verify_tripconvZ(const IntegerDensity& h1, const IntegerDensity& h2,
                             const IntegerDensity& h3, std::int64_t K, int q0, double beta,
                             double deviation_budget = 2.0, std::uint64_t seed = 0);

// Weight-rescaled roots-of-unity bound at theta = a/q: with class weights
// w_b = E h(k) 1_{k a = b (mod q)} and W = max w_b, asserts
// |hcheck(a/q)| <= (W q) S(delta_hat / (W q), q) + 1e-12.  The naive bound
// S(delta, q)(1 + c q / N), c from the measured W, is reported alongside.
CheckReport fourier_rational_check(const IntegerDensity& h, int a, int q);

struct MinorArcSurvey {
    double sup_abs = 0.0;          // sup over sampled m2 points of |hcheck|
    double excess = 0.0;           // sup_abs - sin(pi delta)/pi
    double scale_n_q1q2 = 0.0;     // N/(Q1 Q2)
    double scale_q2_n = 0.0;       // Q2/N
    double scale_1_q1 = 0.0;       // 1/Q1
    CheckReport report;
};
// Samples |hcheck| on the m2 family of the (q0, M) decomposition, reports the
// excess over sin(pi delta)/pi together with the three error-term scales, and
// asserts fourier_rational_check at sampled rationals a/q with
// Q1 <= q <= min(Q2, q_cap).
MinorArcSurvey minor_arc_sup_check(const IntegerDensity& h, int q0, double Q1, double Q2,
                                   int samples = 4096, std::uint64_t seed = 0);

// |trapezoid(|hcheck|^2, nodes) - E|h|^2| with `nodes` uniform points.
double parseval_gap(const IntegerDensity& h, std::int64_t nodes = 0);

// sum_{l=0}^{K-1} e(-l a/q) vanishes exactly iff q | K; checked in integer
// arithmetic.
bool window_kernel_cancels(std::int64_t K, int q);

}  // namespace sievetk
