#pragma once

#include <cstdint>
#include <vector>

#include "sievetk/report.hpp"
#include "sievetk/sieve_functions.hpp"

namespace sievetk {

// Upper/lower linear sieve coefficient support of level D and sifting
// parameter z: squarefree d = p_1...p_r with p_r < ... < p_1 < z and
// p_1...p_{m-1} p_m^3 < D at every position m <= r with m odd (sign +1)
// resp. m even (sign -1).  d = 1 always belongs, with mu(1) = +1.
struct SieveSupportEntry {
    std::uint64_t d;
    int mu;
};

struct SieveCoefficientSupport {
    double D = 0.0;
    double z = 0.0;
    int sign = +1;  // +1 or -1
    std::vector<SieveSupportEntry> members;  // sorted by d

    bool contains(std::uint64_t d) const;
    int lambda(std::uint64_t d) const;  // mu(d) if member, else 0
};

// Exact depth-first enumeration over decreasing primes.  Throws
// std::length_error once the member count would exceed `cap`.
SieveCoefficientSupport coefficient_support(double D, double z, int sign,
                                            std::size_t cap = 10'000'000);

// Direct re-evaluation of the defining chain condition for one candidate d
// (the independent predicate used to cross-check the enumeration).
bool support_predicate(std::uint64_t d, double D, double z, int sign);

struct SandwichTriple {
    double lower;      // sum over d | n of lambda_d^-
    double indicator;  // 1 if (n, P(z)) = 1
    double upper;      // sum over d | n of lambda_d^+
};

SandwichTriple pointwise_sieve_inequality(std::uint64_t n,
                                          const SieveCoefficientSupport& plus,
                                          const SieveCoefficientSupport& minus,
                                          double z);

struct SandwichScan {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t first_violation = 0;  // 0 when none
};

// Exhaustive check of the sandwich for every n <= n_max (divisor-aggregation
// sweep, equivalent to the pointwise form).
SandwichScan sandwich_scan(std::uint64_t n_max, const SieveCoefficientSupport& plus,
                           const SieveCoefficientSupport& minus, double z);

struct WeightedSequence {
    std::uint64_t x_max = 0;
    std::vector<double> weights;  // weights[n] = a_n, index 0 unused

    static WeightedSequence ones(std::uint64_t n);
    static WeightedSequence ap_indicator(std::uint64_t n, std::uint64_t q, std::uint64_t a);
};

// S(A, z) = sum over n with (n, P(z)) = 1 of a_n.
double sifted_sum(const WeightedSequence& seq, double z);

// S(A_d, w) = sum over n with (n, P(w)) = 1 of a_{dn}.
double sifted_sum_subsequence(const WeightedSequence& seq, std::uint64_t d, double w);

// |A_d| = sum over n of a_{dn}.
double sequence_slice_sum(const WeightedSequence& seq, std::uint64_t d);

// S_r(B, D, w): sum over prime chains p_r < ... < p_1 < w with
// p_1...p_m p_m^2 < D at positions m < r, m = r (mod 2), and
// p_1...p_r p_r^2 >= D, of S(B_{p_1...p_r}, p_r).
double s_r_term(const WeightedSequence& seq, double D, double w, int r);

// Both sides of the exact decomposition
//   S(A, z) = sum_{d | P(z)} lambda_d^- |A_d| + sum_{r even} S_r(A, D, z).
struct DecompositionSides {
    double sifted;       // S(A, z)
    double lambda_side;  // sum lambda_d^- |A_d|
    double sr_side;      // sum over even r of S_r
    double rhs() const { return lambda_side + sr_side; }
};
DecompositionSides buchstab_decomposition(const WeightedSequence& seq, double D, double z);

// Lemma-style weighted coefficient sums with h == 1: compares
// sum_{d in D^+-} mu(d)/d against (F1 resp. f1)(s) * prod_{p<z} (1 - 1/p),
// s = log D / log z.  The implied constant in the (log D)^{-1/6} defect is
// unknown, so the result is informational: the margin reports the distance
// to the edge of the band band_constant * (log D)^{-1/6}.
CheckReport sieve_weight_margin(const SieveCoefficientSupport& support,
                                const SieveFunctionTable& limit_fn,
                                double band_constant);

}  // namespace sievetk
