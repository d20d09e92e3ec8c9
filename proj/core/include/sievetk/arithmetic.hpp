#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sievetk/report.hpp"

namespace sievetk {

// Segmented sieve of Eratosthenes over [lo, hi], odd numbers only.
class PrimeTable {
public:
    static PrimeTable build(std::uint64_t lo, std::uint64_t hi,
                            std::uint64_t segment = 1ull << 20,
                            std::uint64_t capacity = 1'000'000'000ull);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    bool is_prime(std::uint64_t n) const;
    std::uint64_t count(std::uint64_t a, std::uint64_t b) const;  // primes in [a, b]
    void for_each_prime(std::uint64_t a, std::uint64_t b,
                        const std::function<void(std::uint64_t)>& fn) const;

    // Binary cache: magic, version, range, bitset.
    void save(const std::string& path) const;
    static PrimeTable load(const std::string& path);

private:
    std::uint64_t lo_ = 0, hi_ = 0;
    std::vector<std::uint64_t> bits_;  // bit i <-> odd number lo_odd + 2i
    std::uint64_t lo_odd_ = 1;
    bool two_in_range_ = false;

    bool bit(std::uint64_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1; }
};

// Count of primes p <= x with p = a (mod q); requires gcd(a, q) = 1.
std::uint64_t primes_in_ap(const PrimeTable& table, std::uint64_t q, std::uint64_t a,
                           std::uint64_t x);

// Sum of 1/p over y1 < p <= y2 restricted by `keep`.
long double prime_recip_sum(const PrimeTable& table, std::uint64_t y1, std::uint64_t y2,
                            const std::function<bool(std::uint64_t)>& keep = {});

// Kronecker symbol (D | n), full domain (n may be 0 or negative).
int kronecker(std::int64_t D, std::int64_t n);
bool is_fundamental_discriminant(std::int64_t D);
// Fundamental D (either sign, including D = 1) with |D| dividing q; these
// induce exactly the real characters mod q.
std::vector<std::int64_t> fundamental_discriminants_dividing(std::uint64_t q);

// Real primitive character psi(n) = kronecker(D, n) of modulus q = |D|.
struct QuadraticCharacter {
    std::int64_t disc = 1;
    std::uint64_t modulus() const { return static_cast<std::uint64_t>(disc < 0 ? -disc : disc); }
    bool principal() const { return disc == 1; }
    int operator()(std::int64_t n) const { return kronecker(disc, n); }
};

struct L1Result {
    double value = 0.0;
    double tail_bound = 0.0;   // q / terms from summation by parts
    double lower_bound = 0.0;  // c * q^{-1/2}
    double margin = 0.0;
};
// Partial sum of L(1, psi) with a tail bound; asserts value >= c q^{-1/2}.
L1Result L1_psi(const QuadraticCharacter& psi, std::uint64_t terms, double c = 0.05);
CheckReport L1_psi_report(const QuadraticCharacter& psi, std::uint64_t terms, double c = 0.05);

// Exact rational arithmetic for the density function h of the 1*psi sequence.
struct Frac {
    long long num = 0;
    long long den = 1;
    static Frac of(long long n, long long d);
    Frac operator+(const Frac& o) const;
    Frac operator*(const Frac& o) const;
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// (1*psi)(n) = sum_{k | n} psi(k).
long long one_ast_psi(const QuadraticCharacter& psi, std::uint64_t n);

// h from the prime-power rule h(p) = (1+psi(p))/p - psi(p)/p^2 extended
// multiplicatively via h(p^k) = (1*psi)(p^k)/p^k - psi(p)(1*psi)(p^{k-1})/p^{k+1}.
Frac h_density_prime_formula(const QuadraticCharacter& psi, std::uint64_t d);
// h(d) = sum_{r | d} mu(r) psi(r) (1*psi)(d/r) / (d r).
Frac h_density_divisor_formula(const QuadraticCharacter& psi, std::uint64_t d);

// (1*psi)(n) tabulated for every n <= x (divisor-loop sieve), reusable
// across AP-sum queries.
struct OneAstPsiSieve {
    std::uint64_t x = 0;
    std::vector<std::int32_t> values;
    static OneAstPsiSieve build(const QuadraticCharacter& psi, std::uint64_t x);
};

struct ApDivisorSum {
    double sum = 0.0;        // exact sum of (1*psi)(n), n <= x, d | n, n = a (mod q)
    double main_term = 0.0;  // 1_{(d,q)=1} (1+psi(a)) h(d) L(1,psi) x / q
    double residual = 0.0;   // sum - main_term
    double residual_scaled = 0.0;  // residual / (x^{1/2} / d^{1/2})
};
ApDivisorSum one_ast_psi_ap_sum(const OneAstPsiSieve& sieve, const QuadraticCharacter& psi,
                                std::uint64_t a, std::uint64_t d, std::uint64_t x,
                                double L1_value);

// Both sides of (f*g)(mn) = sum_{r | (m,n)} mu(r) f(r) g(r) (f*g)(m/r) (f*g)(n/r)
// for completely multiplicative integer-valued f, g; exact int64 arithmetic.
struct DivisorIdentitySides {
    long long lhs = 0;
    long long rhs = 0;
};
DivisorIdentitySides dirichlet_decomposition_sides(
    const std::function<long long(std::uint64_t)>& f,
    const std::function<long long(std::uint64_t)>& g, std::uint64_t m, std::uint64_t n);
CheckReport dirichlet_decomposition_check(const std::function<long long(std::uint64_t)>& f,
                                          const std::function<long long(std::uint64_t)>& g,
                                          std::uint64_t m, std::uint64_t n);

// Empirical measurements of the sieve hypotheses on real primes:
// the Brun-Titchmarsh ratio, the prime mass on (x^{1/6}, x^{1/3}] vs log 2,
// the index-2 coset masses for every real character mod q (with the exact
// partition identity asserted), and the level-of-distribution residues of
// the AP indicator sequence.
struct HypothesisSurvey {
    double measured_kappa = 0.0;    // max_g phi(q) S_g / S_total
    double bt_kappa = 0.0;          // 2 / (1 - log q / log x)
    double mass = 0.0;              // sum of 1/p over the window, p coprime to q
    double mass_gap = 0.0;          // |mass - log 2|
    std::vector<std::pair<std::int64_t, double>> coset_eta;  // (disc, measured eta)
    double partition_defect = 0.0;  // worst |mass_H + mass_aH - mass|
    double lod_residue = 0.0;       // sum_d mu^2(d) |error(d)|
    double lod_residue_scaled = 0.0;  // residue / (x^{1-eps}/q)
    CheckReport report;
};
HypothesisSurvey empirical_hypotheses(std::uint64_t q, std::uint64_t a, std::uint64_t x,
                                      const PrimeTable& table, double eps = 0.05);

}  // namespace sievetk
