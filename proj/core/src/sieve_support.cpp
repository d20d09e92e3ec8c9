#include "sievetk/sieve_support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sievetk {

namespace {

std::vector<std::uint64_t> primes_below(double z) {
    std::vector<std::uint64_t> primes;
    if (z <= 2.0) return primes;
    const auto limit = static_cast<std::uint64_t>(std::ceil(z)) - 1;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        if (static_cast<double>(p) < z) primes.push_back(p);
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return primes;
}

// Chain condition at position m (1-based, largest prime first):
// prefix * p^3 < D, checked when m has the sign's parity.
bool position_checked(int m, int sign) {
    return sign > 0 ? (m % 2 == 1) : (m % 2 == 0);
}

bool chain_step_ok(long double prefix, std::uint64_t p, double D) {
    const long double pl = static_cast<long double>(p);
    return prefix * pl * pl * pl < static_cast<long double>(D);
}

// Smallest-prime-factor sieve up to n.
std::vector<std::uint32_t> spf_sieve(std::uint64_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            for (std::uint64_t m = i; m <= n; m += i)
                if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(i);
        }
    }
    return spf;
}

}  // namespace

bool SieveCoefficientSupport::contains(std::uint64_t d) const {
    auto it = std::lower_bound(members.begin(), members.end(), d,
                               [](const SieveSupportEntry& e, std::uint64_t v) { return e.d < v; });
    return it != members.end() && it->d == d;
}

int SieveCoefficientSupport::lambda(std::uint64_t d) const {
    auto it = std::lower_bound(members.begin(), members.end(), d,
                               [](const SieveSupportEntry& e, std::uint64_t v) { return e.d < v; });
    return (it != members.end() && it->d == d) ? it->mu : 0;
}

SieveCoefficientSupport coefficient_support(double D, double z, int sign, std::size_t cap) {
    if (!(D > 1.0)) throw std::invalid_argument("coefficient_support: D must exceed 1");
    if (!(z >= 2.0)) throw std::invalid_argument("coefficient_support: z must be >= 2");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("coefficient_support: sign must be +1 or -1");
    const std::vector<std::uint64_t> primes = primes_below(z);

    SieveCoefficientSupport out;
    out.D = D;
    out.z = z;
    out.sign = sign;
    out.members.push_back({1, +1});

    // DFS over decreasing primes; idx points one past the largest prime still
    // available for extension.
    struct Frame {
        std::uint64_t d;
        long double prod;
        std::size_t idx;
        int depth;
    };
    std::vector<Frame> stack;
    stack.push_back({1, 1.0L, primes.size(), 0});
    while (!stack.empty()) {
        const Frame fr = stack.back();
        stack.pop_back();
        for (std::size_t j = fr.idx; j-- > 0;) {
            const std::uint64_t p = primes[j];
            const int m = fr.depth + 1;
            if (position_checked(m, sign) && !chain_step_ok(fr.prod, p, D)) continue;
            const std::uint64_t d = fr.d * p;
            if (out.members.size() >= cap)
                throw std::length_error("coefficient_support: member cap exceeded");
            out.members.push_back({d, (m % 2 == 0) ? +1 : -1});
            stack.push_back({d, fr.prod * static_cast<long double>(p), j, m});
        }
    }
    std::sort(out.members.begin(), out.members.end(),
              [](const SieveSupportEntry& a, const SieveSupportEntry& b) { return a.d < b.d; });
    return out;
}

bool support_predicate(std::uint64_t d, double D, double z, int sign) {
    if (d == 1) return true;
    // Factor d; it must be squarefree with all prime factors below z.
    std::vector<std::uint64_t> factors;
    std::uint64_t rem = d;
    for (std::uint64_t p = 2; p * p <= rem; ++p) {
        if (rem % p == 0) {
            factors.push_back(p);
            rem /= p;
            if (rem % p == 0) return false;
        }
    }
    if (rem > 1) factors.push_back(rem);
    std::sort(factors.rbegin(), factors.rend());  // p_1 > p_2 > ...
    if (static_cast<double>(factors.front()) >= z) return false;
    long double prefix = 1.0L;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const int m = static_cast<int>(i) + 1;
        if (position_checked(m, sign) && !chain_step_ok(prefix, factors[i], D)) return false;
        prefix *= static_cast<long double>(factors[i]);
    }
    return true;
}

SandwichTriple pointwise_sieve_inequality(std::uint64_t n,
                                          const SieveCoefficientSupport& plus,
                                          const SieveCoefficientSupport& minus,
                                          double z) {
    if (n < 1) throw std::invalid_argument("pointwise_sieve_inequality: n must be >= 1");
    long lower = 0, upper = 0;
    for (const auto& e : minus.members)
        if (e.d <= n && n % e.d == 0) lower += e.mu;
    for (const auto& e : plus.members)
        if (e.d <= n && n % e.d == 0) upper += e.mu;
    // (n, P(z)) = 1 iff no integer in [2, z) divides n (the smallest divisor
    // of n in that range would be prime).
    bool coprime = true;
    for (std::uint64_t k = 2; static_cast<double>(k) < z && k <= n; ++k) {
        if (n % k == 0) {
            coprime = false;
            break;
        }
    }
    return {static_cast<double>(lower), coprime ? 1.0 : 0.0, static_cast<double>(upper)};
}

SandwichScan sandwich_scan(std::uint64_t n_max, const SieveCoefficientSupport& plus,
                           const SieveCoefficientSupport& minus, double z) {
    std::vector<std::int32_t> lower(n_max + 1, 0), upper(n_max + 1, 0);
    for (const auto& e : minus.members)
        for (std::uint64_t m = e.d; m <= n_max; m += e.d) lower[m] += e.mu;
    for (const auto& e : plus.members)
        for (std::uint64_t m = e.d; m <= n_max; m += e.d) upper[m] += e.mu;
    // Mark n with a prime factor below z.
    std::vector<bool> has_small(n_max + 1, false);
    for (std::uint64_t p = 2; static_cast<double>(p) < z && p <= n_max; ++p) {
        bool is_prime = true;
        for (std::uint64_t q = 2; q * q <= p; ++q)
            if (p % q == 0) { is_prime = false; break; }
        if (!is_prime) continue;
        for (std::uint64_t m = p; m <= n_max; m += p) has_small[m] = true;
    }
    SandwichScan scan;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const std::int32_t ind = has_small[n] ? 0 : 1;
        ++scan.checked;
        if (!(lower[n] <= ind && ind <= upper[n])) {
            ++scan.violations;
            if (scan.first_violation == 0) scan.first_violation = n;
        }
    }
    return scan;
}

WeightedSequence WeightedSequence::ones(std::uint64_t n) {
    WeightedSequence s;
    s.x_max = n;
    s.weights.assign(n + 1, 1.0);
    s.weights[0] = 0.0;
    return s;
}

WeightedSequence WeightedSequence::ap_indicator(std::uint64_t n, std::uint64_t q,
                                                std::uint64_t a) {
    WeightedSequence s;
    s.x_max = n;
    s.weights.assign(n + 1, 0.0);
    for (std::uint64_t m = 1; m <= n; ++m)
        if (m % q == a % q) s.weights[m] = 1.0;
    return s;
}

namespace {

// Sum of a_{d n} over n with every prime factor of n at least w.
double sifted_slice(const WeightedSequence& seq, std::uint64_t d, double w,
                    const std::vector<std::uint32_t>& spf) {
    double total = 0.0;
    const std::uint64_t kmax = seq.x_max / d;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        if (k > 1 && static_cast<double>(spf[k]) < w) continue;
        total += seq.weights[d * k];
    }
    return total;
}

}  // namespace

double sifted_sum(const WeightedSequence& seq, double z) {
    const auto spf = spf_sieve(seq.x_max);
    return sifted_slice(seq, 1, z, spf);
}

double sifted_sum_subsequence(const WeightedSequence& seq, std::uint64_t d, double w) {
    if (d == 0 || d > seq.x_max) return 0.0;
    const auto spf = spf_sieve(seq.x_max / d);
    return sifted_slice(seq, d, w, spf);
}

double sequence_slice_sum(const WeightedSequence& seq, std::uint64_t d) {
    double total = 0.0;
    for (std::uint64_t m = d; m <= seq.x_max; m += d) total += seq.weights[m];
    return total;
}

namespace {

struct SrAccumulator {
    const WeightedSequence& seq;
    const std::vector<std::uint64_t>& primes;
    const std::vector<std::uint32_t>& spf;
    double D;
    int r_target;
    double total = 0.0;

    // depth-first over chains p_1 > p_2 > ...; prefix = p_1...p_depth.
    void extend(std::uint64_t prefix, std::size_t idx_limit, int depth) {
        for (std::size_t j = idx_limit; j-- > 0;) {
            const std::uint64_t p = primes[j];
            const int m = depth + 1;
            if (prefix > seq.x_max / p) continue;  // empty subsequence, and deeper chains only shrink
            const std::uint64_t d = prefix * p;
            const long double cut =
                static_cast<long double>(d) * static_cast<long double>(p) * static_cast<long double>(p);
            if (m == r_target) {
                if (cut >= static_cast<long double>(D)) {
                    double inner = 0.0;
                    const std::uint64_t kmax = seq.x_max / d;
                    for (std::uint64_t k = 1; k <= kmax; ++k) {
                        if (k > 1 && spf[k] < p) continue;
                        inner += seq.weights[d * k];
                    }
                    total += inner;
                }
            } else {
                // Positions m < r with m = r (mod 2) must satisfy the chain bound.
                if ((m % 2 == r_target % 2) && !(cut < static_cast<long double>(D))) continue;
                extend(d, j, m);
            }
        }
    }
};

}  // namespace

double s_r_term(const WeightedSequence& seq, double D, double w, int r) {
    if (r < 1) throw std::invalid_argument("s_r_term: r must be >= 1");
    if (!(D >= 2.0 && w >= 2.0)) throw std::invalid_argument("s_r_term: D, w must be >= 2");
    const auto primes = primes_below(w);
    if (static_cast<std::size_t>(r) > primes.size()) return 0.0;
    const auto spf = spf_sieve(seq.x_max);
    SrAccumulator acc{seq, primes, spf, D, r};
    acc.extend(1, primes.size(), 0);
    return acc.total;
}

DecompositionSides buchstab_decomposition(const WeightedSequence& seq, double D, double z) {
    DecompositionSides sides{};
    sides.sifted = sifted_sum(seq, z);
    const SieveCoefficientSupport minus = coefficient_support(D, z, -1);
    double lam = 0.0;
    for (const auto& e : minus.members) {
        if (e.d > seq.x_max) continue;
        lam += static_cast<double>(e.mu) * sequence_slice_sum(seq, e.d);
    }
    sides.lambda_side = lam;
    double sr = 0.0;
    const std::size_t max_chain = primes_below(z).size();
    for (int r = 2; static_cast<std::size_t>(r) <= max_chain; r += 2)
        sr += s_r_term(seq, D, z, r);
    sides.sr_side = sr;
    return sides;
}

CheckReport sieve_weight_margin(const SieveCoefficientSupport& support,
                                const SieveFunctionTable& limit_fn,
                                double band_constant) {
    double weighted = 0.0;
    for (const auto& e : support.members)
        weighted += static_cast<double>(e.mu) / static_cast<double>(e.d);
    double v = 1.0;
    for (std::uint64_t p : primes_below(support.z)) v *= 1.0 - 1.0 / static_cast<double>(p);
    const double s = std::log(support.D) / std::log(support.z);
    const double target = limit_fn.eval(s) * v;
    const double band = band_constant * std::pow(std::log(support.D), -1.0 / 6.0);
    const double deviation = std::abs(weighted - target) / v;
    json inputs{{"D", support.D}, {"z", support.z}, {"sign", support.sign},
                {"s", s}, {"band_constant", band_constant}};
    json values{{"weighted_sum", weighted}, {"target", target},
                {"relative_deviation", deviation}};
    json bounds{{"band", band}};
    return CheckReport::informational("sieve.weight-band", "linear-sieve-limit-functions",
                                      inputs, values, bounds, band - deviation);
}

}  // namespace sievetk
